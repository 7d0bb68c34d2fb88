class BinDesignError(Exception):
    """Base class of all errors raised by bin_design."""


class InvalidDimensions(BinDesignError, ValueError):
    """A box has a non-integer, negative or partially zero dimension."""


class InvalidBounds(BinDesignError, ValueError):
    """Grid bounds or number of bin types out of range."""


class InvalidChain(BinDesignError, ValueError):
    """A bin chain breaks monotonicity, bounds or integrality."""


class InfeasibleOrder(BinDesignError):
    """No complete placement of the order exists within bounds."""

    def __init__(self, order_id, message=None):
        self.order_id = order_id
        super().__init__(message or f'Order "{order_id}" cannot be packed within bounds.')


class BudgetExhaustedBeforeFirstLeaf(BinDesignError):
    """The tree search hit max_search_count before reaching any leaf."""

    def __init__(self, order_id, max_search_count):
        self.order_id = order_id
        self.max_search_count = max_search_count
        super().__init__(f'Search budget {max_search_count} exhausted before the first leaf '
                         f'of order "{order_id}".')


class Infeasible(BinDesignError):
    """F(L, W, H) < N: no bin within bounds packs every order."""


class InfeasibleInitial(BinDesignError):
    """The GLS starting chain leaves some order unpacked."""


class TooLarge(BinDesignError):
    """Instance exceeds the size guard of an exhaustive oracle."""


class OrderFileError(BinDesignError):
    """Malformed order file."""

    def __init__(self, message, line_number=None):
        self.line_number = line_number
        if line_number is not None:
            message = f'line {line_number}: {message}'
        super().__init__(message)


class ConfigError(BinDesignError, ValueError):
    """Run configuration out of its documented range."""


class CountTableCacheError(BinDesignError):
    """Corrupt or incompatible count table cache file."""


class PipelineError(BinDesignError):
    """Failure of one pipeline phase."""

    def __init__(self, phase, cause):
        self.phase = phase
        self.cause = cause
        super().__init__(f'[{phase}] {cause}')
