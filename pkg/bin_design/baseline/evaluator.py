from typing import NamedTuple, Tuple

import numpy as np

from ..search.marginal_search import MarginalSet
from ..utils.bin_chain import INFEASIBLE_COST, BinChain
from ..utils.box_dims import BoxDims

# Padding for orders with fewer marginal types than the widest set; never fits any bin.
_NEVER_FITS = np.iinfo(np.int32).max


class ChainEvaluation(NamedTuple):
    cost: int
    counts: Tuple[int, ...]
    feasible: bool


class ChainEvaluator:
    """
    First-fit cost of candidate chains against a fixed list of marginal sets.

    Marginal types are stored once as an (N, M, 3) array, so each evaluation is a handful of vectorised
    comparisons instead of a loop over orders.
    """

    def __init__(self, marginal_sets):
        width = max((len(ms.types) for ms in marginal_sets), default=1)
        self.n_orders = len(marginal_sets)
        self.types = np.full((self.n_orders, width, 3), _NEVER_FITS, dtype=np.int64)
        for i, ms in enumerate(marginal_sets):
            types = ms.types if isinstance(ms, MarginalSet) else tuple(ms)
            self.types[i, :len(types)] = [t.as_tuple() for t in types]

    def fit_matrix(self, chain):
        """Boolean (N, K): order i packs into chain type k."""
        chain = _as_array(chain)
        fits_type = (self.types[:, :, None, :] <= chain[None, None, :, :]).all(axis=3)
        return fits_type.any(axis=1)

    def evaluate(self, chain):
        """
        Charge every order the surface cost of the first chain type that packs it.

        Args:
            chain (array-like, BinChain or sequence of BoxDims): K types in ascending order

        Returns:
            ChainEvaluation: total cost (INFEASIBLE_COST if some order fits no type) and per-type counts
        """
        chain = _as_array(chain)
        fit = self.fit_matrix(chain)
        feasible = bool(fit.any(axis=1).all()) if self.n_orders else True
        first = fit.argmax(axis=1)[fit.any(axis=1)]
        counts = np.bincount(first, minlength=len(chain))
        if not feasible:
            return ChainEvaluation(INFEASIBLE_COST, tuple(int(c) for c in counts), False)
        l, w, h = chain[:, 0], chain[:, 1], chain[:, 2]
        costs = 2 * (l * w + w * h + l * h)
        return ChainEvaluation(int((costs * counts).sum()), tuple(int(c) for c in counts), True)

    def to_chain(self, chain):
        """BinChain with first-fit counts; the chain must be feasible."""
        chain = _as_array(chain)
        evaluation = self.evaluate(chain)
        assert evaluation.feasible, 'Only feasible chains have a BinChain form.'
        types = tuple(BoxDims(*(int(v) for v in row)) for row in chain)
        return BinChain(types, evaluation.cost, evaluation.counts)


def _as_array(chain):
    if isinstance(chain, BinChain):
        chain = chain.types
    if len(chain) and isinstance(chain[0], BoxDims):
        chain = [t.as_tuple() for t in chain]
    return np.asarray(chain, dtype=np.int64).reshape(-1, 3)


def evaluate_chain(marginal_sets, chain):
    """Total first-fit cost of chain, or INFEASIBLE_COST when some order fits no type."""
    return ChainEvaluator(marginal_sets).evaluate(chain).cost
