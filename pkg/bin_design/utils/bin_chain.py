from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np

from .box_dims import BoxDims, surface_cost

# Above any achievable total cost, with headroom so that adding one more cost never overflows int64.
INFEASIBLE_COST = int(np.iinfo(np.int64).max // 4)


@dataclass(frozen=True)
class BinChain:
    """
    Solution of the bin design problem: K nested bin types.

    Consecutive duplicates are allowed (relaxed chain); they cost nothing and are reported as collapsed.
    """
    types: Tuple[BoxDims, ...]
    total_cost: int
    per_type_counts: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'types', tuple(self.types))
        object.__setattr__(self, 'per_type_counts', tuple(int(c) for c in self.per_type_counts))
        object.__setattr__(self, 'total_cost', int(self.total_cost))
        assert len(self.types) == len(self.per_type_counts), 'One count is needed per bin type.'

    @property
    def k(self):
        return len(self.types)

    @property
    def n_orders(self):
        return sum(self.per_type_counts)

    @property
    def collapsed(self):
        """Flag per type: True if it repeats the previous type."""
        return tuple(i > 0 and self.types[i] == self.types[i - 1] for i in range(self.k))

    @property
    def distinct_types(self):
        return tuple(t for t, dup in zip(self.types, self.collapsed) if not dup)

    @property
    def cost_m2(self):
        return self.total_cost / 10000

    def percentages(self):
        """Share of orders packed in each type, in percent."""
        n = self.n_orders
        return tuple(100.0 * c / n if n else 0.0 for c in self.per_type_counts)

    def recomputed_cost(self):
        return sum(surface_cost(t) * c for t, c in zip(self.types, self.per_type_counts))


@dataclass(frozen=True)
class ChainViolation:
    index: int
    constraint: str
    equation: Optional[int]
    message: str


@dataclass(frozen=True)
class ChainValidation:
    """Outcome of validate_chain: ok, or the first violated constraint."""
    violation: Optional[ChainViolation] = None
    strict: bool = False
    checked: int = field(default=0)

    @property
    def ok(self):
        return self.violation is None

    @property
    def index(self):
        return None if self.violation is None else self.violation.index

    def __bool__(self):
        return self.ok


def validate_chain(chain, bounds, strict=False):
    """
    Check a chain against the model constraints.

    Monotonicity in every dimension, bounds and positive integrality are always checked. The strictly
    increasing dimension sum is only checked in strict mode, since relaxed chains may repeat a type.

    Args:
        chain (BinChain or sequence of BoxDims): chain to check
        bounds (Bounds): grid bounds; K is also checked against the chain length
        strict (bool): also require a strictly increasing dimension sum

    Returns:
        ChainValidation: ok, or the first violation with its 1-based type index
    """
    types = chain.types if isinstance(chain, BinChain) else tuple(chain)

    def fail(index, constraint, equation, message):
        return ChainValidation(ChainViolation(index, constraint, equation, message), strict, index)

    if len(types) != bounds.K:
        return fail(0, 'count', None, f'Chain has {len(types)} types, expected K={bounds.K}.')
    if isinstance(chain, BinChain) and any(c < 0 for c in chain.per_type_counts):
        return fail(0, 'counts', None, 'Per-type order counts must be nonnegative.')

    limits = (('length', 'l', bounds.L, 6, 2), ('width', 'w', bounds.W, 7, 3), ('height', 'h', bounds.H, 8, 4))
    previous = None
    for k, box in enumerate(types, start=1):
        values = tuple(box)
        if any(isinstance(v, bool) or int(v) != v or v < 1 for v in values):
            return fail(k, 'integrality', 9, f'Type {k} {values} must have positive integer dimensions.')
        for name, attr, limit, eq_bound, _ in limits:
            if getattr(box, attr) > limit:
                return fail(k, f'{name} bound', eq_bound, f'Type {k} {name} {getattr(box, attr)} exceeds {limit}.')
        if previous is not None:
            for name, attr, _, _, eq_monotone in limits:
                if getattr(box, attr) < getattr(previous, attr):
                    return fail(k, f'{name} monotone', eq_monotone,
                                f'Type {k} {name} {getattr(box, attr)} is below type {k - 1} '
                                f'{name} {getattr(previous, attr)}.')
            if strict and sum(values) <= sum(tuple(previous)):
                return fail(k, 'size sum', 5, f'Type {k} does not strictly increase the dimension sum.')
        previous = box
    return ChainValidation(None, strict, len(types))
