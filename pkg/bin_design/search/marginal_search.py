import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

from ..utils.box_dims import BoxDims, surface_cost
from ..utils.errors import BudgetExhaustedBeforeFirstLeaf, InfeasibleOrder
from .placement import CornerCountMap, candidate_placements, is_admissible, item_orientations

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchBudget:
    """
    Pruning slack and node budget of the marginal tree search.

    A branch is cut when its enclosing bin costs more than z_factor times the best leaf found so far; the
    search stops expanding after max_search_count node visits. Both may be math.inf.
    """
    z_factor: float = 1.2
    max_search_count: float = 200000

    def __post_init__(self):
        assert self.z_factor >= 1, f'z_factor must be >= 1, got {self.z_factor}.'
        assert self.max_search_count >= 1, f'max_search_count must be positive, got {self.max_search_count}.'

    @classmethod
    def unbounded(cls):
        return cls(math.inf, math.inf)

    def doubled(self):
        return SearchBudget(self.z_factor, self.max_search_count * 2)


@dataclass(frozen=True)
class SearchStats:
    nodes: int
    leaves: int
    best_cost: float
    budget_hit: bool


@dataclass(frozen=True)
class MarginalSet:
    """Pareto-minimal bin types of one order: each packs the order, no shrunken type does."""
    order_id: str
    types: Tuple[BoxDims, ...]
    stats: Optional[SearchStats] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'types', tuple(sorted(set(self.types))))

    @property
    def cheapest(self):
        """Member of lowest surface cost, lexicographically smallest among ties."""
        return min(self.types, key=lambda t: (surface_cost(t), t.as_tuple()))

    def fits(self, bin_type):
        return fits(self, bin_type)


def pareto_filter(types):
    """
    Keep the minimal elements under componentwise dominance.

    A type is removed if some other member is componentwise <= it; the result is an antichain.

    Args:
        types (iterable of BoxDims): candidate bin types

    Returns:
        set: minimal bin types
    """
    candidates = sorted(set(types), key=lambda t: (t.size_sum, t.as_tuple()))
    kept = []
    for t in candidates:
        # a dominated-below member always has a smaller size sum, so it is already in kept
        if not any(s.l <= t.l and s.w <= t.w and s.h <= t.h for s in kept):
            kept.append(t)
    return set(kept)


def fits(marginal_set, bin_type):
    """True if some marginal type is componentwise <= bin_type."""
    types = marginal_set.types if isinstance(marginal_set, MarginalSet) else marginal_set
    return any(m.l <= bin_type.l and m.w <= bin_type.w and m.h <= bin_type.h for m in types)


def sort_items(items):
    """Descending volume; equal volumes by descending (l, w, h)."""
    return sorted(items, key=lambda b: (b.volume, b.l, b.w, b.h), reverse=True)


class _TreeSearch:
    """Depth-first search over item placements keeping every leaf enclosure within the cost slack."""

    def __init__(self, items, limit, budget):
        self.items = sort_items(items)
        self.orientations = [item_orientations(item) for item in self.items]
        self.limit = limit
        self.z_factor = budget.z_factor
        self.max_search_count = budget.max_search_count
        self.corners = CornerCountMap()
        self.placed = []
        self.best_cost = math.inf
        self.leaves = set()
        self.leaf_count = 0
        self.total_search_count = 0
        self.budget_hit = False

    def run(self):
        self._search(0, (0, 0, 0))
        return self

    def _search(self, item_index, node_bin):
        if item_index == len(self.items):
            cost = surface_cost(node_bin)
            self.best_cost = min(self.best_cost, cost)
            self.leaves.add(node_bin)
            self.leaf_count += 1
            return
        self.total_search_count += 1
        if self.total_search_count > self.max_search_count:
            self.budget_hit = True
            return

        for placement in candidate_placements(item_index, self.orientations[item_index], self.corners,
                                              self.limit):
            if not is_admissible(placement, self.placed, self.limit):
                continue
            x_end, y_end, z_end = placement.far_corner
            new_bin = (max(x_end, node_bin[0]), max(y_end, node_bin[1]), max(z_end, node_bin[2]))
            if surface_cost(new_bin) <= self.best_cost * self.z_factor:
                self.corners.add(x_end, y_end, z_end)
                self.placed.append(placement)
                self._search(item_index + 1, new_bin)
                self.placed.pop()
                self.corners.remove(x_end, y_end, z_end)
            if self.budget_hit:
                return


def marginal_search(order, bounds, budget=None):
    """
    Find the marginal bin types of one order.

    Items are placed in descending volume order; each item tries every orientation at every combination of
    corner coordinates, keeping placements that stay inside (L, W, H), do not overlap earlier items and rest
    against a wall or an item on every axis. Leaf enclosures are Pareto filtered.

    Args:
        order (Order): order to enclose
        bounds (Bounds): largest permissible bin
        budget (SearchBudget): pruning slack and node budget, default SearchBudget()

    Returns:
        MarginalSet: Pareto-minimal enclosures found
    """
    budget = SearchBudget() if budget is None else budget
    search = _TreeSearch(order.items, bounds.box, budget).run()
    stats = SearchStats(search.total_search_count, search.leaf_count, search.best_cost, search.budget_hit)
    if not search.leaves:
        if search.budget_hit:
            raise BudgetExhaustedBeforeFirstLeaf(order.id, budget.max_search_count)
        raise InfeasibleOrder(order.id)
    types = pareto_filter(BoxDims(*leaf) for leaf in search.leaves)
    logger.debug('Order %s: %d nodes, %d leaves, %d marginal types, best cost %s%s', order.id, stats.nodes,
                 stats.leaves, len(types), stats.best_cost, ' (budget hit)' if stats.budget_hit else '')
    return MarginalSet(order.id, tuple(types), stats)
