from functools import lru_cache
from itertools import combinations_with_replacement, product

import pytest

from bin_design.baseline import brute_force_design, exhaustive_pack_oracle, oracle_marginal_set
from bin_design.counting import build_count_table
from bin_design.dp import solve_fast, solve_naive
from bin_design.search import MarginalSet, SearchBudget, fits, marginal_search
from bin_design.utils import BoxDims, Bounds, Order
from bin_design.utils.errors import InfeasibleOrder, TooLarge

SMALL_ITEMS = [BoxDims(*dims) for dims in combinations_with_replacement(range(1, 4), 3)]
GRID = Bounds(5, 5, 5)
GRID_BINS = [BoxDims(*dims) for dims in product(range(1, 6), repeat=3)]


def _unit_cubes(n):
    return Order('cubes', (BoxDims(1, 1, 1),) * n)


def test_exhaustive_pack_oracle():
    assert exhaustive_pack_oracle(_unit_cubes(2), BoxDims(2, 1, 1))
    assert not exhaustive_pack_oracle(_unit_cubes(2), BoxDims(1, 1, 1))
    order = Order('o', (BoxDims(2, 1, 1), BoxDims(1, 1, 1)))
    assert not exhaustive_pack_oracle(order, BoxDims(2, 1, 1))
    assert exhaustive_pack_oracle(order, BoxDims(2, 2, 1))
    assert exhaustive_pack_oracle(order, BoxDims(1, 3, 1))


def test_oracle_size_guards(toy_marginal_sets):
    with pytest.raises(TooLarge):
        exhaustive_pack_oracle(_unit_cubes(5), BoxDims(5, 1, 1))
    with pytest.raises(TooLarge):
        brute_force_design(toy_marginal_sets, Bounds(7, 3, 3, 1))
    with pytest.raises(InfeasibleOrder):
        oracle_marginal_set(Order('o', (BoxDims(2, 2, 2),) * 2), Bounds(2, 2, 3))


def test_oracle_marginal_set_of_two_cubes():
    assert set(oracle_marginal_set(_unit_cubes(2), GRID).types) == {BoxDims(2, 1, 1), BoxDims(1, 2, 1),
                                                                     BoxDims(1, 1, 2)}


def test_brute_force_design_toy(toy_marginal_sets, toy_bounds):
    chain, cost = brute_force_design(toy_marginal_sets, toy_bounds)
    assert cost == 30
    assert chain.types == (BoxDims(1, 1, 1), BoxDims(2, 2, 2))
    _, cost = brute_force_design(toy_marginal_sets, toy_bounds.with_k(1))
    assert cost == 48


def _search_fits(order):
    try:
        marginal_set = marginal_search(order, GRID, SearchBudget.unbounded())
    except InfeasibleOrder:
        return [False] * len(GRID_BINS)
    return [fits(marginal_set, b) for b in GRID_BINS]


@pytest.mark.parametrize('n_items', [1, 2, 3])
def test_unpruned_search_is_complete(n_items):
    for items in combinations_with_replacement(SMALL_ITEMS, n_items):
        order = Order('o', items)
        expected = [exhaustive_pack_oracle(order, b) for b in GRID_BINS]
        assert _search_fits(order) == expected, items


def test_dp_matches_brute_force_on_tiny_instances(rng):
    bounds_grid = Bounds(6, 6, 6)

    @lru_cache(maxsize=None)
    def exact_types(items):
        try:
            return oracle_marginal_set(Order('o', items), bounds_grid).types
        except InfeasibleOrder:
            return None

    for trial in range(100):
        marginal_sets = []
        for i in range(int(rng.integers(1, 13))):
            types = None
            while types is None:
                n_items = int(rng.integers(1, 4))
                items = tuple(sorted(BoxDims(*(int(v) for v in rng.integers(1, 5, size=3))) for _ in range(n_items)))
                types = exact_types(items)
            marginal_sets.append(MarginalSet(str(i), types))
        bounds = bounds_grid.with_k(int(rng.integers(1, 4)))
        table = build_count_table(marginal_sets, bounds)
        _, expected = brute_force_design(marginal_sets, bounds)
        assert solve_naive(table, bounds).total_cost == expected, trial
        assert solve_fast(table, bounds).total_cost == expected, trial
