import math
from itertools import product

import numpy as np
import pytest

from bin_design.counting import CountTable, build_count_table
from bin_design.dp import FastSolver, NaiveSolver, extract_solution, refine_strict, solve_fast, solve_naive
from bin_design.utils import BoxDims, Bounds, validate_chain
from bin_design.utils.errors import Infeasible
from bin_design_tests.helpers import random_count_table

SOLVERS = [solve_naive, solve_fast, lambda table, bounds: solve_fast(table, bounds, brute_force_limit=0)]


@pytest.fixture
def toy_table(toy_marginal_sets, toy_bounds):
    return build_count_table(toy_marginal_sets, toy_bounds)


@pytest.mark.parametrize('solve', SOLVERS)
def test_single_type(solve, toy_table):
    chain = solve(toy_table, Bounds(3, 3, 3, 1))
    assert chain.types == (BoxDims(2, 2, 2),)
    assert chain.total_cost == 48
    assert chain.per_type_counts == (2,)


@pytest.mark.parametrize('solve', SOLVERS)
def test_two_types(solve, toy_table, toy_bounds):
    chain = solve(toy_table, toy_bounds)
    assert chain.types == (BoxDims(1, 1, 1), BoxDims(2, 2, 2))
    assert chain.total_cost == 30
    assert chain.per_type_counts == (1, 1)


@pytest.mark.parametrize('solve', SOLVERS)
def test_extra_type_repeats(solve, toy_table):
    chain = solve(toy_table, Bounds(3, 3, 3, 3))
    assert chain.total_cost == 30
    assert sum(chain.collapsed) == 1
    assert set(chain.types) == {BoxDims(1, 1, 1), BoxDims(2, 2, 2)}
    assert validate_chain(chain, Bounds(3, 3, 3, 3)).ok


@pytest.mark.parametrize('solve', SOLVERS)
def test_no_orders(solve):
    table = build_count_table([], Bounds(3, 3, 3))
    chain = solve(table, Bounds(3, 3, 3, 1))
    assert chain.types == (BoxDims(1, 1, 1),)
    assert chain.total_cost == 0


@pytest.mark.parametrize('solve', SOLVERS)
def test_single_cell_grid(solve):
    table = CountTable.from_array(np.pad(np.full((1, 1, 1), 7), ((1, 0), (1, 0), (1, 0))))
    chain = solve(table, Bounds(1, 1, 1, 1))
    assert chain.types == (BoxDims(1, 1, 1),)
    assert chain.total_cost == 6 * 7


@pytest.mark.parametrize('solve', SOLVERS)
def test_infeasible_when_top_misses_orders(solve):
    table = CountTable.from_array(np.zeros((3, 3, 3)), n_orders=1)
    with pytest.raises(Infeasible):
        solve(table, Bounds(2, 2, 2, 1))


def test_fast_matches_naive(rng):
    for _ in range(60):
        extents = tuple(int(v) for v in rng.integers(1, 7, size=3))
        table = random_count_table(rng, extents, int(rng.integers(0, 25)))
        bounds = Bounds(*extents, min(int(rng.integers(1, 6)), sum(extents) - 2))
        naive = solve_naive(table, bounds)
        for limit in (0, 64, 4096):
            fast = solve_fast(table, bounds, brute_force_limit=limit)
            assert fast.total_cost == naive.total_cost
            assert validate_chain(fast, bounds).ok
            assert fast.n_orders == table.n_orders


def test_fast_matches_naive_up_to_sixteen_per_side(rng):
    for _ in range(200):
        extents = tuple(int(v) for v in rng.integers(1, 17, size=3))
        table = random_count_table(rng, extents, int(rng.integers(0, 40)))
        bounds = Bounds(*extents, min(int(rng.integers(1, 6)), sum(extents) - 2))
        assert solve_fast(table, bounds).total_cost == solve_naive(table, bounds).total_cost, extents


def _cheapest_chain_by_enumeration(table, k):
    counts = table.counts.astype(int)
    costs = table.cost_grid().astype(int)
    cells = list(product(*(range(1, n) for n in counts.shape)))
    best = [math.inf]

    def walk(previous, covered, depth, total):
        if depth == k:
            if covered == table.n_orders:
                best[0] = min(best[0], total)
            return
        for cell in cells:
            if all(a >= b for a, b in zip(cell, previous)):
                walk(cell, counts[cell], depth + 1, total + costs[cell] * (counts[cell] - covered))

    walk((0, 0, 0), 0, 0, 0)
    return best[0]


@pytest.mark.parametrize('limit', [0, 64, 4096])
def test_fast_matches_chain_enumeration(rng, limit):
    for _ in range(3):
        table = random_count_table(rng, (4, 4, 4), int(rng.integers(5, 20)))
        bounds = Bounds(4, 4, 4, 3)
        expected = _cheapest_chain_by_enumeration(table, 3)
        assert solve_naive(table, bounds).total_cost == expected
        assert solve_fast(table, bounds, brute_force_limit=limit).total_cost == expected


def test_merge_keeps_minimum_of_repeated_cells(toy_table, toy_bounds):
    solver = FastSolver(toy_table, toy_bounds)
    values = np.full(toy_table.counts.size, 1000, dtype=np.int64)
    predecessors = np.full(toy_table.counts.size, -1, dtype=np.int64)
    cell = int(np.ravel_multi_index((2, 2, 2), toy_table.shape))
    solver._merge(values, predecessors, np.array([cell, cell, cell]), np.array([40, 30, 35]), np.array([1, 2, 3]))
    assert values[cell] == 30
    assert predecessors[cell] == 2


def test_stage_tables_agree(rng):
    table = random_count_table(rng, (5, 4, 4), 15)
    bounds = Bounds(5, 4, 4, 3)
    naive, fast = NaiveSolver(table, bounds), FastSolver(table, bounds, brute_force_limit=0)
    naive.solve()
    fast.solve()
    for a, b in zip(naive.stages, fast.stages):
        np.testing.assert_array_equal(a.values, b.values)
    assert fast.stats.envelope_blocks > 0
    assert fast.stats.stages == 3 and len(fast.stats.stage_seconds) == 3


def test_cost_does_not_increase_with_k(rng):
    for _ in range(10):
        table = random_count_table(rng, (5, 5, 5), 30)
        costs = [solve_fast(table, Bounds(5, 5, 5, k)).total_cost for k in range(1, 7)]
        assert all(a >= b for a, b in zip(costs, costs[1:]))


def test_extract_solution_recovers_chain(toy_table, toy_bounds):
    solver = NaiveSolver(toy_table, toy_bounds)
    solver.solve()
    chain = extract_solution(solver.stages, toy_table, solver._terminal())
    assert chain.types == (BoxDims(1, 1, 1), BoxDims(2, 2, 2))
    assert chain.recomputed_cost() == chain.total_cost == 30


def test_refine_strict_replaces_repeats(toy_table):
    bounds = Bounds(3, 3, 3, 3)
    chain = solve_fast(toy_table, bounds)
    refined = refine_strict(chain, toy_table)
    assert refined.total_cost <= chain.total_cost
    assert validate_chain(refined, bounds, strict=True).ok
    assert refined.n_orders == 2


def test_refine_strict_never_increases_cost(rng):
    for _ in range(20):
        table = random_count_table(rng, (4, 4, 4), int(rng.integers(1, 10)))
        bounds = Bounds(4, 4, 4, 5)
        chain = solve_fast(table, bounds)
        refined = refine_strict(chain, table)
        assert refined.total_cost <= chain.total_cost
        assert refined.recomputed_cost() == refined.total_cost
        assert validate_chain(refined, bounds).ok
