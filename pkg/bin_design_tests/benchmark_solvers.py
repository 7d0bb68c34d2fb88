"""
Script comparing the solvers on synthetic data.

For every seed a synthetic order file is generated and the DP chain is compared with the greedy local search on the
same marginal sets: cost gap and wall time. Afterwards the DP stage time is measured on random count tables of
growing size to compare how the naive and the accelerated solver scale.
"""

import math
import os
import time

import numpy as np

from bin_design.baseline import GlsParams, gls_solve
from bin_design.counting import build_count_table
from bin_design.dp import solve_fast, solve_naive
from bin_design.io import generate
from bin_design.search import search_marginal_sets
from bin_design.utils import Bounds
from bin_design_tests.helpers import random_count_table

seeds = range(20)
n_orders = 10000
bounds = Bounds(50, 40, 33, 8)
workers = os.cpu_count() or 1

gaps = []
speedups = []
for seed in seeds:
    orders = [o for o in generate(n_orders, seed=seed) if o.fits_bounds(bounds)]
    batch = search_marginal_sets(orders, bounds, workers=workers)

    start = time.perf_counter()
    chain = solve_fast(build_count_table(batch.marginal_sets, bounds, workers=workers), bounds)
    dp_seconds = time.perf_counter() - start

    result = gls_solve(batch.marginal_sets, bounds, GlsParams(seed=seed))
    gap = 100.0 * (result.cost - chain.total_cost) / chain.total_cost
    gaps.append(gap)
    speedups.append(result.seconds / dp_seconds)
    print(f'seed {seed:>2}: DP {chain.cost_m2:10.2f} m2 in {dp_seconds:7.2f}s, '
          f'GLS {result.cost / 10000:10.2f} m2 in {result.seconds:7.2f}s, gap {gap:+.2f}%')
    if result.cost < chain.total_cost:
        print('   GLS beat the DP chain!')

print(f'Gap: min {min(gaps):.2f}%, median {np.median(gaps):.2f}%, max {max(gaps):.2f}%')
print(f'GLS/DP time ratio: median {np.median(speedups):.1f}')


def stage_seconds(solve, extent, k=8, repeats=2):
    rng = np.random.default_rng(extent)
    best = math.inf
    for _ in range(repeats):
        table = random_count_table(rng, (extent,) * 3, 200)
        start = time.perf_counter()
        solve(table, Bounds(extent, extent, extent, k))
        best = min(best, time.perf_counter() - start)
    return best


def exponent(solve, small, large):
    """Growth exponent of runtime against the number of grid cells."""
    t_small, t_large = stage_seconds(solve, small), stage_seconds(solve, large)
    print(f'{solve.__name__}: {small}^3 {t_small:.2f}s, {large}^3 {t_large:.2f}s')
    return math.log(t_large / t_small) / math.log((large / small) ** 3)


naive_exponent = exponent(solve_naive, 6, 12)
fast_exponent = exponent(solve_fast, 16, 32)
print(f'Runtime exponent in grid cells: naive {naive_exponent:.2f}, fast {fast_exponent:.2f}')

start = time.perf_counter()
stage_seconds(solve_fast, 50, repeats=1)
print(f'K=8 on a 50x50x50 grid: {time.perf_counter() - start:.1f}s')
