import logging
import time
from contextlib import contextmanager
from dataclasses import dataclass, replace
from pathlib import Path
from typing import List, Tuple

from ..baseline.gls import gls_solve
from ..counting.count_table import CountTable, build_count_table, marginal_coordinates
from ..dp.solver import FastSolver, NaiveSolver, refine_strict
from ..search.batch import BatchResult, format_marginal_dump, search_marginal_sets
from ..utils.bin_chain import BinChain, validate_chain
from ..utils.box_dims import surface_cost
from ..utils.errors import BinDesignError, ConfigError, PipelineError
from .orders import ingest
from .report import Report

logger = logging.getLogger(__name__)


@contextmanager
def phase(name, timings):
    """Time a pipeline phase and tag library errors raised inside it with the phase name."""
    logger.info('Phase %s started', name)
    start = time.perf_counter()
    try:
        yield
    except PipelineError:
        raise
    except BinDesignError as e:
        raise PipelineError(name, e) from e
    finally:
        timings[name] = time.perf_counter() - start
        logger.info('Phase %s took %.3fs', name, timings[name])


@dataclass
class PreparedRun:
    """Marginal sets and count table of one order file, on the (possibly coarsened) working grid."""
    bounds: object
    batch: BatchResult
    count_table: CountTable
    excluded: Tuple[str, ...]
    n_read: int
    timings: dict


def _working_bounds(config):
    return config.bounds.shrunk(config.scale) if config.scale > 1 else config.bounds


def rescale_chain(chain, scale):
    """Chain of the coarse grid expressed in centimeters again; cost is recomputed from the scaled types."""
    if scale == 1:
        return chain
    types = tuple(t.scaled(scale) for t in chain.types)
    total = sum(surface_cost(t) * c for t, c in zip(types, chain.per_type_counts))
    return BinChain(types, total, chain.per_type_counts)


def _count_table(marginal_sets, bounds, config):
    """Count table from the cache file when it matches the working grid and order count; built otherwise."""
    cache = Path(config.count_cache) if config.count_cache else None
    expected_shape = (bounds.L + 1, bounds.W + 1, bounds.H + 1)
    if cache is not None and cache.exists():
        table = CountTable.load(cache)
        if table.shape == expected_shape and table.n_orders == len(marginal_sets):
            logger.info('Count table loaded from %s', cache)
            return table
        logger.warning('Count table in %s is for grid %s with %d orders; rebuilding', cache, table.shape,
                       table.n_orders)
    table = build_count_table(marginal_sets, bounds, workers=config.workers, streaming=config.streaming_count)
    if cache is not None:
        table.save(cache)
        logger.info('Count table saved to %s', cache)
    return table


def prepare(config, count=True):
    """
    Ingest, marginal search and counting phases.

    Args:
        config (RunConfig): validated config with an order file
        count (bool): also build the count table

    Returns:
        PreparedRun: shared input of the solve, curve and gls commands
    """
    config.validate()
    if config.orders is None:
        raise ConfigError('No order file given.')
    timings = {}
    with phase('ingest', timings):
        ingested = ingest(config.orders, config.bounds, config.strict)
    bounds = _working_bounds(config)
    orders = ingested.orders if config.scale == 1 else [o.shrunk(config.scale) for o in ingested.orders]
    with phase('search', timings):
        batch = search_marginal_sets(orders, bounds, config.budget, config.workers, config.retries)
    if batch.infeasible:
        logger.warning('%d orders have no placement within %s and are excluded', len(batch.infeasible), bounds.box)
    table = None
    if count:
        with phase('count', timings):
            table = _count_table(batch.marginal_sets, bounds, config)
            if config.prune_grid:
                table = table.restrict(*marginal_coordinates(batch.marginal_sets))
                logger.info('Grid pruned to %s candidate coordinates', table.shape)
    excluded = tuple(ingested.excluded) + tuple(batch.infeasible)
    return PreparedRun(bounds, batch, table, excluded, len(ingested.orders) + len(ingested.excluded), timings)


def _gls_params(config):
    """GLS settings; the run seed applies when the GLS settings carry none."""
    if config.gls.seed is None and config.seed is not None:
        return replace(config.gls, seed=config.seed)
    return config.gls


def _make_solver(name, count_table, bounds, config):
    if name == 'naive':
        return NaiveSolver(count_table, bounds)
    return FastSolver(count_table, bounds, config.brute_force_limit)


def solve_command(config, tool_version=''):
    """
    Run the full pipeline and report the chosen chain.

    With solver "all" the local search runs on the same marginal sets and its cost is reported next to the
    DP cost.

    Args:
        config (RunConfig): run configuration
        tool_version (str): echoed into the report

    Returns:
        Report: chain, shares, timings and statistics
    """
    run = prepare(config)
    timings = run.timings
    stats = {'ingest': {'read': run.n_read, 'excluded': len(run.excluded)},
             'search': {'orders': len(run.batch.marginal_sets), 'retried': list(run.batch.retried)}}
    chain, refined, gls_result = None, None, None

    if config.solver in ('fast', 'naive', 'all'):
        with phase('solve', timings):
            solver = _make_solver(config.solver, run.count_table, run.bounds, config)
            chain = solver.solve()
            stats['solver'] = solver.stats.as_dict()
            candidate = refine_strict(chain, run.count_table)
            if any(chain.collapsed) and validate_chain(candidate, run.bounds, strict=True):
                refined = candidate
    if config.solver in ('gls', 'all'):
        with phase('gls', timings):
            gls_result = gls_solve(run.batch.marginal_sets, run.bounds, _gls_params(config))
            stats['gls'] = {'iterations': gls_result.iterations, 'seed': gls_result.seed,
                            'truncated': gls_result.truncated}
        if chain is None:
            chain = gls_result.chain

    chain = rescale_chain(chain, config.scale)
    gls_cost = None if gls_result is None else rescale_chain(gls_result.chain, config.scale).total_cost
    report = Report(config.solver, chain, chain.n_orders, timings, config.to_dict(), run.excluded, stats,
                    None if refined is None else rescale_chain(refined, config.scale), gls_cost, tool_version)
    if report.gap_percent is not None:
        logger.info('GLS costs %.2f%% more than the DP chain', report.gap_percent)
    return report


def curve_command(config, k_min, k_max) -> List[Tuple[int, BinChain]]:
    """
    Optimal chain for every K in [k_min, k_max], reusing one count table.

    Returns:
        list: (K, BinChain) sorted by K; total cost is nonincreasing in K
    """
    if k_min < 1 or k_max < k_min:
        raise ConfigError(f'Invalid K range [{k_min}, {k_max}].')
    run = prepare(config)
    name = 'naive' if config.solver == 'naive' else 'fast'
    rows = []
    with phase('solve', run.timings):
        for k in range(k_min, k_max + 1):
            chain = _make_solver(name, run.count_table, run.bounds.with_k(k), config).solve()
            rows.append((k, rescale_chain(chain, config.scale)))
            logger.info('K=%d: total cost %d', k, rows[-1][1].total_cost)
    return rows


def format_curve(rows):
    """Two-column comma-separated text, header "K,total_cost"."""
    return 'K,total_cost\n' + ''.join(f'{k},{chain.total_cost}\n' for k, chain in rows)


def marginals_command(config):
    """Debug dump of every order's marginal types, one line per order in order-id order."""
    config.validate()
    if config.orders is None:
        raise ConfigError('No order file given.')
    timings = {}
    with phase('ingest', timings):
        ingested = ingest(config.orders, config.bounds, config.strict, allow_empty=True)
    with phase('search', timings):
        batch = search_marginal_sets(ingested.orders, config.bounds, config.budget, config.workers, config.retries)
    return format_marginal_dump(batch.marginal_sets)


def gls_command(config):
    """Local search only; the result chain is in centimeters even on a coarsened grid."""
    run = prepare(config, count=False)
    with phase('gls', run.timings):
        result = gls_solve(run.batch.marginal_sets, run.bounds, _gls_params(config))
    chain = rescale_chain(result.chain, config.scale)
    return replace(result, chain=chain, cost=chain.total_cost)
