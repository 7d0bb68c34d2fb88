import logging
import time
from dataclasses import asdict, dataclass, field
from itertools import product
from typing import List

import numpy as np

from ..utils.bin_chain import INFEASIBLE_COST, BinChain
from ..utils.box_dims import BoxDims, surface_cost
from ..utils.errors import Infeasible
from .envelope import build_hull, sweep_hull
from .schedule import axis_schedule, group_axis_blocks

logger = logging.getLogger(__name__)

# Values at or above this are unreachable states; INFEASIBLE_COST minus any real transition stays above it.
_UNREACHABLE = INFEASIBLE_COST // 2
# Largest (blocks x queries x lines) tensor evaluated at once by the batched path.
_BATCH_ELEMENTS = 1 << 22
_INT64_MAX = np.iinfo(np.int64).max


@dataclass
class StageTable:
    """
    C(k, b) for every grid cell of stage k, and the flat index of the minimising predecessor (-1 if none).
    """
    stage: int
    values: np.ndarray
    predecessors: np.ndarray

    def reachable(self):
        return self.values < _UNREACHABLE


@dataclass
class SolverStats:
    method: str
    stages: int = 0
    blocks: int = 0
    envelope_blocks: int = 0
    batched_blocks: int = 0
    lines_pushed: int = 0
    stage_seconds: List[float] = field(default_factory=list)

    def as_dict(self):
        return asdict(self)


class StagedSolver:
    """
    Shortest path through K stages of bin types.

    C(0, b0) = 0 and C(k, b) = min over predecessors b' <= b of C(k-1, b') + cost(b) (F(b) - F(b')). The chain
    is relaxed: b' = b is allowed and costs nothing. The last type must pack every order. Among equal-cost
    predecessors the one with larger F wins, then the lexicographically smaller one.
    """
    method = None

    def __init__(self, count_table, bounds):
        top = count_table.top
        assert top.l <= bounds.L and top.w <= bounds.W and top.h <= bounds.H, \
            f'Count table grid {top} exceeds bounds {bounds}.'
        self.table = count_table
        self.bounds = bounds
        self.counts = count_table.counts.astype(np.int64)
        self.costs = count_table.cost_grid().astype(np.int64)
        self.shape = self.counts.shape
        self.valid = np.zeros(self.shape, dtype=bool)
        self.valid[1:, 1:, 1:] = True
        self.stats = SolverStats(self.method)
        self.stages = []

    def solve(self):
        """
        Run every stage and trace back the optimal chain.

        Returns:
            BinChain: optimal relaxed chain of K types
        """
        n_orders = self.table.n_orders
        packed = int(self.counts[-1, -1, -1])
        if packed < n_orders:
            raise Infeasible(f'The largest bin {self.table.top} packs only {packed} of {n_orders} orders.')
        if min(self.shape) < 2:
            raise Infeasible('The grid has no candidate bin type.')

        values = np.full(self.shape, INFEASIBLE_COST, dtype=np.int64)
        values[0, 0, 0] = 0
        self.stages = [StageTable(0, values, np.full(self.shape, -1, dtype=np.int64))]
        for k in range(1, self.bounds.K + 1):
            start = time.perf_counter()
            values, predecessors = self._stage(self.stages[-1].values)
            values[~self.valid] = INFEASIBLE_COST
            predecessors[~self.valid] = -1
            self.stages.append(StageTable(k, values, predecessors))
            self.stats.stage_seconds.append(time.perf_counter() - start)
            logger.debug('%s stage %d done in %.3fs', self.method, k, self.stats.stage_seconds[-1])
        self.stats.stages = self.bounds.K
        return extract_solution(self.stages, self.table, self._terminal())

    def _terminal(self):
        final = self.stages[-1].values
        feasible = self.valid & (self.counts == self.table.n_orders) & (final < _UNREACHABLE)
        masked = np.where(feasible, final, INFEASIBLE_COST)
        terminal = int(np.argmin(masked))
        if masked.flat[terminal] >= _UNREACHABLE:
            raise Infeasible('No chain ends in a bin packing every order.')
        return terminal

    def _stage(self, previous):
        raise NotImplementedError


class NaiveSolver(StagedSolver):
    """Scans every dominated predecessor of every cell."""
    method = 'naive'

    def _stage(self, previous):
        values = np.full(self.shape, INFEASIBLE_COST, dtype=np.int64)
        predecessors = np.full(self.shape, -1, dtype=np.int64)
        nx, ny, nz = self.shape
        for i, j, k in product(range(1, nx), range(1, ny), range(1, nz)):
            x = self.costs[i, j, k]
            sub_values = previous[:i + 1, :j + 1, :k + 1]
            sub_counts = self.counts[:i + 1, :j + 1, :k + 1]
            candidates = sub_values - x * sub_counts
            best = candidates.min()
            self.stats.blocks += 1
            if best >= _UNREACHABLE:
                continue
            tied_counts = np.where(candidates == best, sub_counts, -1)
            local = np.unravel_index(int(np.argmax(tied_counts)), sub_values.shape)
            values[i, j, k] = best + x * self.counts[i, j, k]
            predecessors[i, j, k] = np.ravel_multi_index(local, self.shape)
        return values, predecessors


class FastSolver(StagedSolver):
    """
    Divide-and-conquer schedule per axis, tensored over three axes, with a lower envelope per block.

    Inside a block every predecessor dominates-below every successor, so the transition is
    cost(b) F(b) + min over lines y = -F(b') x + C(k-1, b') evaluated at x = cost(b). Blocks with at most
    brute_force_limit line/query pairs are answered together by an exact batched minimum instead.
    """
    method = 'fast'

    def __init__(self, count_table, bounds, brute_force_limit=4096):
        super().__init__(count_table, bounds)
        self.brute_force_limit = brute_force_limit
        self.flat_counts = self.counts.ravel()
        self.flat_costs = self.costs.ravel()
        self.flat_index = np.arange(self.flat_counts.size, dtype=np.int64)
        # query points never change between stages: rank them once
        self.query_rank = _rank(np.lexsort((self.flat_index, self.flat_costs)))
        self.axis_groups = [group_axis_blocks(axis_schedule(n, start=0)) for n in self.shape]

    def _cells(self, ix, iy, iz):
        _, ny, nz = self.shape
        cells = ((ix[:, None, None, :, None, None] * ny + iy[None, :, None, None, :, None]) * nz
                 + iz[None, None, :, None, None, :])
        return cells.reshape(ix.shape[0] * iy.shape[0] * iz.shape[0], ix.shape[1] * iy.shape[1] * iz.shape[1])

    def _stage(self, previous):
        intercepts = previous.ravel()
        values = np.full(intercepts.size, INFEASIBLE_COST, dtype=np.int64)
        predecessors = np.full(intercepts.size, -1, dtype=np.int64)
        # slopes -F in decreasing order, then intercepts, then lexicographic cell order
        line_rank = _rank(np.lexsort((self.flat_index, intercepts, self.flat_counts)))

        for (px, sx), (py, sy), (pz, sz) in product(*self.axis_groups):
            pred_cells = self._cells(px, py, pz)
            live = (intercepts[pred_cells] < _UNREACHABLE).any(axis=1)
            if not live.any():
                continue
            pred_cells = pred_cells[live]
            succ_cells = self._cells(sx, sy, sz)[live]
            self.stats.blocks += pred_cells.shape[0]
            if pred_cells.shape[1] * succ_cells.shape[1] <= self.brute_force_limit:
                self._batched(intercepts, pred_cells, succ_cells, values, predecessors)
            else:
                for pred_row, succ_row in zip(pred_cells, succ_cells):
                    self._envelope_block(intercepts, line_rank, pred_row, succ_row, values, predecessors)
        return values.reshape(self.shape), predecessors.reshape(self.shape)

    def _batched(self, intercepts, pred_cells, succ_cells, values, predecessors):
        n_blocks, m = pred_cells.shape
        q = succ_cells.shape[1]
        step = max(1, _BATCH_ELEMENTS // (m * q))
        for lo in range(0, n_blocks, step):
            pc, sc = pred_cells[lo:lo + step], succ_cells[lo:lo + step]
            slopes = -self.flat_counts[pc]
            xs = self.flat_costs[sc]
            candidates = intercepts[pc][:, None, :] + slopes[:, None, :] * xs[:, :, None]
            best = candidates.min(axis=2)
            tied_slopes = np.where(candidates == best[:, :, None], slopes[:, None, :], _INT64_MAX)
            best_pred = np.take_along_axis(pc, tied_slopes.argmin(axis=2), axis=1)
            ok = best < _UNREACHABLE
            totals = best + xs * self.flat_counts[sc]
            self._merge(values, predecessors, sc[ok], totals[ok], best_pred[ok])
        self.stats.batched_blocks += n_blocks

    def _envelope_block(self, intercepts, line_rank, pred_row, succ_row, values, predecessors):
        live = pred_row[intercepts[pred_row] < _UNREACHABLE]
        if live.size == 0:
            return
        live = live[np.argsort(line_rank[live], kind='stable')]
        hull = build_hull(zip((-self.flat_counts[live]).tolist(), intercepts[live].tolist(), live.tolist()))
        queries = succ_row[np.argsort(self.query_rank[succ_row], kind='stable')]
        hits = sweep_hull(hull, self.flat_costs[queries].tolist())
        minima = np.fromiter((y for y, _ in hits), dtype=np.int64, count=len(hits))
        refs = np.fromiter((line[2] for _, line in hits), dtype=np.int64, count=len(hits))
        totals = minima + self.flat_costs[queries] * self.flat_counts[queries]
        self._merge(values, predecessors, queries, totals, refs)
        self.stats.envelope_blocks += 1
        self.stats.lines_pushed += int(live.size)

    def _merge(self, values, predecessors, cells, totals, pred_cells):
        """Min-combine candidate values into successor cells; a cell may appear more than once."""
        new_counts = self.flat_counts[pred_cells]
        order = np.lexsort((pred_cells, -new_counts, totals, cells))
        cells, totals, pred_cells, new_counts = cells[order], totals[order], pred_cells[order], new_counts[order]
        first = np.ones(cells.size, dtype=bool)
        first[1:] = cells[1:] != cells[:-1]
        cells, totals, pred_cells, new_counts = cells[first], totals[first], pred_cells[first], new_counts[first]

        current = values[cells]
        current_pred = predecessors[cells]
        current_counts = np.where(current_pred >= 0, self.flat_counts[current_pred], -1)
        better = (totals < current) | ((totals == current) & (
            (new_counts > current_counts) | ((new_counts == current_counts) & (pred_cells < current_pred))))
        values[cells[better]] = totals[better]
        predecessors[cells[better]] = pred_cells[better]


def _rank(order):
    rank = np.empty_like(order)
    rank[order] = np.arange(order.size, dtype=order.dtype)
    return rank


def solve_naive(count_table, bounds):
    """Optimal chain by exhaustive predecessor scans, O(K (LWH)^2)."""
    return NaiveSolver(count_table, bounds).solve()


def solve_fast(count_table, bounds, brute_force_limit=4096):
    """Optimal chain by the divide-and-conquer + lower-envelope schedule."""
    return FastSolver(count_table, bounds, brute_force_limit).solve()


def extract_solution(stages, count_table, terminal):
    """
    Walk predecessors from the terminal cell of stage K back to the zero anchor.

    Args:
        stages (list): StageTable for stages 0..K
        count_table (CountTable): F used by the solver
        terminal (int): flat index of b_K

    Returns:
        BinChain: K types, per-type counts F(b_k) - F(b_{k-1}) and the total cost
    """
    cells = []
    cell = terminal
    for stage in reversed(stages[1:]):
        cells.append(cell)
        cell = int(stage.predecessors.flat[cell])
        assert cell >= 0, f'Stage {stage.stage} has no predecessor for cell {cells[-1]}.'
    assert cell == 0, 'The chain must start at the zero anchor.'
    cells.reverse()

    types = [count_table.box_at(*np.unravel_index(c, count_table.shape)) for c in cells]
    covered = [0] + [int(count_table.counts.flat[c]) for c in cells]
    per_type = [covered[i + 1] - covered[i] for i in range(len(cells))]
    chain = BinChain(tuple(types), int(stages[-1].values.flat[terminal]), tuple(per_type))
    assert chain.recomputed_cost() == chain.total_cost, 'Traceback cost does not match the stage value.'
    if any(chain.collapsed):
        logger.info('Chain repeats %d bin type(s); fewer distinct types reach the same cost',
                    sum(chain.collapsed))
    return chain


def _best_intermediate(lower, upper, count_table):
    """Grid bin strictly between lower and upper saving the most when it takes over lower's successors."""
    lo = [0 if v == 0 else int(np.searchsorted(axis, v)) for axis, v in zip(count_table.axes, lower)]
    hi = count_table.index_of(upper)
    axes = [axis[max(a, 1):b + 1] for axis, a, b in zip(count_table.axes, lo, hi)]
    if any(a.size == 0 for a in axes):
        return None
    l, w, h = np.meshgrid(*axes, indexing='ij')
    sums = l + w + h
    ok = (l >= lower.l) & (w >= lower.w) & (h >= lower.h) & (sums > lower.size_sum) & (sums < upper.size_sum)
    if not ok.any():
        return None
    sub_counts = count_table.counts[max(lo[0], 1):hi[0] + 1, max(lo[1], 1):hi[1] + 1,
                                    max(lo[2], 1):hi[2] + 1].astype(np.int64)
    costs = 2 * (l * w + w * h + l * h)
    savings = (surface_cost(upper) - costs) * (sub_counts - count_table.at(lower))
    savings = np.where(ok, savings, -1)
    i, j, k = np.unravel_index(int(np.argmax(savings)), savings.shape)
    return BoxDims(int(l[i, j, k]), int(w[i, j, k]), int(h[i, j, k]))


def refine_strict(chain, count_table):
    """
    Replace repeated types by intermediate expanded types where the grid has one.

    The replaced type takes over orders that fit it from a larger bin, so the total cost never increases.

    Args:
        chain (BinChain): relaxed chain from a solver
        count_table (CountTable): F used by the solver

    Returns:
        BinChain: refined chain; may still contain repeats when no intermediate type exists
    """
    types = list(chain.types)
    for k in range(1, len(types)):
        if types[k] != types[k - 1]:
            continue
        lower = types[k - 2] if k >= 2 else BoxDims.zero()
        candidate = _best_intermediate(lower, types[k], count_table)
        if candidate is not None:
            types[k - 1] = candidate
    covered = [0] + [count_table.at(t) for t in types]
    per_type = [covered[i + 1] - covered[i] for i in range(len(types))]
    total = sum(surface_cost(t) * c for t, c in zip(types, per_type))
    return BinChain(tuple(types), total, tuple(per_type))
