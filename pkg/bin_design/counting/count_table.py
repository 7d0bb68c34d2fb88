import hashlib
import logging
import struct
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from pathlib import Path
from typing import Tuple

import numpy as np

from ..search.marginal_search import fits
from ..utils.box_dims import BoxDims
from ..utils.errors import CountTableCacheError

logger = logging.getLogger(__name__)

_MAGIC = b'BDCT'
_VERSION = 1
_HEADER = struct.Struct('<4sHIIIQ')


@dataclass
class DiffTable:
    """
    Signed per-height increments f(l, w, h) whose 2-D prefix sums give the order counts.

    values has shape (L + 1, W + 1, H + 1); row and column 0 are always zero.
    """
    values: np.ndarray
    n_orders: int

    @property
    def shape(self):
        return self.values.shape


@dataclass
class CountTable:
    """
    F(l, w, h): number of orders packable into each candidate bin.

    counts[i, j, k] refers to the bin (axes[0][i], axes[1][j], axes[2][k]). Index 0 of every axis is the
    coordinate 0, where F is zero. On the full grid axes[d] = 0..bound.
    """
    counts: np.ndarray
    n_orders: int
    axes: Tuple[np.ndarray, np.ndarray, np.ndarray]

    @classmethod
    def from_array(cls, counts, n_orders=None, axes=None):
        """
        Wrap a count tensor; n_orders defaults to the largest count.

        Args:
            counts (array-like): integer tensor with zero index-0 planes
            n_orders (int): N
            axes (tuple): coordinate arrays, default 0..size-1 on every axis

        Returns:
            CountTable: table
        """
        counts = np.asarray(counts, dtype=np.int32)
        if axes is None:
            axes = tuple(np.arange(n, dtype=np.int64) for n in counts.shape)
        n_orders = int(counts.max()) if n_orders is None else int(n_orders)
        return cls(counts, n_orders, tuple(np.asarray(a, dtype=np.int64) for a in axes))

    @property
    def shape(self):
        return self.counts.shape

    @property
    def top(self):
        """Largest bin of the grid."""
        return BoxDims(*(int(a[-1]) for a in self.axes))

    @property
    def covers_all(self):
        return int(self.counts[-1, -1, -1]) == self.n_orders

    def box_at(self, i, j, k):
        return BoxDims(int(self.axes[0][i]), int(self.axes[1][j]), int(self.axes[2][k]))

    def index_of(self, box):
        """Grid index of the largest grid bin dominated by box."""
        return tuple(int(np.searchsorted(axis, value, side='right')) - 1 for axis, value in zip(self.axes, box))

    def at(self, box):
        """F(box); coordinates between grid lines round down."""
        if box.is_zero:
            return 0
        return int(self.counts[self.index_of(box)])

    def cost_grid(self):
        """Surface cost of every grid bin, int64, same shape as counts."""
        l, w, h = np.meshgrid(*self.axes, indexing='ij')
        return 2 * (l * w + w * h + l * h)

    def restrict(self, l_values, w_values, h_values):
        """
        Keep only the given coordinates (0 is always kept).

        F only changes at coordinates of marginal types, so restricting to them keeps every optimal chain
        reachable.
        """
        index = []
        for axis, values in zip(self.axes, (l_values, w_values, h_values)):
            values = np.union1d(np.asarray(values, dtype=np.int64), [0])
            values = values[values <= axis[-1]]
            index.append(np.searchsorted(axis, values))
        sub = self.counts[np.ix_(*index)]
        return CountTable(np.ascontiguousarray(sub), self.n_orders,
                          tuple(axis[i] for axis, i in zip(self.axes, index)))

    def save(self, path):
        """Write the binary cache: header, axis coordinates, row-major counts, SHA-256 trailer."""
        nx, ny, nz = self.counts.shape
        payload = _HEADER.pack(_MAGIC, _VERSION, nx, ny, nz, self.n_orders)
        payload += b''.join(np.asarray(a, dtype='<i4').tobytes() for a in self.axes)
        payload += np.ascontiguousarray(self.counts, dtype='<i4').tobytes()
        Path(path).write_bytes(payload + hashlib.sha256(payload).digest())

    @classmethod
    def load(cls, path):
        data = Path(path).read_bytes()
        if len(data) < _HEADER.size + 32:
            raise CountTableCacheError(f'{path}: file too short.')
        payload, digest = data[:-32], data[-32:]
        if hashlib.sha256(payload).digest() != digest:
            raise CountTableCacheError(f'{path}: checksum mismatch.')
        magic, version, nx, ny, nz, n_orders = _HEADER.unpack_from(payload)
        if magic != _MAGIC or version != _VERSION:
            raise CountTableCacheError(f'{path}: not a version {_VERSION} count table.')
        offset = _HEADER.size
        axes = []
        for n in (nx, ny, nz):
            axes.append(np.frombuffer(payload, dtype='<i4', count=n, offset=offset).astype(np.int64))
            offset += 4 * n
        expected = offset + 4 * nx * ny * nz
        if expected != len(payload):
            raise CountTableCacheError(f'{path}: size mismatch.')
        counts = np.frombuffer(payload, dtype='<i4', offset=offset).reshape(nx, ny, nz).astype(np.int32)
        return cls(counts, int(n_orders), tuple(axes))


def _members_by_height(marginal_sets):
    return [sorted((t.h, t.l, t.w) for t in ms.types) for ms in marginal_sets]


def _staircase(members, h):
    """Minimal (l, w) pairs among members of height <= h, ascending in l (so strictly descending in w)."""
    projection = sorted((l, w) for mh, l, w in members if mh <= h)
    steps = []
    for l, w in projection:
        if not steps or w < steps[-1][1]:
            steps.append((l, w))
    return steps


def diff_slice(members_by_order, h, L, W):
    """
    f(., ., h) for one height.

    Each order adds +1 at its first staircase step and, for every further step, +1 at the step and -1 at
    the corner it shares with the previous step.
    """
    f = np.zeros((L + 1, W + 1), dtype=np.int32)
    for members in members_by_order:
        steps = _staircase(members, h)
        if not steps:
            continue
        l1, w1 = steps[0]
        f[l1, w1] += 1
        for (_, w_prev), (l_j, w_j) in zip(steps, steps[1:]):
            f[l_j, w_j] += 1
            f[l_j, w_prev] -= 1
    return f


def build_diff_table(marginal_sets, bounds, workers=1):
    """
    Build the difference table f from the orders' marginal sets.

    Heights are independent; with workers > 1 slices are computed in a process pool.

    Args:
        marginal_sets (list): MarginalSet per order, each a within-bounds antichain
        bounds (Bounds): grid bounds
        workers (int): number of worker processes

    Returns:
        DiffTable: f over [0..L] x [0..W] x [0..H]
    """
    L, W, H = bounds.L, bounds.W, bounds.H
    members = _members_by_height(marginal_sets)
    heights = range(H + 1)
    slice_fn = partial(diff_slice, members, L=L, W=W)
    if workers > 1 and H > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            slices = list(executor.map(slice_fn, heights))
    else:
        slices = [slice_fn(h) for h in heights]
    values = np.stack(slices, axis=2)
    return DiffTable(values, len(marginal_sets))


def prefix_sum(diff_table):
    """
    F(l, w, h) = F(l-1, w, h) + F(l, w-1, h) - F(l-1, w-1, h) + f(l, w, h), for every height at once.

    Args:
        diff_table (DiffTable): table from build_diff_table

    Returns:
        CountTable: counts over the full grid
    """
    counts = diff_table.values.cumsum(axis=0, dtype=np.int64).cumsum(axis=1).astype(np.int32)
    return CountTable.from_array(counts, diff_table.n_orders)


def iter_count_slices(marginal_sets, bounds):
    """Yield (h, F(., ., h)) one height at a time without materialising the full tensor."""
    members = _members_by_height(marginal_sets)
    for h in range(bounds.H + 1):
        f = diff_slice(members, h, bounds.L, bounds.W)
        yield h, f.cumsum(axis=0, dtype=np.int64).cumsum(axis=1).astype(np.int32)


def build_count_table(marginal_sets, bounds, workers=1, streaming=False):
    """F from marginal sets; streaming builds it slice by slice instead of storing f."""
    if streaming:
        counts = np.zeros((bounds.L + 1, bounds.W + 1, bounds.H + 1), dtype=np.int32)
        for h, slice_ in iter_count_slices(marginal_sets, bounds):
            counts[:, :, h] = slice_
        table = CountTable.from_array(counts, len(marginal_sets))
    else:
        table = prefix_sum(build_diff_table(marginal_sets, bounds, workers))
    logger.info('Count table %s built for %d orders', table.shape, table.n_orders)
    return table


def count_direct(marginal_sets, bin_type):
    """Number of orders with a marginal type componentwise <= bin_type, by direct scan."""
    return sum(1 for ms in marginal_sets if fits(ms, bin_type))


def marginal_coordinates(marginal_sets):
    """Sorted distinct l, w and h coordinates of all marginal types, with 0 and 1 always present."""
    coords = ({0, 1}, {0, 1}, {0, 1})
    for ms in marginal_sets:
        for t in ms.types:
            coords[0].add(t.l)
            coords[1].add(t.w)
            coords[2].add(t.h)
    return tuple(np.array(sorted(c), dtype=np.int64) for c in coords)
