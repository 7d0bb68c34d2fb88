from collections import defaultdict
from dataclasses import dataclass
from itertools import product
from typing import Tuple

import numpy as np


@dataclass(frozen=True)
class AxisBlock:
    """Indices in pred update indices in succ along one axis; every pred index is <= every succ index."""
    pred: range
    succ: range
    level: int

    @property
    def diagonal(self):
        return self.pred == self.succ


@dataclass(frozen=True)
class UpdateBlock:
    """Tensor product of one AxisBlock per axis."""
    pred: Tuple[range, range, range]
    succ: Tuple[range, range, range]

    def pairs(self):
        """All (predecessor, successor) index triples covered by the block."""
        for p in product(*self.pred):
            for s in product(*self.succ):
                yield p, s


def axis_schedule(extent, start=1):
    """
    Divide and conquer over [start, start + extent): the left half updates the right half, then recurse into
    both halves; a single index updates itself.

    Every pair i <= j appears in exactly one block.

    Args:
        extent (int): number of indices
        start (int): first index

    Returns:
        list: AxisBlock
    """
    assert extent >= 1, 'Extent must be positive.'
    blocks = []

    def divide(left, right, level):
        if left < right:
            middle = (left + right) // 2
            divide(left, middle, level + 1)
            divide(middle + 1, right, level + 1)
            blocks.append(AxisBlock(range(left, middle + 1), range(middle + 1, right + 1), level))
        else:
            blocks.append(AxisBlock(range(left, left + 1), range(right, right + 1), level))

    divide(start, start + extent - 1, 0)
    return blocks


def dc_schedule(extents, start=1):
    """
    Update blocks for a 3-D grid: the product of the per-axis schedules.

    Each block pairs a predecessor sub-box with a successor sub-box such that every predecessor is
    componentwise <= every successor, and every dominating pair appears in exactly one block.

    Args:
        extents (tuple): number of indices per axis
        start (int): first index on every axis

    Returns:
        list: UpdateBlock
    """
    per_axis = [axis_schedule(e, start) for e in extents]
    return [UpdateBlock(tuple(b.pred for b in combo), tuple(b.succ for b in combo)) for combo in product(*per_axis)]


def group_axis_blocks(blocks):
    """
    Group axis blocks of equal predecessor and successor lengths.

    Returns:
        list: (pred index array of shape (n, len(pred)), succ index array of shape (n, len(succ)))
    """
    groups = defaultdict(list)
    for block in blocks:
        groups[(len(block.pred), len(block.succ))].append(block)
    return [(np.array([list(b.pred) for b in group], dtype=np.int64),
             np.array([list(b.succ) for b in group], dtype=np.int64))
            for _, group in sorted(groups.items())]
