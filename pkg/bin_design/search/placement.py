from collections import Counter
from dataclasses import dataclass

from ..utils.box_dims import BoxDims


@dataclass(frozen=True)
class Placement:
    """An item in one orientation with its left-bottom-back corner at (x, y, z)."""
    item_index: int
    orientation: BoxDims
    x: int
    y: int
    z: int

    @property
    def x_end(self):
        return self.x + self.orientation.l

    @property
    def y_end(self):
        return self.y + self.orientation.w

    @property
    def z_end(self):
        return self.z + self.orientation.h

    @property
    def far_corner(self):
        return self.x_end, self.y_end, self.z_end

    def overlaps(self, other):
        """Closed-open test: shared faces are allowed, shared interior volume is not."""
        return (self.x < other.x_end and other.x < self.x_end and
                self.y < other.y_end and other.y < self.y_end and
                self.z < other.z_end and other.z < self.z_end)

    def inside(self, limit):
        return self.x_end <= limit.l and self.y_end <= limit.w and self.z_end <= limit.h


class CornerCountMap:
    """
    Multisets of x, y and z coordinates of placed far corners, plus the origin.

    Candidate positions for the next item are the Cartesian product of the three key sets. Removing a corner
    after it was added restores the exact previous state.
    """

    def __init__(self):
        self.x = Counter({0: 1})
        self.y = Counter({0: 1})
        self.z = Counter({0: 1})

    def add(self, x, y, z):
        self.x[x] += 1
        self.y[y] += 1
        self.z[z] += 1

    def remove(self, x, y, z):
        for axis, value in ((self.x, x), (self.y, y), (self.z, z)):
            assert axis[value] > 0, f'Coordinate {value} is not in the corner map.'
            axis[value] -= 1
            if axis[value] == 0:
                del axis[value]

    def keys(self):
        """Sorted key lists for the x, y and z axes."""
        return sorted(self.x), sorted(self.y), sorted(self.z)

    def snapshot(self):
        return dict(self.x), dict(self.y), dict(self.z)

    def __repr__(self):
        return f'CornerCountMap(x={dict(self.x)}, y={dict(self.y)}, z={dict(self.z)})'


def _blocks(placed, candidate, axis):
    """True if the placed item's far face touches the candidate's near face on the axis and their
    projections on the two other axes overlap."""
    if axis == 0:
        return (placed.x_end == candidate.x and
                placed.y < candidate.y_end and candidate.y < placed.y_end and
                placed.z < candidate.z_end and candidate.z < placed.z_end)
    if axis == 1:
        return (placed.y_end == candidate.y and
                placed.x < candidate.x_end and candidate.x < placed.x_end and
                placed.z < candidate.z_end and candidate.z < placed.z_end)
    return (placed.z_end == candidate.z and
            placed.x < candidate.x_end and candidate.x < placed.x_end and
            placed.y < candidate.y_end and candidate.y < placed.y_end)


def next_to_boundary(candidate, placed):
    """
    True if the candidate cannot be translated in the negative direction of any axis.

    On every axis the item must rest either on the coordinate-0 wall or against a placed item face.
    """
    for axis, start in enumerate((candidate.x, candidate.y, candidate.z)):
        if start != 0 and not any(_blocks(p, candidate, axis) for p in placed):
            return False
    return True


def is_admissible(candidate, placed, limit):
    """Inside limit, not overlapping any placed item, and next to boundary on every axis."""
    if not candidate.inside(limit):
        return False
    if any(candidate.overlaps(p) for p in placed):
        return False
    return next_to_boundary(candidate, placed)


def item_orientations(item):
    """
    Distinct axis permutations of an item.

    Args:
        item (BoxDims): item with positive dimensions

    Returns:
        list: 6, 3 or 1 BoxDims in ascending lexicographic order
    """
    return item.orientations()


def candidate_placements(item_index, orientations, corners, limit):
    """Yield placements over orientation x corner key products, in ascending order, that stay inside limit."""
    xs, ys, zs = corners.keys()
    for orientation in orientations:
        for x in xs:
            if x + orientation.l > limit.l:
                break
            for y in ys:
                if y + orientation.w > limit.w:
                    break
                for z in zs:
                    if z + orientation.h > limit.h:
                        break
                    yield Placement(item_index, orientation, x, y, z)
