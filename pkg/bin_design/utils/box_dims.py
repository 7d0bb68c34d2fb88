from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, Tuple

from .errors import InvalidBounds, InvalidDimensions


@dataclass(frozen=True, order=True)
class BoxDims:
    """
    Integer (length, width, height) triple in centimeters.

    The same type describes an item, the extent of a placement and a bin type. Every dimension must be a
    positive integer, except for the zero anchor (0, 0, 0) that starts every bin chain.

    Example Usage:

    >> BoxDims(27, 18, 15).surface_cost
        2322
    """
    l: int
    w: int
    h: int

    def __post_init__(self):
        dims = []
        for name in ('l', 'w', 'h'):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value:
                raise InvalidDimensions(f'Dimension {name}={value!r} is not an integer.')
            dims.append(int(value))
            object.__setattr__(self, name, int(value))
        if any(d < 0 for d in dims):
            raise InvalidDimensions(f'Negative dimension in {tuple(dims)}.')
        if 0 in dims and any(dims):
            raise InvalidDimensions(f'{tuple(dims)} mixes zero and positive dimensions; only (0, 0, 0) '
                                    f'may contain zeros.')

    @classmethod
    def zero(cls):
        """The virtual chain anchor b0 = (0, 0, 0)."""
        return cls(0, 0, 0)

    @classmethod
    def parse(cls, text):
        """
        Parse "l,w,h" or "LxWxH".

        Args:
            text (str): three integers separated by "," or "x"

        Returns:
            BoxDims: parsed dimensions
        """
        parts = text.lower().replace('x', ',').split(',')
        if len(parts) != 3:
            raise InvalidDimensions(f'Expected three dimensions, got "{text}".')
        try:
            return cls(*(int(p) for p in parts))
        except ValueError:
            raise InvalidDimensions(f'Dimensions "{text}" are not integers.') from None

    @property
    def is_zero(self):
        return self.l == 0 and self.w == 0 and self.h == 0

    @property
    def volume(self):
        return self.l * self.w * self.h

    @property
    def size_sum(self):
        return self.l + self.w + self.h

    @property
    def surface_cost(self):
        return surface_cost(self)

    @property
    def sorted_dims(self):
        return tuple(sorted((self.l, self.w, self.h)))

    def as_tuple(self):
        return self.l, self.w, self.h

    def orientations(self):
        """Distinct axis permutations, in ascending lexicographic order."""
        return [BoxDims(*p) for p in sorted(set(permutations(self.as_tuple())))]

    def scaled(self, factor):
        """Multiply every dimension by an integer factor."""
        return BoxDims(self.l * factor, self.w * factor, self.h * factor)

    def shrunk(self, factor):
        """Divide every dimension by an integer factor, rounding up."""
        return BoxDims(-(-self.l // factor), -(-self.w // factor), -(-self.h // factor))

    def __iter__(self) -> Iterator[int]:
        return iter((self.l, self.w, self.h))

    def __str__(self):
        return f'{self.l},{self.w},{self.h}'


def surface_cost(box):
    """
    Surface area 2(lw + wh + lh) of a bin in cm²; 0 for the zero anchor.

    Args:
        box (BoxDims): bin type

    Returns:
        int: surface cost
    """
    l, w, h = box
    return 2 * (l * w + w * h + l * h)


def dominates(a, b):
    """True if a is componentwise >= b (equality allowed)."""
    return a.l >= b.l and a.w >= b.w and a.h >= b.h


def is_expanded_of(a, b):
    """True if a dominates b with a strictly larger dimension sum."""
    return dominates(a, b) and a.size_sum > b.size_sum


def is_shrunken_of(a, b):
    """True if b is an expanded bin type of a."""
    return is_expanded_of(b, a)


@dataclass(frozen=True)
class Bounds:
    """
    Largest permissible bin (L, W, H) and the number of bin types K.

    A chain of K types whose dimension sum strictly increases must fit inside the grid, so
    1 <= K <= L + W + H - 2.
    """
    L: int
    W: int
    H: int
    K: int = 1

    def __post_init__(self):
        for name in ('L', 'W', 'H', 'K'):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value:
                raise InvalidBounds(f'{name}={value!r} is not an integer.')
            object.__setattr__(self, name, int(value))
        if min(self.L, self.W, self.H) < 1:
            raise InvalidBounds(f'Bounds ({self.L}, {self.W}, {self.H}) must be positive.')
        if not 1 <= self.K <= self.L + self.W + self.H - 2:
            raise InvalidBounds(f'K={self.K} must lie in [1, {self.L + self.W + self.H - 2}] '
                                f'for bounds ({self.L}, {self.W}, {self.H}).')

    @property
    def box(self):
        return BoxDims(self.L, self.W, self.H)

    @property
    def max_dim(self):
        return max(self.L, self.W, self.H)

    def contains(self, box):
        """True if box lies inside the grid (positive and not above the bounds)."""
        return 1 <= box.l <= self.L and 1 <= box.w <= self.W and 1 <= box.h <= self.H

    def admits(self, item):
        """True if some orientation of item fits inside (L, W, H)."""
        return all(d <= b for d, b in zip(item.sorted_dims, sorted((self.L, self.W, self.H))))

    def with_k(self, k):
        return Bounds(self.L, self.W, self.H, k)

    def shrunk(self, factor):
        """Bounds of a grid coarsened by an integer factor (rounded down)."""
        L, W, H = max(1, self.L // factor), max(1, self.W // factor), max(1, self.H // factor)
        return Bounds(L, W, H, min(self.K, L + W + H - 2))


@dataclass(frozen=True)
class Order:
    """A customer order: an identifier and a nonempty tuple of cuboid items."""
    id: str
    items: Tuple[BoxDims, ...]

    def __post_init__(self):
        object.__setattr__(self, 'id', str(self.id))
        object.__setattr__(self, 'items', tuple(self.items))
        if not self.items:
            raise InvalidDimensions(f'Order "{self.id}" has no items.')
        for item in self.items:
            if item.is_zero:
                raise InvalidDimensions(f'Order "{self.id}" contains a zero-sized item.')

    def fits_bounds(self, bounds):
        """True if every item fits inside the bounds in some orientation."""
        return all(bounds.admits(item) for item in self.items)

    def shrunk(self, factor):
        return Order(self.id, tuple(item.shrunk(factor) for item in self.items))

    @property
    def volume(self):
        return sum(item.volume for item in self.items)
