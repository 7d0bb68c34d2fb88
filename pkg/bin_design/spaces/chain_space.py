from gym import Space
import numpy as np


class MonotoneChainSpace(Space):
    """
    K bin types inside (L, W, H) whose dimensions are nondecreasing along the chain.

    Elements are int64 arrays of shape (K, 3); row k holds (l, w, h) of bin type k + 1.

    Example Usage:

    >> space = MonotoneChainSpace(Bounds(5, 4, 3, K=2))
    >> space.sample()
        array([[2, 1, 1],
               [4, 3, 1]])
    """

    def __init__(self, bounds, seed=None):
        """
        Initialize space.

        Args:
            bounds (Bounds): grid bounds and number of types K
            seed (int): seed of the space's random generator
        """
        self.bounds = bounds
        self.limits = np.array([bounds.L, bounds.W, bounds.H], dtype=np.int64)
        super(MonotoneChainSpace, self).__init__((bounds.K, 3), np.int64, seed)

    def sample(self, mask=None):
        """Draw K values per dimension uniformly from [1, limit] and sort them along the chain."""
        draws = self.np_random.integers(1, self.limits + 1, size=(self.bounds.K, 3))
        return np.sort(draws, axis=0).astype(np.int64)

    def contains(self, x):
        """
        Whether x is a (K, 3) integer chain inside the bounds with every column nondecreasing.

        Lists of [l, w, h] rows are accepted as well as arrays.
        """
        if isinstance(x, (list, tuple)):
            x = np.array(x)
        if not isinstance(x, np.ndarray) or x.shape != self.shape or not np.issubdtype(x.dtype, np.integer):
            return False
        return bool((x >= 1).all() and (x <= self.limits).all() and (np.diff(x, axis=0) >= 0).all())

    def to_jsonable(self, sample_n):
        """Chains as nested lists of plain-int [l, w, h] rows."""
        return [[list(map(int, row)) for row in chain] for chain in sample_n]

    def from_jsonable(self, sample_n):
        """Nested [l, w, h] lists back to (K, 3) int64 chains."""
        return [np.asarray(chain, dtype=np.int64).reshape(self.shape) for chain in sample_n]

    def __repr__(self):
        return f'MonotoneChainSpace({self.bounds.L, self.bounds.W, self.bounds.H, self.bounds.K})'

    def __eq__(self, other):
        return isinstance(other, MonotoneChainSpace) and self.bounds == other.bounds
