from dataclasses import dataclass
from typing import Tuple

from gym.utils import seeding
import numpy as np

from ..utils.box_dims import BoxDims, Order

# P(item count <= 10) = 1 - (1 - p) ** 10 = 0.75
SMALL_ORDER_P = 1 - 0.25 ** 0.1


@dataclass(frozen=True)
class GeneratorProfile:
    """
    Shape of synthetic order data.

    Item counts are geometric on 1, 2, ... with success probability item_count_p, capped at max_items. Item
    dimensions are uniform integers between min_item and max_item, per axis.
    """
    item_count_p: float = SMALL_ORDER_P
    max_items: int = 30
    min_item: Tuple[int, int, int] = (1, 1, 1)
    max_item: Tuple[int, int, int] = (25, 20, 15)

    def __post_init__(self):
        assert 0 < self.item_count_p <= 1, 'item_count_p must lie in (0, 1].'
        assert self.max_items >= 1, 'max_items must be positive.'
        assert all(1 <= a <= b for a, b in zip(self.min_item, self.max_item)), \
            'Item dimensions need 1 <= min_item <= max_item.'


def generate(n_orders, profile=None, seed=None):
    """
    Synthetic orders, deterministic under seed.

    Args:
        n_orders (int): number of orders, at least 1
        profile (GeneratorProfile): distribution parameters, default GeneratorProfile()
        seed (int): seed of the random generator

    Returns:
        list: Order objects with ids "000000", "000001", ...
    """
    assert n_orders >= 1, 'At least one order has to be generated.'
    profile = GeneratorProfile() if profile is None else profile
    rng, _ = seeding.np_random(seed)
    counts = np.minimum(rng.geometric(profile.item_count_p, size=n_orders), profile.max_items)
    low, high = np.array(profile.min_item), np.array(profile.max_item) + 1
    dims = rng.integers(low, high, size=(int(counts.sum()), 3))
    width = len(str(n_orders - 1))
    orders, start = [], 0
    for i, count in enumerate(counts.tolist()):
        items = tuple(BoxDims(*row) for row in dims[start:start + count].tolist())
        orders.append(Order(f'{i:0{max(width, 6)}d}', items))
        start += count
    return orders
