from itertools import combinations_with_replacement, permutations, product

import numpy as np

from ..search.marginal_search import MarginalSet, fits, pareto_filter
from ..search.placement import Placement, item_orientations
from ..utils.bin_chain import BinChain
from ..utils.box_dims import BoxDims, surface_cost
from ..utils.errors import Infeasible, InfeasibleOrder, TooLarge

MAX_ORACLE_ITEMS = 4
MAX_DESIGN_GRID = 6
MAX_DESIGN_K = 3
MAX_DESIGN_ORDERS = 12


def _enclosures(sequence, index, placed, limit, enclosure):
    """Yield the enclosure of every complete placement of sequence[index:] at corner coordinates."""
    if index == len(sequence):
        yield enclosure
        return
    xs = sorted({0} | {p.x_end for p in placed})
    ys = sorted({0} | {p.y_end for p in placed})
    zs = sorted({0} | {p.z_end for p in placed})
    for orientation in item_orientations(sequence[index]):
        for x, y, z in product(xs, ys, zs):
            if x + orientation.l > limit.l or y + orientation.w > limit.w or z + orientation.h > limit.h:
                continue
            candidate = Placement(index, orientation, x, y, z)
            if any(candidate.overlaps(p) for p in placed):
                continue
            placed.append(candidate)
            yield from _enclosures(sequence, index + 1, placed, limit,
                                   (max(enclosure[0], candidate.x_end), max(enclosure[1], candidate.y_end),
                                    max(enclosure[2], candidate.z_end)))
            placed.pop()


def _all_enclosures(items, limit):
    for sequence in sorted(set(permutations(items))):
        yield from _enclosures(sequence, 0, [], limit, (0, 0, 0))


def exhaustive_pack_oracle(order, bin_type):
    """
    True if the order packs into bin_type, by trying every item order, orientation and corner position.

    No admissibility rule, cost bound or node budget restricts the search.

    Args:
        order (Order): at most MAX_ORACLE_ITEMS items
        bin_type (BoxDims): bin to pack

    Returns:
        bool: a complete placement exists
    """
    if len(order.items) > MAX_ORACLE_ITEMS:
        raise TooLarge(f'Order "{order.id}" has {len(order.items)} items; the oracle accepts at most '
                       f'{MAX_ORACLE_ITEMS}.')
    if order.volume > bin_type.volume:
        return False
    if not all(a <= b for item in order.items for a, b in zip(item.sorted_dims, bin_type.sorted_dims)):
        return False
    return next(_all_enclosures(order.items, bin_type), None) is not None


def oracle_marginal_set(order, bounds):
    """
    Exact marginal bin types of an order inside the bounds.

    Every complete placement inside (L, W, H) is enumerated; its enclosures are Pareto filtered.
    """
    if len(order.items) > MAX_ORACLE_ITEMS:
        raise TooLarge(f'Order "{order.id}" has {len(order.items)} items; the oracle accepts at most '
                       f'{MAX_ORACLE_ITEMS}.')
    leaves = set(_all_enclosures(order.items, bounds.box))
    if not leaves:
        raise InfeasibleOrder(order.id)
    return MarginalSet(order.id, tuple(pareto_filter(BoxDims(*leaf) for leaf in leaves)))


def _popcounts(masks, n_orders):
    table = np.array([bin(v).count('1') for v in range(1 << n_orders)], dtype=np.int64)
    return table[masks]


def brute_force_design(marginal_sets, bounds):
    """
    Cheapest relaxed chain by enumerating every nondecreasing chain of the grid.

    Each order is charged the first type it fits, as evaluate_chain does. Chains are enumerated per axis as
    nondecreasing K-sequences and combined as a tensor; order membership is tracked as bitmasks.

    Args:
        marginal_sets (list): at most MAX_DESIGN_ORDERS marginal sets
        bounds (Bounds): grid at most MAX_DESIGN_GRID per side, K at most MAX_DESIGN_K

    Returns:
        tuple: (BinChain, total cost)
    """
    n_orders, k = len(marginal_sets), bounds.K
    if max(bounds.L, bounds.W, bounds.H) > MAX_DESIGN_GRID or k > MAX_DESIGN_K or n_orders > MAX_DESIGN_ORDERS:
        raise TooLarge(f'Brute force accepts grids up to {MAX_DESIGN_GRID}^3, K <= {MAX_DESIGN_K} and '
                       f'N <= {MAX_DESIGN_ORDERS}; got {bounds} with N={n_orders}.')

    masks = np.zeros((bounds.L + 1, bounds.W + 1, bounds.H + 1), dtype=np.int64)
    costs = np.zeros_like(masks)
    for l, w, h in product(range(1, bounds.L + 1), range(1, bounds.W + 1), range(1, bounds.H + 1)):
        box = BoxDims(l, w, h)
        masks[l, w, h] = sum(1 << i for i, ms in enumerate(marginal_sets) if fits(ms, box))
        costs[l, w, h] = surface_cost(box)

    sequences = [np.array(list(combinations_with_replacement(range(1, n + 1), k)), dtype=np.int64)
                 for n in (bounds.L, bounds.W, bounds.H)]
    xs = sequences[0][:, None, None, :]
    ys = sequences[1][None, :, None, :]
    zs = sequences[2][None, None, :, :]
    covered = np.zeros((len(sequences[0]), len(sequences[1]), len(sequences[2])), dtype=np.int64)
    total = np.zeros_like(covered)
    per_type = []
    for i in range(k):
        type_masks = masks[xs[..., i], ys[..., i], zs[..., i]]
        new = _popcounts(type_masks & ~covered, n_orders)
        total += costs[xs[..., i], ys[..., i], zs[..., i]] * new
        covered |= type_masks
        per_type.append(new)

    feasible = covered == (1 << n_orders) - 1
    if not feasible.any():
        raise Infeasible('No chain of the grid packs every order.')
    masked = np.where(feasible, total, np.iinfo(np.int64).max)
    a, b, c = np.unravel_index(int(np.argmin(masked)), masked.shape)
    types = tuple(BoxDims(int(sequences[0][a, i]), int(sequences[1][b, i]), int(sequences[2][c, i]))
                  for i in range(k))
    chain = BinChain(types, int(total[a, b, c]), tuple(int(n[a, b, c]) for n in per_type))
    return chain, chain.total_cost
