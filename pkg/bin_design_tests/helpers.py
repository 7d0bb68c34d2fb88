from bin_design.counting import build_count_table
from bin_design.search import MarginalSet, pareto_filter
from bin_design.utils import BoxDims, Bounds


def random_box(rng, bounds):
    return BoxDims(int(rng.integers(1, bounds.L + 1)), int(rng.integers(1, bounds.W + 1)),
                   int(rng.integers(1, bounds.H + 1)))


def random_antichain(rng, bounds, max_types=3):
    """Pareto-minimal random marginal set inside bounds."""
    n = int(rng.integers(1, max_types + 1))
    return tuple(pareto_filter(random_box(rng, bounds) for _ in range(n)))


def random_marginal_sets(rng, bounds, n_orders, max_types=3):
    return [MarginalSet(f'{i:03d}', random_antichain(rng, bounds, max_types)) for i in range(n_orders)]


def random_count_table(rng, extents, n_orders, max_types=3):
    """Monotone F of random marginal sets on a grid of extents (L, W, H)."""
    bounds = Bounds(*extents, 1)
    return build_count_table(random_marginal_sets(rng, bounds, n_orders, max_types), bounds)
