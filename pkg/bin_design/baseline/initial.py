import numpy as np

from .evaluator import ChainEvaluator


def quantile_init(marginal_sets, bounds, k=None):
    """
    Starting chain for the local search built from quantiles of the orders' cheapest marginal types.

    Type k takes, per dimension, the k/K empirical quantile of the cheapest marginal types, clamped to the
    bounds and made nondecreasing. The last type is raised to the componentwise maximum of those cheapest
    types so that every order packs into it.

    Args:
        marginal_sets (list): nonempty list of MarginalSet
        bounds (Bounds): grid bounds
        k (int): number of types, default bounds.K

    Returns:
        BinChain: feasible chain with first-fit counts
    """
    assert marginal_sets, 'Quantile initialization needs at least one order.'
    k = bounds.K if k is None else k
    cheapest = np.array([ms.cheapest.as_tuple() for ms in marginal_sets], dtype=np.int64)
    levels = np.arange(1, k + 1) / k
    types = np.quantile(cheapest, levels, axis=0, method='inverted_cdf').astype(np.int64)
    types = np.clip(types, 1, [bounds.L, bounds.W, bounds.H])
    types = np.maximum.accumulate(types, axis=0)
    types[-1] = np.maximum(types[-1], cheapest.max(axis=0))
    return ChainEvaluator(marginal_sets).to_chain(types)
