import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Tuple

from ..utils.box_dims import BoxDims
from ..utils.errors import BudgetExhaustedBeforeFirstLeaf, InfeasibleOrder
from .marginal_search import MarginalSet, SearchBudget, marginal_search

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BatchResult:
    """Marginal sets of every packable order, in order-id order, plus the ids found unpackable."""
    marginal_sets: Tuple[MarginalSet, ...]
    infeasible: Tuple[str, ...]
    retried: Tuple[str, ...]


def _search_one(args):
    order, bounds, budget, retries = args
    retried = False
    for attempt in range(retries + 1):
        try:
            return marginal_search(order, bounds, budget), None, retried
        except BudgetExhaustedBeforeFirstLeaf:
            if attempt == retries:
                raise
            budget = budget.doubled()
            retried = True
        except InfeasibleOrder:
            return None, order.id, retried


def search_marginal_sets(orders, bounds, budget=None, workers=1, retries=3):
    """
    Run marginal_search over every order, in parallel when workers > 1.

    Orders whose search hits the budget before a first leaf are retried with a doubled budget up to
    retries times; orders with no placement within bounds are reported, not raised.

    Args:
        orders (list): Order objects
        bounds (Bounds): largest permissible bin
        budget (SearchBudget): per-order budget
        workers (int): number of worker processes
        retries (int): budget doublings allowed per order

    Returns:
        BatchResult: results merged in order-id order
    """
    budget = SearchBudget() if budget is None else budget
    jobs = [(order, bounds, budget, retries) for order in sorted(orders, key=lambda o: o.id)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(_search_one, jobs, chunksize=max(1, len(jobs) // (workers * 8))))
    else:
        results = [_search_one(job) for job in jobs]

    marginal_sets, infeasible, retried = [], [], []
    for (order, *_), (marginal_set, bad_id, was_retried) in zip(jobs, results):
        if was_retried:
            retried.append(order.id)
        if bad_id is not None:
            infeasible.append(bad_id)
        else:
            marginal_sets.append(marginal_set)
    if retried:
        logger.warning('%d orders needed a larger search budget', len(retried))
    return BatchResult(tuple(marginal_sets), tuple(infeasible), tuple(retried))


def format_marginal_line(marginal_set):
    """Debug dump line: order id, a tab, then "l,w,h" types joined by ";"."""
    return f'{marginal_set.order_id}\t' + ';'.join(str(t) for t in marginal_set.types)


def parse_marginal_line(line):
    order_id, _, body = line.rstrip('\n').partition('\t')
    types = tuple(BoxDims.parse(part) for part in body.split(';') if part)
    return MarginalSet(order_id, types)


def format_marginal_dump(marginal_sets) -> List[str]:
    return [format_marginal_line(ms) for ms in marginal_sets]
