import json
import logging
import time
from dataclasses import asdict, dataclass, field
from typing import Any, List, Optional

from gym.utils import seeding

from ..envs.bin_chain_env import BinChainEnv

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GlsParams:
    """
    Greedy local search settings.

    initial_chain of None starts from the quantile initialization; seed of None draws a fresh seed, which is
    recorded in the result for replay.
    """
    step_size: int = 1
    non_improvement_threshold: int = 1000
    seed: Optional[int] = None
    initial_chain: Any = None
    max_iterations: Optional[int] = None

    def __post_init__(self):
        assert self.step_size >= 1, f'step_size must be >= 1, got {self.step_size}.'
        assert self.non_improvement_threshold >= 0, \
            f'non_improvement_threshold must be >= 0, got {self.non_improvement_threshold}.'
        assert self.max_iterations is None or self.max_iterations >= 1, 'max_iterations must be positive.'


@dataclass(frozen=True)
class GlsStep:
    """One trace record: the proposal, whether it was accepted, and the cost it was evaluated at."""
    iteration: int
    dimension: int
    type_index: int
    delta: int
    accepted: bool
    guarded: bool
    cost: Optional[int]

    def to_json(self):
        return json.dumps(asdict(self))


@dataclass
class GlsResult:
    chain: Any
    cost: int
    seed: int
    iterations: int
    truncated: bool
    seconds: float
    trace: List[GlsStep] = field(default_factory=list)

    @property
    def accepted_costs(self):
        return [step.cost for step in self.trace if step.accepted]

    def trace_lines(self):
        return [step.to_json() for step in self.trace]


def gls_solve(marginal_sets, bounds, params=None):
    """
    Greedy local search: a random agent driving BinChainEnv until it converges.

    Each step picks a random dimension, bin type and direction. The loop stops once
    non_improvement_threshold evaluated proposals have failed to improve (0 returns the initial chain), or
    at max_iterations.

    Args:
        marginal_sets (list): MarginalSet per order
        bounds (Bounds): grid bounds and number of types K
        params (GlsParams): search settings, default GlsParams()

    Returns:
        GlsResult: best chain, its cost, the seed used and the proposal trace
    """
    params = GlsParams() if params is None else params
    _, seed = seeding.np_random(params.seed)
    env = BinChainEnv(marginal_sets, bounds, step_size=params.step_size,
                      non_improvement_threshold=params.non_improvement_threshold,
                      max_iterations=params.max_iterations, initial_chain=params.initial_chain)
    start = time.perf_counter()
    _, info = env.reset(seed=seed)
    env.action_space.seed(seed)
    logger.info('GLS started from cost %d (seed %d)', info['cost'], seed)

    trace = []
    terminated, truncated = env.converged, False
    while not (terminated or truncated):
        _, _, terminated, truncated, info = env.step(env.action_space.sample())
        dimension, type_index, delta = info['proposal']
        trace.append(GlsStep(info['iteration'], dimension, type_index, delta, info['accepted'], info['guarded'],
                             info['proposal_cost']))

    result = GlsResult(env.current_chain(), env.cost, seed, env.iteration, truncated,
                       time.perf_counter() - start, trace)
    env.close()
    if truncated:
        logger.warning('GLS stopped at the iteration cap %d before converging', params.max_iterations)
    logger.info('GLS finished at cost %d after %d iterations in %.2fs', result.cost, result.iterations,
                result.seconds)
    return result
