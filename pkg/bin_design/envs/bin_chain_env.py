import gym
from gym import spaces
import numpy as np

from ..baseline.evaluator import ChainEvaluator
from ..baseline.initial import quantile_init
from ..spaces.chain_space import MonotoneChainSpace
from ..utils.bin_chain import BinChain, validate_chain
from ..utils.box_dims import BoxDims
from ..utils.errors import InfeasibleInitial, InvalidChain


class BinChainEnv(gym.Env):
    """
    Description:
        Greedy local search over K nested bin types as a single-agent environment. Each step proposes to
        enlarge or shrink one dimension of one bin type by the step size. Proposals that would break the
        ordering of the chain are skipped; the others are evaluated by first-fit packing of every order and
        accepted only if they strictly lower the total cost.

    Observation:
        Type: MonotoneChainSpace(bounds) - int64 array of shape (K, 3), the current chain.

    Actions:
        Type: MultiDiscrete([3, K, 2])
            action[0] - dimension to change (0 length, 1 width, 2 height)
            action[1] - index of the bin type
            action[2] - direction (0 shrink, 1 enlarge)

    Reward:
        Cost decrease of an accepted proposal, 0 otherwise.

    Starting State:
        The chain passed as "initial_chain" (to the constructor or in reset options), otherwise the quantile
        initialization.

    Episode Termination:
        Terminated when non_improvement_threshold evaluated proposals in total failed to improve, or when no
        proposal passes the ordering guard. Truncated after max_iterations steps.

    Render:
        "ansi" - string representation of the current chain and search counters
    """

    metadata = {'render_modes': ['ansi'],
                'render_fps': 4,
                'initial_chain.modes': ['quantile', 'explicit']}

    def __init__(self, marginal_sets, bounds, step_size=1, non_improvement_threshold=1000, max_iterations=None,
                 initial_chain=None, render_mode='ansi'):
        """
        Initialize bin chain environment.

        Args:
            marginal_sets (list): MarginalSet per order
            bounds (Bounds): grid bounds and number of types K
            step_size (int): change of one dimension per proposal, in cm
            non_improvement_threshold (int): evaluated proposals without improvement before termination
            max_iterations (int): step cap, None for no cap
            initial_chain (BinChain or sequence of BoxDims): explicit starting chain
            render_mode (str): One of "ansi"
        """
        assert step_size >= 1, 'Step size must be at least 1.'
        assert non_improvement_threshold >= 0, 'Non-improvement threshold must be nonnegative.'
        if render_mode not in self.metadata['render_modes']:
            raise Exception(f'Render mode "{render_mode}" is not supported. Available render modes are: '
                            f'{self.metadata["render_modes"]}')
        self.marginal_sets = marginal_sets
        self.bounds = bounds
        self.step_size = step_size
        self.non_improvement_threshold = non_improvement_threshold
        self.max_iterations = max_iterations
        self.initial_chain = initial_chain
        self.render_mode = render_mode

        self.evaluator = ChainEvaluator(marginal_sets)
        self.limits = np.array([bounds.L, bounds.W, bounds.H], dtype=np.int64)
        self.action_space = spaces.MultiDiscrete([3, bounds.K, 2])
        self.observation_space = MonotoneChainSpace(bounds)

        self.chain = None
        self.cost = None
        self.iteration = 0
        self.non_improvement_counter = 0

    def reset(self, *, seed=None, options=None):
        """
        Resets the state of the environment and returns an initial observation.

        Args:
            seed (int): seed of the environment's random generator
            options (dict): may hold "initial_chain" to override the constructor's starting chain

        Returns:
            tuple: the initial chain and an info dict with its cost
        """
        super().reset(seed=seed)
        initial_chain = (options or {}).get('initial_chain', self.initial_chain)
        if initial_chain is None:
            initial_chain = quantile_init(self.marginal_sets, self.bounds)
        types = initial_chain.types if isinstance(initial_chain, BinChain) else tuple(initial_chain)
        types = tuple(t if isinstance(t, BoxDims) else BoxDims(*t) for t in types)
        validation = validate_chain(types, self.bounds)
        if not validation:
            raise InvalidChain(f'Initial chain is invalid: {validation.violation.message}')

        self.chain = np.array([t.as_tuple() for t in types], dtype=np.int64)
        evaluation = self.evaluator.evaluate(self.chain)
        if not evaluation.feasible:
            raise InfeasibleInitial(f'Initial chain leaves {self.evaluator.n_orders - sum(evaluation.counts)} '
                                    f'orders unpacked.')
        self.cost = evaluation.cost
        self.iteration = 0
        self.non_improvement_counter = 0
        return self.chain.copy(), {'cost': self.cost}

    def step(self, action):
        """
        Run one proposal of the local search.

        Args:
            action (array-like): (dimension, type index, direction)

        Returns:
            observation (np.ndarray): current chain
            reward (float): cost decrease of the step
            terminated (bool): search has converged
            truncated (bool): iteration cap reached
            info (dict): iteration, proposal, accepted and guarded flags, proposal cost (None if guarded),
                current cost
        """
        assert self.chain is not None, 'Call reset before step.'
        assert self.action_space.contains(np.asarray(action, dtype=self.action_space.dtype)), \
            f'Invalid action {action}.'
        dim, k, direction = (int(a) for a in action)
        delta = self.step_size if direction == 1 else -self.step_size
        self.iteration += 1

        value = self.chain[k, dim] + delta
        reward = 0.0
        accepted = False
        proposal_cost = None
        guarded = not self._in_guard(dim, k, value)
        if not guarded:
            proposal = self.chain.copy()
            proposal[k, dim] = value
            proposal_cost = self.evaluator.evaluate(proposal).cost
            if proposal_cost < self.cost:
                reward = float(self.cost - proposal_cost)
                self.chain, self.cost = proposal, proposal_cost
                accepted = True
            else:
                self.non_improvement_counter += 1

        terminated = self.converged
        truncated = (not terminated and self.max_iterations is not None and
                     self.iteration >= self.max_iterations)
        info = {'iteration': self.iteration,
                'proposal': (dim, k, delta),
                'accepted': accepted,
                'guarded': guarded,
                'proposal_cost': proposal_cost,
                'cost': self.cost}
        return self.chain.copy(), reward, terminated, truncated, info

    @property
    def converged(self):
        return (self.non_improvement_counter >= self.non_improvement_threshold or
                not any(self._in_guard(dim, k, self.chain[k, dim] + sign * self.step_size)
                        for dim in range(3) for k in range(self.bounds.K) for sign in (-1, 1)))

    def _in_guard(self, dim, k, value):
        """Ordering guard: the new value may not pass its neighbours; 1 and the bound close the chain."""
        lower = self.chain[k - 1, dim] if k > 0 else 1
        upper = self.chain[k + 1, dim] if k < self.bounds.K - 1 else self.limits[dim]
        return lower <= value <= upper

    def current_chain(self):
        """BinChain of the current state with first-fit counts."""
        return self.evaluator.to_chain(self.chain)

    def render(self):
        """
        Renders the environment.

        Returns:
            str: current chain, its cost and the search counters
        """
        if self.render_mode == 'ansi':
            types = ' '.join(f'({l},{w},{h})' for l, w, h in self.chain.tolist()) if self.chain is not None else '-'
            render_info = f'*************************\n' \
                          f'Iteration: {self.iteration}\n' \
                          f'Chain: {types}\n' \
                          f'Cost: {self.cost}\n' \
                          f'Non-improvement counter: {self.non_improvement_counter}/' \
                          f'{self.non_improvement_threshold}'
            return render_info

    def close(self):
        """Method performs necessary cleanup on exit."""
        self.chain = None
