import json
import math
import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional

from ..baseline.gls import GlsParams
from ..search.marginal_search import SearchBudget
from ..utils.box_dims import Bounds
from ..utils.errors import ConfigError, InvalidBounds


def _finite_or_none(value):
    return None if value == math.inf else value


def _none_to_inf(value):
    return math.inf if value is None else value


@dataclass(frozen=True)
class RunConfig:
    """
    Everything a pipeline run needs.

    scale coarsens the grid by an integer factor (orders round up, bounds round down) and scales the chain
    back; prune_grid restricts candidate bins to marginal coordinates. count_cache names a count table file that
    is read when it matches the working grid and written otherwise; streaming_count builds F one height slice
    at a time. Infinite budget values are stored as null in JSON.
    """

    metadata = {'solver.modes': ['fast', 'naive', 'gls', 'all']}

    bounds: Bounds = field(default_factory=lambda: Bounds(50, 40, 33, 8))
    budget: SearchBudget = field(default_factory=SearchBudget)
    gls: GlsParams = field(default_factory=GlsParams)
    solver: str = 'fast'
    workers: int = field(default_factory=lambda: os.cpu_count() or 1)
    seed: Optional[int] = None
    scale: int = 1
    prune_grid: bool = False
    strict: bool = False
    retries: int = 3
    brute_force_limit: int = 4096
    count_cache: Optional[str] = None
    streaming_count: bool = False
    orders: Optional[str] = None
    out: Optional[str] = None
    plot: Optional[str] = None
    trace: Optional[str] = None

    def validate(self):
        """Raise ConfigError for values outside their documented ranges; return self otherwise."""
        if self.solver not in self.metadata['solver.modes']:
            raise ConfigError(f'Solver "{self.solver}" is not supported. Available solvers are: '
                              f'{self.metadata["solver.modes"]}')
        checks = (('workers', self.workers, 1), ('scale', self.scale, 1), ('retries', self.retries, 0),
                  ('brute_force_limit', self.brute_force_limit, 0))
        for name, value, minimum in checks:
            if not isinstance(value, int) or value < minimum:
                raise ConfigError(f'{name} must be an integer >= {minimum}, got {value!r}.')
        if self.seed is not None and (not isinstance(self.seed, int) or self.seed < 0):
            raise ConfigError(f'seed must be a nonnegative integer, got {self.seed!r}.')
        return self

    def with_overrides(self, **changes):
        """Copy with the given fields replaced; None values are ignored."""
        changes = {key: value for key, value in changes.items() if value is not None}
        try:
            return replace(self, **changes).validate()
        except (AssertionError, InvalidBounds, TypeError) as e:
            raise ConfigError(str(e)) from e

    def to_dict(self):
        return {'bounds': {'L': self.bounds.L, 'W': self.bounds.W, 'H': self.bounds.H, 'K': self.bounds.K},
                'budget': {'z_factor': _finite_or_none(self.budget.z_factor),
                           'max_search_count': _finite_or_none(self.budget.max_search_count)},
                'gls': {'step_size': self.gls.step_size,
                        'non_improvement_threshold': self.gls.non_improvement_threshold,
                        'seed': self.gls.seed,
                        'max_iterations': self.gls.max_iterations},
                'solver': self.solver,
                'workers': self.workers,
                'seed': self.seed,
                'scale': self.scale,
                'prune_grid': self.prune_grid,
                'strict': self.strict,
                'retries': self.retries,
                'brute_force_limit': self.brute_force_limit,
                'count_cache': self.count_cache,
                'streaming_count': self.streaming_count,
                'orders': self.orders,
                'out': self.out,
                'plot': self.plot,
                'trace': self.trace}

    @classmethod
    def from_dict(cls, data):
        """
        Build and validate a config; missing keys keep their defaults.

        Args:
            data (dict): as produced by to_dict

        Returns:
            RunConfig: validated config
        """
        data = dict(data)
        unknown = set(data) - set(cls().to_dict())
        if unknown:
            raise ConfigError(f'Unknown config keys: {sorted(unknown)}')
        try:
            if 'bounds' in data:
                data['bounds'] = Bounds(**data['bounds'])
            if 'budget' in data:
                budget = {key: _none_to_inf(value) for key, value in data['budget'].items()}
                data['budget'] = SearchBudget(**budget)
            if 'gls' in data:
                data['gls'] = GlsParams(**data['gls'])
            return cls(**data).validate()
        except (AssertionError, InvalidBounds, TypeError) as e:
            raise ConfigError(f'Invalid config: {e}') from e

    @classmethod
    def load(cls, path):
        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as e:
            raise ConfigError(f'{path}: invalid JSON ({e.msg})') from e
        return cls.from_dict(data)

    def save(self, path):
        Path(path).write_text(json.dumps(self.to_dict(), indent=2) + '\n')
