import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from ..utils.bin_chain import BinChain

SCHEMA_VERSION = 1


def chain_to_dict(chain):
    """Types with their order counts, shares and collapsed flags, plus the totals."""
    return {'types': [{'l': t.l, 'w': t.w, 'h': t.h, 'count': c, 'percent': round(p, 4), 'collapsed': dup}
                      for t, c, p, dup in zip(chain.types, chain.per_type_counts, chain.percentages(),
                                              chain.collapsed)],
            'total_cost': chain.total_cost,
            'cost_m2': chain.cost_m2}


@dataclass
class Report:
    """
    Result of a solve run: the chosen chain, per-type shares, phase timings and the echoed config.

    gls_cost and gap_percent are set when the local search ran next to the DP; refined_chain holds the
    strictly increasing variant of the chain when one could be built.
    """
    solver: str
    chain: BinChain
    n_orders: int
    timings: Dict[str, float]
    config: Dict[str, Any]
    excluded: Tuple[str, ...] = ()
    stats: Dict[str, Any] = field(default_factory=dict)
    refined_chain: Optional[BinChain] = None
    gls_cost: Optional[int] = None
    tool_version: str = ''

    @property
    def total_cost(self):
        return self.chain.total_cost

    @property
    def gap_percent(self):
        """How much more the local search costs than the chain, in percent of the chain cost."""
        if self.gls_cost is None or self.solver == 'gls' or self.total_cost == 0:
            return None
        return 100.0 * (self.gls_cost - self.total_cost) / self.total_cost

    def to_dict(self):
        return {'schema_version': SCHEMA_VERSION,
                'tool_version': self.tool_version,
                'solver': self.solver,
                'n_orders': self.n_orders,
                'excluded': list(self.excluded),
                'chain': chain_to_dict(self.chain),
                'refined_chain': chain_to_dict(self.refined_chain) if self.refined_chain else None,
                'gls_cost': self.gls_cost,
                'gap_percent': self.gap_percent,
                'timings': self.timings,
                'stats': self.stats,
                'config': self.config}

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)

    def save(self, path):
        Path(path).write_text(self.to_json() + '\n')

    def summary(self):
        """Human readable table of the chain."""
        lines = [f'Solver: {self.solver}   orders: {self.n_orders}   excluded: {len(self.excluded)}',
                 f'{"#":>3} {"l":>5} {"w":>5} {"h":>5} {"orders":>8} {"share":>8}']
        for i, (t, c, p, dup) in enumerate(zip(self.chain.types, self.chain.per_type_counts,
                                               self.chain.percentages(), self.chain.collapsed), start=1):
            lines.append(f'{i:>3} {t.l:>5} {t.w:>5} {t.h:>5} {c:>8} {p:>7.2f}%' + ('  (repeat)' if dup else ''))
        lines.append(f'Total cost: {self.total_cost} cm2 ({self.chain.cost_m2:.2f} m2)')
        if self.gap_percent is not None:
            lines.append(f'GLS cost: {self.gls_cost} cm2 ({self.gap_percent:+.2f}%)')
        lines.append('Timings: ' + ', '.join(f'{k} {v:.2f}s' for k, v in self.timings.items()))
        return '\n'.join(lines)
