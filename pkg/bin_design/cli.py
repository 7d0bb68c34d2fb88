"""
Command line interface.

    bin-design gen --n 1000 --seed 0 --out orders.jsonl
    bin-design solve orders.jsonl --max-dims 50x40x33 --k 8 --solver all --out report.json --plot shares.png
    bin-design curve orders.jsonl --k-min 1 --k-max 10 --out curve.csv --plot curve.png
    bin-design marginals orders.jsonl --out marginals.tsv
    bin-design gls orders.jsonl --k 8 --seed 3 --trace trace.jsonl
"""
import argparse
import logging
import math
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .io.config import RunConfig
from .io.generator import GeneratorProfile, generate
from .io.orders import write_orders
from .io.pipeline import curve_command, format_curve, gls_command, marginals_command, solve_command
from .rendering.plots import plot_cost_curve, plot_type_shares
from .search.marginal_search import SearchBudget
from .utils.box_dims import BoxDims, Bounds
from .utils.errors import BinDesignError, ConfigError, InvalidBounds, InvalidDimensions

logger = logging.getLogger(__name__)


def _budget(text):
    """Parse "Z,COUNT"; "inf" is allowed for either part."""
    try:
        z, count = (float(part) for part in text.split(','))
    except ValueError:
        raise argparse.ArgumentTypeError(f'expected Z,COUNT, got "{text}"')
    return z, count if count == math.inf else int(count)


def build_parser():
    parser = argparse.ArgumentParser(prog='bin-design', description='Design K nested bin types for a set of orders.')
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    parser.add_argument('-v', '--verbose', action='count', default=0, help='-v for INFO, -vv for DEBUG logging')
    commands = parser.add_subparsers(dest='command', required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('orders', help='line-delimited JSON order file')
    common.add_argument('--config', help='JSON run configuration; flags override its values')
    common.add_argument('--max-dims', help='largest bin LxWxH in cm')
    common.add_argument('--k', type=int, help='number of bin types')
    common.add_argument('--budget', type=_budget, help='tree search slack and node budget, e.g. 1.2,200000')
    common.add_argument('--seed', type=int, help='random seed')
    common.add_argument('--workers', type=int, help='worker processes')
    common.add_argument('--scale', type=int, help='coarsen the grid by this factor')
    common.add_argument('--prune-grid', action='store_true', default=None,
                        help='restrict candidate bins to marginal coordinates')
    common.add_argument('--strict', action='store_true', default=None, help='abort on unfittable orders')
    common.add_argument('--count-cache', help='count table file, reused when it matches the grid and written otherwise')
    common.add_argument('--streaming-count', action='store_true', default=None,
                        help='build the count table one height slice at a time')
    common.add_argument('--out', help='output file')

    solve = commands.add_parser('solve', parents=[common], help='run the full pipeline and write a report')
    solve.add_argument('--solver', choices=RunConfig.metadata['solver.modes'])
    solve.add_argument('--plot', help='bar chart of per-type order shares')

    curve = commands.add_parser('curve', parents=[common], help='total cost for a range of K')
    curve.add_argument('--solver', choices=['fast', 'naive'])
    curve.add_argument('--k-min', type=int, default=1)
    curve.add_argument('--k-max', type=int, required=True)
    curve.add_argument('--plot', help='cost against K')

    commands.add_parser('marginals', parents=[common], help='dump marginal bin types per order')

    gls = commands.add_parser('gls', parents=[common], help='greedy local search only')
    gls.add_argument('--step-size', type=int)
    gls.add_argument('--threshold', type=int, help='non-improvement threshold')
    gls.add_argument('--max-iterations', type=int)
    gls.add_argument('--trace', help='write the proposal trace, one JSON record per line')

    gen = commands.add_parser('gen', help='generate synthetic orders')
    gen.add_argument('--n', type=int, required=True, help='number of orders')
    gen.add_argument('--seed', type=int)
    gen.add_argument('--max-items', type=int, help='cap on items per order')
    gen.add_argument('--max-item', help='largest item LxWxH')
    gen.add_argument('--out', required=True)
    return parser


def config_from_args(args):
    """Config file values overridden by explicit flags."""
    config = RunConfig.load(args.config) if args.config else RunConfig()
    bounds = config.bounds
    try:
        if args.max_dims:
            box = BoxDims.parse(args.max_dims)
            # without --k the configured K is capped to what the smaller grid allows
            k = args.k if args.k is not None else min(bounds.K, box.size_sum - 2)
            bounds = Bounds(box.l, box.w, box.h, k)
        elif args.k is not None:
            bounds = Bounds(bounds.L, bounds.W, bounds.H, args.k)
    except (InvalidBounds, InvalidDimensions) as e:
        raise ConfigError(str(e)) from e
    gls = config.gls
    gls_flags = {'step_size': getattr(args, 'step_size', None),
                 'non_improvement_threshold': getattr(args, 'threshold', None),
                 'max_iterations': getattr(args, 'max_iterations', None)}
    gls_flags = {key: value for key, value in gls_flags.items() if value is not None}
    try:
        gls = replace(gls, **gls_flags)
        budget = SearchBudget(*args.budget) if args.budget else None
    except AssertionError as e:
        raise ConfigError(str(e)) from e
    return config.with_overrides(bounds=bounds, budget=budget, gls=gls, orders=args.orders,
                                 solver=getattr(args, 'solver', None), workers=args.workers, seed=args.seed,
                                 scale=args.scale, prune_grid=args.prune_grid, strict=args.strict,
                                 count_cache=args.count_cache, streaming_count=args.streaming_count, out=args.out,
                                 plot=getattr(args, 'plot', None), trace=getattr(args, 'trace', None))


def _write(text, path):
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def run(args):
    if args.command == 'gen':
        profile = GeneratorProfile()
        if args.max_items is not None:
            profile = replace(profile, max_items=args.max_items)
        if args.max_item:
            profile = replace(profile, max_item=BoxDims.parse(args.max_item).as_tuple())
        orders = generate(args.n, profile, args.seed)
        write_orders(orders, args.out)
        logger.info('Wrote %d orders to %s', len(orders), args.out)
        return

    config = config_from_args(args)
    if args.command == 'solve':
        report = solve_command(config, tool_version=__version__)
        if config.out:
            report.save(config.out)
        print(report.summary())
        if config.plot:
            plot_type_shares(report.chain, config.plot)
    elif args.command == 'curve':
        rows = curve_command(config, args.k_min, args.k_max)
        _write(format_curve(rows), config.out)
        if config.plot:
            plot_cost_curve(rows, config.plot)
    elif args.command == 'marginals':
        lines = marginals_command(config)
        _write(''.join(line + '\n' for line in lines), config.out)
    elif args.command == 'gls':
        result = gls_command(config)
        if config.trace:
            _write(''.join(line + '\n' for line in result.trace_lines()), config.trace)
        print(f'GLS cost {result.cost} after {result.iterations} iterations (seed {result.seed})')
        print(' '.join(str(t) for t in result.chain.types))


def main(argv=None):
    args = build_parser().parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format='%(asctime)s %(levelname)s %(name)s: %(message)s')
    try:
        run(args)
    except BinDesignError as e:
        print(f'bin-design: error: {e}', file=sys.stderr)
        return 2
    return 0


if __name__ == '__main__':
    sys.exit(main())
