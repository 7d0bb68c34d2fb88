import json
import logging

import pytest

from bin_design.baseline import GlsParams
from bin_design.cli import main
from bin_design.counting import CountTable
from bin_design.io import RunConfig, Report, curve_command, format_curve, gls_command, marginals_command, \
    rescale_chain, solve_command
from bin_design.rendering import plot_cost_curve, plot_type_shares
from bin_design.utils import BinChain, BoxDims, Bounds
from bin_design.utils.errors import ConfigError, PipelineError

TOY_ORDERS = '{"id": "a", "items": [[1, 1, 1]]}\n{"id": "b", "items": [[2, 2, 2]]}\n'


@pytest.fixture
def toy_file(tmp_path):
    path = tmp_path / 'orders.jsonl'
    path.write_text(TOY_ORDERS)
    return path


@pytest.fixture
def toy_config(toy_file):
    return RunConfig(bounds=Bounds(3, 3, 3, 2), orders=str(toy_file), workers=1, seed=0,
                     gls=GlsParams(non_improvement_threshold=50))


@pytest.mark.parametrize('solver', ['fast', 'naive'])
def test_solve_toy(toy_config, solver):
    report = solve_command(toy_config.with_overrides(solver=solver))
    assert report.total_cost == 30
    assert report.chain.types == (BoxDims(1, 1, 1), BoxDims(2, 2, 2))
    assert report.refined_chain is None and report.gap_percent is None
    assert set(report.timings) == {'ingest', 'search', 'count', 'solve'}


def test_solve_with_repeated_type_reports_refined_chain(toy_config):
    report = solve_command(toy_config.with_overrides(bounds=Bounds(3, 3, 3, 3)))
    assert report.total_cost == 30
    assert any(report.chain.collapsed)
    assert report.refined_chain is not None
    assert not any(report.refined_chain.collapsed)
    assert report.refined_chain.total_cost <= 30


def test_solve_all_reports_gap(toy_config):
    report = solve_command(toy_config.with_overrides(solver='all'))
    assert report.total_cost == 30
    assert report.gls_cost >= 30
    assert report.gap_percent >= 0
    assert 'gls' in report.stats and report.stats['gls']['seed'] == 0


def test_prune_grid_keeps_cost(toy_config):
    assert solve_command(toy_config.with_overrides(prune_grid=True)).total_cost == 30


def test_report_schema(toy_config, tmp_path):
    report = solve_command(toy_config, tool_version='0.0.1')
    report.save(tmp_path / 'report.json')
    data = json.loads((tmp_path / 'report.json').read_text())
    assert data['schema_version'] == 1
    assert data['tool_version'] == '0.0.1'
    assert data['chain']['total_cost'] == 30
    assert [t['count'] for t in data['chain']['types']] == [1, 1]
    assert [t['percent'] for t in data['chain']['types']] == [50.0, 50.0]
    assert data['config']['bounds'] == {'L': 3, 'W': 3, 'H': 3, 'K': 2}
    assert 'Total cost: 30 cm2' in report.summary()


def test_curve(toy_config):
    rows = curve_command(toy_config, 1, 3)
    assert [chain.total_cost for _, chain in rows] == [48, 30, 30]
    assert format_curve(rows) == 'K,total_cost\n1,48\n2,30\n3,30\n'
    with pytest.raises(ConfigError):
        curve_command(toy_config, 3, 2)


def test_curve_is_nonincreasing(tmp_path):
    path = tmp_path / 'orders.jsonl'
    path.write_text(''.join(json.dumps({'id': str(i), 'items': items}) + '\n' for i, items in enumerate(
        [[[3, 2, 1]], [[1, 1, 1], [2, 1, 1]], [[4, 4, 2]], [[2, 2, 2], [1, 1, 1]], [[5, 1, 1]], [[3, 3, 3]]])))
    config = RunConfig(bounds=Bounds(6, 6, 6, 1), orders=str(path), workers=1)
    costs = [chain.total_cost for _, chain in curve_command(config, 1, 6)]
    assert all(a >= b for a, b in zip(costs, costs[1:]))


def test_marginals_dump(toy_config, tmp_path):
    assert marginals_command(toy_config) == ['a\t1,1,1', 'b\t2,2,2']
    empty = tmp_path / 'empty.jsonl'
    empty.write_text('')
    assert marginals_command(toy_config.with_overrides(orders=str(empty))) == []


def test_gls_command(toy_config):
    result = gls_command(toy_config)
    assert result.cost == result.chain.total_cost
    assert result.cost >= 30


def test_bad_order_file_is_tagged_with_phase(tmp_path, toy_config):
    path = tmp_path / 'bad.jsonl'
    path.write_text('{"id": "a", "items": [[0, 1, 1]]}\n')
    with pytest.raises(PipelineError) as e:
        solve_command(toy_config.with_overrides(orders=str(path)))
    assert e.value.phase == 'ingest'


def test_rescale_chain():
    chain = BinChain((BoxDims(1, 1, 1), BoxDims(2, 1, 1)), 16, (1, 1))
    scaled = rescale_chain(chain, 10)
    assert scaled.types == (BoxDims(10, 10, 10), BoxDims(20, 10, 10))
    assert scaled.total_cost == 600 + 1000
    assert rescale_chain(chain, 1) is chain


def test_scaled_solve_reports_centimeters(tmp_path):
    path = tmp_path / 'orders.jsonl'
    path.write_text('{"id": "a", "items": [[10, 10, 10]]}\n{"id": "b", "items": [[20, 20, 20]]}\n')
    config = RunConfig(bounds=Bounds(30, 30, 30, 2), orders=str(path), workers=1, scale=10)
    report = solve_command(config)
    assert report.chain.types == (BoxDims(10, 10, 10), BoxDims(20, 20, 20))
    assert report.total_cost == 600 + 2400


def test_plots(tmp_path):
    chain = BinChain((BoxDims(1, 1, 1), BoxDims(1, 1, 1), BoxDims(2, 2, 2)), 30, (1, 0, 1))
    plot_type_shares(chain, tmp_path / 'shares.png')
    plot_cost_curve([(1, BinChain((BoxDims(2, 2, 2),), 48, (2,))), (3, chain)], tmp_path / 'curve.png')
    assert (tmp_path / 'shares.png').stat().st_size > 0
    assert (tmp_path / 'curve.png').stat().st_size > 0


def test_cli_gen_then_solve(tmp_path, capsys):
    orders = tmp_path / 'orders.jsonl'
    assert main(['gen', '--n', '5', '--seed', '1', '--max-items', '2', '--max-item', '3x3x3',
                 '--out', str(orders)]) == 0
    assert len(orders.read_text().splitlines()) == 5
    report = tmp_path / 'report.json'
    assert main(['solve', str(orders), '--max-dims', '6x6x6', '--k', '2', '--workers', '1', '--seed', '0',
                 '--out', str(report), '--plot', str(tmp_path / 'shares.png')]) == 0
    assert json.loads(report.read_text())['n_orders'] == 5
    assert 'Total cost' in capsys.readouterr().out


def test_cli_curve_and_marginals(toy_file, tmp_path):
    curve = tmp_path / 'curve.csv'
    assert main(['curve', str(toy_file), '--max-dims', '3x3x3', '--k-max', '3', '--workers', '1',
                 '--out', str(curve), '--plot', str(tmp_path / 'curve.png')]) == 0
    assert curve.read_text() == 'K,total_cost\n1,48\n2,30\n3,30\n'
    dump = tmp_path / 'marginals.tsv'
    assert main(['marginals', str(toy_file), '--max-dims', '3x3x3', '--k', '1', '--workers', '1',
                 '--out', str(dump)]) == 0
    assert dump.read_text() == 'a\t1,1,1\nb\t2,2,2\n'


def test_cli_gls_trace(toy_file, tmp_path, capsys):
    trace = tmp_path / 'trace.jsonl'
    assert main(['gls', str(toy_file), '--max-dims', '3x3x3', '--k', '2', '--workers', '1', '--seed', '3',
                 '--threshold', '20', '--trace', str(trace)]) == 0
    records = [json.loads(line) for line in trace.read_text().splitlines()]
    assert records and {'iteration', 'accepted', 'cost'} <= set(records[0])
    assert 'GLS cost' in capsys.readouterr().out


def test_cli_errors_exit_with_two(toy_file, tmp_path, capsys):
    assert main(['solve', str(toy_file), '--max-dims', '3x3x3', '--k', '0']) == 2
    config = tmp_path / 'run.json'
    config.write_text('{"solver": "magic"}')
    assert main(['solve', str(toy_file), '--config', str(config)]) == 2
    assert main(['solve', str(tmp_path / 'missing.jsonl'), '--max-dims', '3x3x3', '--k', '2', '--workers', '1']) != 0
    assert 'bin-design: error' in capsys.readouterr().err


def test_report_without_gls_has_no_gap():
    chain = BinChain((BoxDims(2, 2, 2),), 48, (2,))
    assert Report('fast', chain, 2, {}, {}).gap_percent is None
    assert Report('all', chain, 2, {}, {}, gls_cost=60).gap_percent == 25.0


def test_report_counts_read_and_excluded_orders(tmp_path):
    path = tmp_path / 'orders.jsonl'
    path.write_text(TOY_ORDERS + '{"id": "c", "items": [[9, 9, 9]]}\n')
    config = RunConfig(bounds=Bounds(3, 3, 3, 2), orders=str(path), workers=1)
    report = solve_command(config)
    assert report.stats['ingest'] == {'read': 3, 'excluded': 1}
    assert report.excluded == ('c',)
    assert report.total_cost == 30


def test_count_cache_is_written_then_reused(toy_config, tmp_path, caplog):
    cache = tmp_path / 'counts.bin'
    config = toy_config.with_overrides(count_cache=str(cache))
    assert solve_command(config).total_cost == 30
    assert CountTable.load(cache).shape == (4, 4, 4)
    with caplog.at_level(logging.INFO, logger='bin_design.io.pipeline'):
        assert solve_command(config).total_cost == 30
    assert 'Count table loaded from' in caplog.text


def test_count_cache_for_another_grid_is_rebuilt(toy_config, tmp_path, caplog):
    cache = tmp_path / 'counts.bin'
    solve_command(toy_config.with_overrides(count_cache=str(cache), bounds=Bounds(4, 4, 4, 2)))
    assert CountTable.load(cache).shape == (5, 5, 5)
    with caplog.at_level(logging.WARNING, logger='bin_design.io.pipeline'):
        assert solve_command(toy_config.with_overrides(count_cache=str(cache))).total_cost == 30
    assert 'rebuilding' in caplog.text
    assert CountTable.load(cache).shape == (4, 4, 4)


def test_streaming_count_gives_same_chain(toy_config):
    report = solve_command(toy_config.with_overrides(streaming_count=True))
    assert report.total_cost == 30
    assert report.config['streaming_count'] is True


def test_cli_count_cache(toy_file, tmp_path):
    cache = tmp_path / 'counts.bin'
    args = ['solve', str(toy_file), '--max-dims', '3x3x3', '--k', '2', '--workers', '1', '--count-cache', str(cache)]
    assert main(args) == 0
    assert cache.exists()
    assert main(args + ['--streaming-count']) == 0
