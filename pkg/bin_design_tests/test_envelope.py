from fractions import Fraction
from math import inf

import pytest

from bin_design.dp import build_hull, lower_envelope, query_envelope, sweep_hull


def test_two_lines_cross_at_one():
    envelope = lower_envelope([(-1, 2), (1, 0)])
    assert [(s.slope, s.intercept) for s in envelope] == [(1, 0), (-1, 2)]
    assert envelope[0].x_lower == -inf and envelope[0].x_upper == 1
    assert envelope[1].x_lower == 1 and envelope[1].x_upper == inf


def test_single_line_covers_everything():
    envelope = lower_envelope([(3, -4)])
    assert len(envelope) == 1
    assert envelope[0].x_lower == -inf and envelope[0].x_upper == inf
    assert query_envelope(envelope, [-2, 5])[1].value == 11


def test_three_lines():
    envelope = lower_envelope([(-1, 10), (0, 0), (1, 10)])
    assert [(s.slope, s.intercept, s.x_lower, s.x_upper) for s in envelope] == [
        (1, 10, -inf, -10), (0, 0, -10, 10), (-1, 10, 10, inf)]


def test_empty_input():
    assert lower_envelope([]) == []
    assert query_envelope([], []) == []
    assert query_envelope(lower_envelope([(1, 0)]), []) == []


def test_dominated_line_is_dropped():
    envelope = lower_envelope([(0, 5), (0, 1), (1, 100), (2, 0)])
    assert [(s.slope, s.intercept) for s in envelope] == [(2, 0), (0, 1)]
    assert envelope[0].x_upper == Fraction(1, 2)


@pytest.mark.parametrize('method', ['sweep', 'binary'])
def test_queries_prefer_lower_slope_on_ties(method):
    hits = query_envelope(lower_envelope([(-1, 2, 'b'), (1, 0, 'a')]), [0, 1, 2], method)
    assert [h.value for h in hits] == [0, 1, 0]
    assert [h.segment.ref for h in hits] == ['a', 'b', 'b']


def test_unknown_query_method():
    with pytest.raises(ValueError):
        query_envelope(lower_envelope([(1, 0)]), [0], method='ternary')


def test_envelope_matches_direct_minimum(rng):
    for _ in range(1000):
        n_lines = int(rng.integers(1, 12))
        lines = sorted((int(a), int(b), i) for i, (a, b) in
                       enumerate(zip(rng.integers(-20, 21, n_lines), rng.integers(-100, 101, n_lines))))
        lines = [(a, b, i) for i, (a, b, _) in enumerate(lines)]
        xs = sorted(int(x) for x in rng.integers(-30, 31, int(rng.integers(0, 15))))
        expected = [min(a * x + b for a, b, _ in lines) for x in xs]
        envelope = lower_envelope(lines)
        for method in ('sweep', 'binary'):
            hits = query_envelope(envelope, xs, method)
            assert [h.value for h in hits] == expected
            for x, hit in zip(xs, hits):
                a, b, _ = lines[hit.segment.ref]
                assert a * x + b == hit.value


def test_sweep_hull_matches_direct_minimum(rng):
    for _ in range(200):
        n_lines = int(rng.integers(1, 10))
        lines = sorted(((int(a), int(b), i) for i, (a, b) in
                        enumerate(zip(rng.integers(-10, 11, n_lines), rng.integers(-50, 51, n_lines)))),
                       key=lambda line: -line[0])
        xs = sorted(int(x) for x in rng.integers(0, 40, 10))
        hull = build_hull(lines)
        assert all(p[0] > q[0] for p, q in zip(hull, hull[1:]))
        for x, (value, line) in zip(xs, sweep_hull(hull, xs)):
            assert value == min(a * x + b for a, b, _ in lines)
            assert line[0] * x + line[1] == value
