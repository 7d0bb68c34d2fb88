from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, NamedTuple, Union

NEG_INF = float('-inf')
POS_INF = float('inf')


@dataclass(frozen=True)
class EnvelopeSegment:
    """
    A line y = slope * x + intercept and the interval [x_lower, x_upper] on which it is the minimum.

    ref identifies the line's source (a DP predecessor); interval ends are exact Fractions or +-inf.
    """
    slope: int
    intercept: int
    x_lower: Union[Fraction, float]
    x_upper: Union[Fraction, float]
    ref: Any = None

    def value(self, x):
        return self.slope * x + self.intercept


class EnvelopeHit(NamedTuple):
    value: Any
    segment: EnvelopeSegment


def _redundant(first, middle, last):
    """True if middle never lies strictly below both neighbours (slopes first > middle > last)."""
    a1, b1 = first[0], first[1]
    a2, b2 = middle[0], middle[1]
    a3, b3 = last[0], last[1]
    return (b3 - b1) * (a1 - a2) <= (b2 - b1) * (a1 - a3)


def build_hull(lines):
    """
    Lower envelope of lines fed in order of decreasing slope.

    Of several lines with equal slope only the lowest intercept is kept (the first one on ties). Each line is
    pushed and popped at most once.

    Args:
        lines (iterable): (slope, intercept, ref) tuples, slopes nonincreasing

    Returns:
        list: hull lines, slopes strictly decreasing, i.e. ordered by increasing x of their interval
    """
    hull = []
    for line in lines:
        if hull and hull[-1][0] == line[0]:
            if line[1] >= hull[-1][1]:
                continue
            hull.pop()
        while len(hull) >= 2 and _redundant(hull[-2], hull[-1], line):
            hull.pop()
        hull.append(line)
    return hull


def sweep_hull(hull, xs):
    """
    Minimum over hull lines at ascending xs by a merged two-pointer sweep.

    On ties the line of lower slope wins.

    Returns:
        list: (value, line) per x
    """
    out = []
    i, last = 0, len(hull) - 1
    for x in xs:
        a, b = hull[i][0], hull[i][1]
        y = a * x + b
        while i < last:
            y_next = hull[i + 1][0] * x + hull[i + 1][1]
            if y_next > y:
                break
            i += 1
            y = y_next
        out.append((y, hull[i]))
    return out


def lower_envelope(lines):
    """
    Intervals and lines of the pointwise minimum of a set of lines.

    Args:
        lines (list): (slope, intercept) or (slope, intercept, ref) sorted by ascending slope

    Returns:
        list: EnvelopeSegment in order of increasing x; empty for no lines
    """
    lines = [tuple(line) if len(line) == 3 else (line[0], line[1], None) for line in lines]
    assert all(p[0] <= q[0] for p, q in zip(lines, lines[1:])), 'Lines must be sorted by ascending slope.'
    hull = build_hull(reversed(lines))
    segments = []
    x_lower = NEG_INF
    for i, (a, b, ref) in enumerate(hull):
        if i + 1 < len(hull):
            a_next, b_next = hull[i + 1][0], hull[i + 1][1]
            x_upper = Fraction(b_next - b, a - a_next)
        else:
            x_upper = POS_INF
        segments.append(EnvelopeSegment(a, b, x_lower, x_upper, ref))
        x_lower = x_upper
    return segments


def query_envelope(envelope, xs, method='sweep'):
    """
    Minimal y and the segment achieving it for each query.

    Args:
        envelope (list): EnvelopeSegment from lower_envelope
        xs (list): ascending query values
        method (str): "sweep" (amortised O(1) per query) or "binary" (O(log M) per query)

    Returns:
        list: EnvelopeHit per query; at an interval end the lower-slope segment is reported
    """
    if not xs:
        return []
    assert envelope, 'Cannot query an empty envelope.'
    if method == 'binary':
        uppers = [s.x_upper for s in envelope[:-1]]
        hits = []
        for x in xs:
            segment = envelope[bisect_right(uppers, x)]
            hits.append(EnvelopeHit(segment.value(x), segment))
        return hits
    if method != 'sweep':
        raise ValueError(f'Query method "{method}" is not supported. Available methods are: sweep, binary')
    assert all(p <= q for p, q in zip(xs, xs[1:])), 'Queries must be ascending.'
    hits = []
    i, last = 0, len(envelope) - 1
    for x in xs:
        while i < last and x >= envelope[i].x_upper:
            i += 1
        hits.append(EnvelopeHit(envelope[i].value(x), envelope[i]))
    return hits
