import pytest

from bin_design.utils import (BinChain, BoxDims, Bounds, Order, dominates, is_expanded_of, is_shrunken_of,
                              surface_cost, validate_chain)
from bin_design.utils.errors import InvalidBounds, InvalidDimensions

TABLE_TYPES = [(27, 18, 15), (31, 23, 18), (35, 25, 20), (38, 28, 22), (41, 30, 25), (44, 33, 27), (47, 36, 30),
               (50, 40, 33)]


@pytest.mark.parametrize('dims, cost', [((1, 1, 1), 6), ((27, 18, 15), 2322), ((50, 40, 33), 9940)])
def test_surface_cost(dims, cost):
    assert surface_cost(BoxDims(*dims)) == cost
    assert BoxDims(*dims).surface_cost == cost


def test_zero_anchor_costs_nothing():
    assert surface_cost(BoxDims.zero()) == 0
    assert BoxDims.zero().is_zero


@pytest.mark.parametrize('dims', [(0, 1, 1), (-1, 2, 2), (1.5, 1, 1), (True, 1, 1)])
def test_invalid_dimensions(dims):
    with pytest.raises(InvalidDimensions):
        BoxDims(*dims)


def test_parse_accepts_both_separators():
    assert BoxDims.parse('50x40x33') == BoxDims(50, 40, 33)
    assert BoxDims.parse('2,1,1') == BoxDims(2, 1, 1)
    with pytest.raises(InvalidDimensions):
        BoxDims.parse('2,1')


def test_expanded_and_dominance():
    assert is_expanded_of(BoxDims(31, 23, 18), BoxDims(27, 18, 15))
    assert is_shrunken_of(BoxDims(27, 18, 15), BoxDims(31, 23, 18))
    assert not is_expanded_of(BoxDims(2, 1, 1), BoxDims(1, 2, 1))
    assert not is_expanded_of(BoxDims(1, 2, 1), BoxDims(2, 1, 1))
    assert not is_expanded_of(BoxDims(3, 3, 3), BoxDims(3, 3, 3))
    assert dominates(BoxDims(3, 3, 3), BoxDims(3, 3, 3))


def test_expanded_costs_more(rng):
    for _ in range(200):
        b = BoxDims(*(int(v) for v in rng.integers(1, 10, size=3)))
        a = BoxDims(*(int(v) + int(d) for v, d in zip(b, rng.integers(0, 3, size=3))))
        if is_expanded_of(a, b):
            assert surface_cost(a) > surface_cost(b)


def test_bounds_limit_k():
    assert Bounds(3, 3, 3, 7).K == 7
    with pytest.raises(InvalidBounds):
        Bounds(3, 3, 3, 8)
    with pytest.raises(InvalidBounds):
        Bounds(3, 3, 3, 0)


def test_bounds_admit_rotated_items():
    bounds = Bounds(50, 40, 33)
    assert bounds.admits(BoxDims(10, 45, 10))
    assert not bounds.admits(BoxDims(60, 10, 10))
    assert not Order('x', (BoxDims(60, 10, 10),)).fits_bounds(bounds)


def test_order_needs_items():
    with pytest.raises(InvalidDimensions):
        Order('empty', ())


def test_table_chain_is_valid():
    chain = [BoxDims(*t) for t in TABLE_TYPES]
    assert validate_chain(chain, Bounds(50, 40, 33, 8)).ok
    assert validate_chain(chain, Bounds(50, 40, 33, 8), strict=True).ok


def test_decreasing_length_is_reported_at_second_type():
    result = validate_chain([BoxDims(5, 5, 5), BoxDims(4, 6, 6)], Bounds(10, 10, 10, 2))
    assert not result
    assert result.index == 2
    assert result.violation.constraint == 'length monotone'


def test_repeated_type_only_fails_strict():
    chain = [BoxDims(5, 5, 5), BoxDims(5, 5, 5)]
    bounds = Bounds(10, 10, 10, 2)
    assert validate_chain(chain, bounds).ok
    strict = validate_chain(chain, bounds, strict=True)
    assert not strict.ok
    assert strict.violation.equation == 5


def test_chain_outside_bounds():
    result = validate_chain([BoxDims(5, 5, 11)], Bounds(10, 10, 10, 1))
    assert result.violation.constraint == 'height bound'


def test_chain_length_must_match_k():
    assert validate_chain([BoxDims(1, 1, 1)], Bounds(10, 10, 10, 2)).violation.constraint == 'count'


def test_bin_chain_reports_collapsed_types():
    chain = BinChain((BoxDims(1, 1, 1), BoxDims(2, 2, 2), BoxDims(2, 2, 2)), 30, (1, 1, 0))
    assert chain.collapsed == (False, False, True)
    assert chain.distinct_types == (BoxDims(1, 1, 1), BoxDims(2, 2, 2))
    assert chain.n_orders == 2
    assert chain.recomputed_cost() == 30
    assert chain.percentages() == (50.0, 50.0, 0.0)
