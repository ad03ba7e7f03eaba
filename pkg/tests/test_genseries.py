import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from hkq.charring import Character
from hkq.errors import DimensionError, ExpansionDirectionError
from hkq.genseries import (FixedPointDatum, Monomial, RationalForm, TruncatedSeries, expand,
                           localize, points_from_json, points_to_json, series_add, series_eq,
                           series_mul, specialize)
from hkq.models.flat import FlatModel, flat_closed_form, flat_fixed_points, flat_rank_form

ONE0 = Monomial(0, ())


def scalars(s, order):
    return [s[d].evaluate() if s[d] else 0 for d in range(order + 1)]


def monomial_count(nvars, d):
    """Number of degree-d monomials in nvars variables, by enumeration."""
    return sum(1 for _ in itertools.combinations_with_replacement(range(nvars), d))


def test_binomial_series():
    s = expand(RationalForm(ONE0, (Monomial(1, ()),) * 2), 4)
    assert scalars(s, 4) == [1, 2, 3, 4, 5]


def test_flat_n1_closed_form():
    s = expand(RationalForm(Monomial(0, (0,)), (Monomial(1, (1,)), Monomial(1, (-1,)))), 2)
    assert s[0] == Character.one(1)
    assert s[1] == Character(1, {(1,): 1, (-1,): 1})
    assert s[2] == Character(1, {(2,): 1, (0,): 1, (-2,): 1})


def test_shifted_geometric():
    s = expand(RationalForm(Monomial(3, ()), (Monomial(1, ()),)), 5)
    assert scalars(s, 5) == [0, 0, 0, 1, 1, 1]


def test_negative_numerator_degree():
    s = expand(RationalForm(Monomial(-2, ()), (Monomial(1, ()),)), 3)
    assert [s[d].evaluate() if s[d] else 0 for d in range(-3, 4)] == [0, 1, 1, 1, 1, 1, 1]


def test_degree_zero_denominator_rejected():
    with pytest.raises(ExpansionDirectionError):
        expand(RationalForm(Monomial(0, (0,)), (Monomial(0, (1,)),)), 3)
    with pytest.raises(ExpansionDirectionError):
        FixedPointDatum(Monomial(0, (0,)), (Monomial(-1, (1,)),))


def test_localize_examples():
    n1 = localize(flat_fixed_points(FlatModel(1)), 2)
    assert n1 == expand(flat_closed_form(FlatModel(1)), 2)
    assert not localize([], 3, rank=1)
    pts = [FixedPointDatum(ONE0, (Monomial(1, ()),)), FixedPointDatum(Monomial(2, ()), (Monomial(1, ()),))]
    assert scalars(localize(pts, 5), 5) == [1, 1, 2, 2, 2, 2]


def test_localize_empty_needs_rank():
    with pytest.raises(DimensionError):
        localize([], 3)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_localize_matches_closed_form(n):
    order = 20 if n == 1 else 12
    m = FlatModel(n)
    assert localize(flat_fixed_points(m), order) == expand(flat_closed_form(m), order)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_specialised_counts_monomials(n):
    s = specialize(localize(flat_fixed_points(FlatModel(n)), 12))
    for d in range(13):
        assert s[d].evaluate() == monomial_count(2 * n, d)
    assert s == expand(flat_rank_form(FlatModel(n)), 12)


def test_specialize_examples():
    s = TruncatedSeries(2, 1, {1: Character(1, {(1,): 1, (-1,): 1})})
    assert specialize(s)[1].evaluate() == 2
    s2 = specialize(localize(flat_fixed_points(FlatModel(2)), 6))
    assert [s2[d].evaluate() for d in range(7)] == [math.comb(d + 3, 3) for d in range(7)]
    assert not specialize(TruncatedSeries(3, 2))


def test_partial_specialize():
    s = localize(flat_fixed_points(FlatModel(2)), 3)
    p = specialize(s, [1])
    assert p.rank == 1
    assert p[1] == Character(1, {(1,): 1, (-1,): 1, (0,): 2})


def test_mul_add_eq():
    one_plus = TruncatedSeries(5, 0, {0: Character.one(0), 1: Character.one(0)})
    one_minus = TruncatedSeries(5, 0, {0: Character.one(0), 1: Character.one(0) * -1})
    prod = series_mul(one_plus, one_minus)
    assert scalars(prod, 5) == [1, 0, -1, 0, 0, 0]
    g = expand(RationalForm(ONE0, (Monomial(1, ()),)), 10)
    assert series_eq(expand(RationalForm(ONE0, (Monomial(1, ()),) * 2), 10), g * g)
    assert series_add(g, g)[4].evaluate() == 2


def test_order_is_min():
    a = TruncatedSeries(3, 0, {0: Character.one(0)})
    b = TruncatedSeries(5, 0, {0: Character.one(0)})
    assert (a + b).order == 3 and (a * b).order == 3


def test_index_beyond_order():
    with pytest.raises(IndexError):
        TruncatedSeries(2, 1)[3]


def test_json_round_trips():
    s = localize(flat_fixed_points(FlatModel(2)), 4)
    assert TruncatedSeries.from_json(s.to_json()) == s
    pts = flat_fixed_points(FlatModel(2))
    assert points_from_json(points_to_json(pts)) == pts


def test_signed_bundle_weight():
    # super-space data: a negative bundle coefficient subtracts its contribution
    pts = [FixedPointDatum(Monomial(0, (0,)), (Monomial(1, (1,)),)),
           FixedPointDatum(Monomial(0, (0,), c=-1), (Monomial(1, (1,)),))]
    assert not localize(pts, 5)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 3), st.integers(-2, 2)), min_size=1, max_size=4),
       st.integers(-2, 3))
def test_localize_single_point_equals_expand(dens, num_t):
    cot = tuple(Monomial(t, (w,)) for t, w in dens)
    p = FixedPointDatum(Monomial(num_t, (0,)), cot)
    assert localize([p], 8) == expand(p.rational_form(), 8)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=3),
       st.lists(st.integers(1, 3), min_size=1, max_size=3))
def test_expand_is_multiplicative(a, b):
    fa = RationalForm(ONE0, tuple(Monomial(t, ()) for t in a))
    fb = RationalForm(ONE0, tuple(Monomial(t, ()) for t in b))
    fab = RationalForm(ONE0, tuple(Monomial(t, ()) for t in a + b))
    assert expand(fab, 10) == expand(fa, 10) * expand(fb, 10)


def test_deterministic():
    a = localize(flat_fixed_points(FlatModel(3)), 8).to_json()
    b = localize(flat_fixed_points(FlatModel(3)), 8).to_json()
    assert a == b
