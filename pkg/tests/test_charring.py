import itertools
from fractions import Fraction

import pytest
import sympy
from sympy.combinatorics import Permutation
from hypothesis import given, settings, strategies as st

from hkq.charring import (Character, GroupDescriptor, compose, decompose_character, dominates,
                          extract_multiplicities, is_weyl_invariant, maximal_weight,
                          multiplicities_from_json, multiplicities_to_json,
                          substitute_characters, weyl_character, weyl_dimension,
                          weyl_group_orbit)
from hkq.errors import DimensionError, DomainError, EmptyError, NotACharacterError
from hkq.genseries import TruncatedSeries, localize
from hkq.models.flat import FlatModel, flat_fixed_points

SP1, SP2, SP3 = (GroupDescriptor.sp(n) for n in (1, 2, 3))


def ch(*pairs):
    return Character(len(pairs[0][0]), {tuple(w): m for w, m in pairs})


# -- independent oracles -------------------------------------------------------

def _positive_roots(n):
    roots = []
    for i in range(n):
        v = [0] * n
        v[i] = 2
        roots.append(tuple(v))
        for j in range(i + 1, n):
            for s in (1, -1):
                v = [0] * n
                v[i], v[j] = 1, s
                roots.append(tuple(v))
    return roots


def _dominant_rep(mu):
    return tuple(sorted((abs(x) for x in mu), reverse=True))


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def freudenthal(lam):
    """Weight multiplicities of the Sp(n) irrep lam by Freudenthal's recursion."""
    n = len(lam)
    rho = tuple(range(n, 0, -1))
    roots = _positive_roots(n)
    top = lam[0] if lam else 0
    lr = tuple(a + b for a, b in zip(lam, rho))
    memo = {}

    def below(mu):
        if any(abs(x) > top for x in mu) or (sum(lam) - sum(mu)) % 2:
            return False
        d = _dominant_rep(mu)
        partial = 0
        for a, b in zip(lam, d):
            partial += a - b
            if partial < 0:
                return False
        return True

    def mult(mu):
        if mu in memo:
            return memo[mu]
        if not below(mu):
            return 0
        if mu == tuple(lam):
            return 1
        num = Fraction(0)
        for alpha in roots:
            k = 1
            while True:
                nu = tuple(m + k * a for m, a in zip(mu, alpha))
                if any(abs(x) > top for x in nu):
                    break
                num += 2 * mult(nu) * _dot(nu, alpha)
                k += 1
        mr = tuple(a + b for a, b in zip(mu, rho))
        val = num / (_dot(lr, lr) - _dot(mr, mr))
        assert val.denominator == 1
        memo[mu] = int(val)
        return memo[mu]

    out = {}
    for mu in itertools.product(range(-top, top + 1), repeat=n):
        m = mult(mu)
        if m:
            out[mu] = m
    return out


def sympy_weyl_character(lam):
    n = len(lam)
    xs = sympy.symbols(f"x1:{n + 1}")
    rho = tuple(range(n, 0, -1))

    def alternant(w):
        total = 0
        for perm in itertools.permutations(range(n)):
            sgn = Permutation(list(perm)).signature()
            for signs in itertools.product((1, -1), repeat=n):
                term = sgn
                for i in range(n):
                    term *= signs[i] * xs[i] ** (signs[i] * w[perm[i]])
                total += term
        return total

    q = sympy.cancel(alternant(tuple(a + b for a, b in zip(lam, rho))) / alternant(rho))
    poly = sympy.Poly(sympy.expand(q * sympy.Mul(*[x ** 20 for x in xs])), *xs)
    return {tuple(e - 20 for e in mon): int(c) for mon, c in poly.terms()}


# -- weyl_group_orbit ------------------------------------------------------------

def test_orbit_sp1():
    assert weyl_group_orbit(SP1, (3,)) == {((3,), 1), ((-3,), -1)}


def test_orbit_torus_trivial():
    assert weyl_group_orbit(GroupDescriptor.torus(2), (1, 5)) == {((1, 5), 1)}


def test_orbit_sp2_generic():
    orb = weyl_group_orbit(SP2, (2, 1))
    assert len(orb) == 8
    assert {w for w, _ in orb} == {(a * x, b * y) for x, y in [(2, 1), (1, 2)]
                                   for a in (1, -1) for b in (1, -1)}


def test_orbit_length_mismatch():
    with pytest.raises(DimensionError):
        weyl_group_orbit(SP2, (1,))


@pytest.mark.parametrize("w", [(0, 0), (1, 0), (2, 2), (3, 1)])
def test_orbit_size_divides_group_order(w):
    assert SP2.weyl_order % len({x for x, _ in weyl_group_orbit(SP2, w)}) == 0


# -- weyl_character ------------------------------------------------------------

def test_sp1_defining():
    assert weyl_character(SP1, (1,)) == ch(((1,), 1), ((-1,), 1))


def test_sp1_adjoint_matches_freudenthal():
    assert weyl_character(SP1, (2,)) == Character(1, freudenthal((2,)))
    assert weyl_character(SP1, (2,)) == ch(((2,), 1), ((0,), 1), ((-2,), 1))


@pytest.mark.parametrize("lam", [(1, 0), (1, 1), (2, 1), (2, 0)])
def test_sp2_against_sympy_division(lam):
    assert weyl_character(SP2, lam) == Character(2, sympy_weyl_character(lam))


def test_sp2_defining_explicit():
    expected = ch(((1, 0), 1), ((-1, 0), 1), ((0, 1), 1), ((0, -1), 1))
    assert weyl_character(SP2, (1, 0)) == expected


@pytest.mark.parametrize("lam", [(a, b) for a in range(5) for b in range(a + 1)])
def test_sp2_freudenthal_and_dimension(lam):
    chi = weyl_character(SP2, lam)
    assert chi == Character(2, freudenthal(lam))
    assert chi.evaluate() == weyl_dimension(SP2, lam) > 0


def test_sp3_freudenthal():
    for lam in [(1, 0, 0), (1, 1, 0), (2, 1, 0), (1, 1, 1)]:
        assert weyl_character(SP3, lam) == Character(3, freudenthal(lam))


def test_nondominant_rejected():
    with pytest.raises(DomainError):
        weyl_character(SP2, (0, 1))
    with pytest.raises(DomainError):
        weyl_character(SP1, (-1,))


def test_torus_character_is_monomial():
    t2 = GroupDescriptor.torus(2)
    assert weyl_character(t2, (3, -1)) == Character.monomial((3, -1))


@pytest.mark.parametrize("lam", [(2, 1), (3, 0), (1, 1)])
def test_weyl_invariance_all_signed_permutations(lam):
    chi = weyl_character(SP2, lam)
    for w, m in chi.items():
        for image, _ in weyl_group_orbit(SP2, w):
            assert chi[image] == m


def test_known_dimensions():
    assert weyl_dimension(SP2, (1, 1)) == 5
    assert weyl_dimension(SP2, (2, 0)) == 10
    assert weyl_dimension(SP3, (1, 0, 0)) == 6
    assert weyl_dimension(SP3, (1, 1, 1)) == 14


# -- maximal weight / dominance ----------------------------------------------

def test_maximal_weight_examples():
    assert maximal_weight(SP1, weyl_character(SP1, (2,))) == (2,)
    assert maximal_weight(SP2, ch(((1, 0), 1), ((0, 1), 1))) == (1, 0)
    assert maximal_weight(GroupDescriptor.torus(1), ch(((-3,), 1), ((5,), 1))) == (5,)


def test_maximal_weight_empty():
    with pytest.raises(EmptyError):
        maximal_weight(SP1, Character.zero(1))


def test_dominance():
    assert dominates(SP2, (2, 0), (1, 1))
    assert not dominates(SP2, (1, 1), (2, 0))
    assert not dominates(SP2, (2, 0), (1, 0))  # parity


# -- decomposition ------------------------------------------------------------

@pytest.mark.parametrize("a,b", [(1, 1), (2, 1), (3, 2), (4, 4), (5, 0)])
def test_clebsch_gordan_sp1(a, b):
    prod = weyl_character(SP1, (a,)) * weyl_character(SP1, (b,))
    expected = {(c,): 1 for c in range(abs(a - b), a + b + 1, 2)}
    assert decompose_character(SP1, prod) == expected


def test_zero_decomposes_to_empty():
    assert decompose_character(SP2, Character.zero(2)) == {}


def test_not_a_character():
    with pytest.raises(NotACharacterError):
        decompose_character(SP1, ch(((1,), 1)))
    with pytest.raises(NotACharacterError):
        decompose_character(SP1, ch(((2,), 1), ((-2,), 1)))  # missing the zero weight
    with pytest.raises(NotACharacterError):
        decompose_character(SP1, ch(((0,), -1)))


def test_flat_coefficients_are_symmetric_powers():
    for n in (1, 2, 3):
        g = GroupDescriptor.sp(n)
        s = localize(flat_fixed_points(FlatModel(n)), 6)
        for d in range(7):
            assert decompose_character(g, s[d]) == {(d,) + (0,) * (n - 1): 1}


def _mults(n, max_w=6, max_m=5):
    dom = [lam for lam in itertools.product(range(max_w + 1), repeat=n)
           if all(lam[i] >= lam[i + 1] for i in range(n - 1))]
    return st.dictionaries(st.sampled_from(dom), st.integers(1, max_m), max_size=4)


@settings(max_examples=40, deadline=None)
@given(_mults(1))
def test_round_trip_sp1(m):
    assert decompose_character(SP1, compose(SP1, m)) == m


@settings(max_examples=40, deadline=None)
@given(_mults(2))
def test_round_trip_sp2(m):
    assert decompose_character(SP2, compose(SP2, m)) == m


@settings(max_examples=15, deadline=None)
@given(_mults(3, max_w=4))
def test_round_trip_sp3(m):
    assert decompose_character(SP3, compose(SP3, m)) == m


@settings(max_examples=30, deadline=None)
@given(_mults(2))
def test_composed_characters_are_invariant(m):
    assert is_weyl_invariant(SP2, compose(SP2, m))


# -- ring, JSON ------------------------------------------------------------------

weights2 = st.tuples(st.integers(-4, 4), st.integers(-4, 4))
chars2 = st.dictionaries(weights2, st.integers(-5, 5), max_size=6).map(lambda d: Character(2, d))


@settings(max_examples=60, deadline=None)
@given(chars2, chars2, chars2)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == Character.zero(2)


@settings(max_examples=60, deadline=None)
@given(chars2)
def test_json_round_trip(a):
    assert Character.from_json(a.to_json(), 2) == a


def test_multiplicities_json_round_trip():
    m = {(2, 0): 1, (1, 1): 3}
    assert multiplicities_from_json(multiplicities_to_json(m)) == m


def test_divide_exact():
    a = weyl_character(SP1, (1,))
    assert (a * a).divide_exact(a) == a


def test_group_parse():
    assert GroupDescriptor.parse("sp2") == SP2
    assert GroupDescriptor.parse("torus3") == GroupDescriptor.torus(3)
    with pytest.raises(DomainError):
        GroupDescriptor.parse("e8")


# -- substitution ----------------------------------------------------------------

def _symbol_series(order, n=1):
    return TruncatedSeries(order, n, {d: Character.monomial((d,) + (0,) * (n - 1))
                                      for d in range(order + 1)})


def test_substitute_sp1_matches_flat():
    out = substitute_characters(SP1, _symbol_series(3))
    assert out == localize(flat_fixed_points(FlatModel(1)), 3)
    assert out[3] == ch(((3,), 1), ((1,), 1), ((-1,), 1), ((-3,), 1))


def test_substitute_zero_and_torus_identity():
    assert not substitute_characters(SP1, TruncatedSeries(3, 1))
    t1 = GroupDescriptor.torus(1)
    s = TruncatedSeries(2, 1, {1: ch(((-2,), 1), ((5,), 3))})
    assert substitute_characters(t1, s) == s


def test_substitute_nondominant_symbol():
    s = TruncatedSeries(1, 1, {1: ch(((-1,), 1))})
    with pytest.raises(DomainError):
        substitute_characters(SP1, s)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_g_to_h_to_g(n):
    g = GroupDescriptor.sp(n)
    s = _symbol_series(5, n)
    assert extract_multiplicities(g, substitute_characters(g, s)) == s
