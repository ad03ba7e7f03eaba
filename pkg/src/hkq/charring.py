"""Exact character ring of a torus, Sp(1) or Sp(n).

Weights are integer tuples in the standard epsilon basis of the maximal
torus, so for Sp(n) the defining representation has weights +-e_i and a
weight is dominant iff its entries are weakly decreasing and nonnegative.
Characters are Laurent polynomials with (unbounded) integer coefficients.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Iterator, Mapping, Tuple

from .errors import DimensionError, DomainError, EmptyError, NotACharacterError

Weight = Tuple[int, ...]


@dataclass(frozen=True)
class GroupDescriptor:
    """A compact group together with the rank of its maximal torus.

    ``kind`` is ``"torus"`` or ``"sp"``; Sp(1) is ``GroupDescriptor("sp", 1)``.
    """

    kind: str
    rank: int

    def __post_init__(self):
        if self.kind not in ("torus", "sp"):
            raise DomainError(f"unsupported group kind {self.kind!r}")
        if not isinstance(self.rank, int) or self.rank < 1:
            raise DomainError(f"group rank must be a positive integer, got {self.rank!r}")

    @classmethod
    def torus(cls, r: int) -> "GroupDescriptor":
        return cls("torus", r)

    @classmethod
    def sp(cls, n: int) -> "GroupDescriptor":
        return cls("sp", n)

    @classmethod
    def parse(cls, text: str) -> "GroupDescriptor":
        """Parse ``sp1``, ``sp3``, ``torus2``, ``u1`` (case-insensitive)."""
        s = text.strip().lower().replace("(", "").replace(")", "")
        for prefix, kind in (("sp", "sp"), ("torus", "torus"), ("t", "torus")):
            if s.startswith(prefix) and s[len(prefix):].isdigit():
                return cls(kind, int(s[len(prefix):]))
        if s == "u1":
            return cls("torus", 1)
        raise DomainError(f"cannot parse group descriptor {text!r}")

    @property
    def name(self) -> str:
        return f"Sp({self.rank})" if self.kind == "sp" else f"T^{self.rank}"

    @property
    def weyl_order(self) -> int:
        if self.kind == "torus":
            return 1
        n = self.rank
        return 2 ** n * _factorial(n)

    def check_weight(self, w: Iterable[int]) -> Weight:
        w = tuple(int(x) for x in w)
        if len(w) != self.rank:
            raise DimensionError(
                f"weight {w} has length {len(w)}, expected {self.rank} for {self.name}")
        return w

    def is_dominant(self, w: Weight) -> bool:
        if self.kind == "torus":
            return True
        return all(w[i] >= w[i + 1] for i in range(len(w) - 1)) and w[-1] >= 0

    def rho(self) -> Weight:
        if self.kind == "torus":
            return (0,) * self.rank
        return tuple(range(self.rank, 0, -1))


def _factorial(n):
    out = 1
    for i in range(2, n + 1):
        out *= i
    return out


class Character:
    """Laurent polynomial in ``rank`` torus variables with integer coefficients.

    Instances are immutable; arithmetic returns new objects.  Rank-0
    characters are plain integers (used after forgetting every torus grading).
    """

    __slots__ = ("_rank", "_terms", "_hash")

    def __init__(self, rank: int, terms: Mapping[Weight, int] | Iterable[Tuple[Weight, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: Dict[Weight, int] = {}
        for w, m in items:
            w = tuple(int(x) for x in w)
            if len(w) != rank:
                raise DimensionError(f"weight {w} does not have length {rank}")
            acc[w] = acc.get(w, 0) + int(m)
        self._rank = rank
        self._terms = {w: m for w, m in acc.items() if m != 0}
        self._hash = None

    @classmethod
    def _raw(cls, rank, terms):
        obj = cls.__new__(cls)
        obj._rank = rank
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, rank: int) -> "Character":
        return cls._raw(rank, {})

    @classmethod
    def one(cls, rank: int) -> "Character":
        return cls._raw(rank, {(0,) * rank: 1})

    @classmethod
    def monomial(cls, w: Iterable[int], coeff: int = 1) -> "Character":
        w = tuple(int(x) for x in w)
        return cls(len(w), {w: coeff})

    @property
    def rank(self) -> int:
        return self._rank

    def terms(self) -> Dict[Weight, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def weights(self):
        return self._terms.keys()

    def __getitem__(self, w: Weight) -> int:
        return self._terms.get(tuple(w), 0)

    def __len__(self):
        return len(self._terms)

    def __iter__(self) -> Iterator[Weight]:
        return iter(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, Character):
            return self._rank == other._rank and self._terms == other._terms
        if isinstance(other, int):
            return self == Character(self._rank, {(0,) * self._rank: other})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._rank, frozenset(self._terms.items())))
        return self._hash

    def _check(self, other):
        if not isinstance(other, Character):
            raise TypeError(f"expected Character, got {type(other).__name__}")
        if other._rank != self._rank:
            raise DimensionError(f"rank mismatch: {self._rank} vs {other._rank}")

    def __add__(self, other):
        self._check(other)
        out = dict(self._terms)
        for w, m in other._terms.items():
            v = out.get(w, 0) + m
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return Character._raw(self._rank, out)

    def __neg__(self):
        return Character._raw(self._rank, {w: -m for w, m in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return Character.zero(self._rank)
            return Character._raw(self._rank, {w: m * other for w, m in self._terms.items()})
        self._check(other)
        out: Dict[Weight, int] = {}
        for w1, m1 in self._terms.items():
            for w2, m2 in other._terms.items():
                w = tuple(a + b for a, b in zip(w1, w2))
                out[w] = out.get(w, 0) + m1 * m2
        return Character._raw(self._rank, {w: m for w, m in out.items() if m})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative powers of characters are not defined")
        out = Character.one(self._rank)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, w: Weight, coeff: int = 1) -> "Character":
        """Multiply by the monomial ``coeff * t^w``."""
        if coeff == 0:
            return Character.zero(self._rank)
        return Character._raw(
            self._rank,
            {tuple(a + b for a, b in zip(u, w)): m * coeff for u, m in self._terms.items()})

    def evaluate(self, point=None):
        """Evaluate at a torus point; ``None`` means the identity (1, ..., 1)."""
        if point is None:
            return sum(self._terms.values())
        total = 0
        for w, m in self._terms.items():
            term = m
            for x, e in zip(point, w):
                term = term * x ** e
            total += term
        return total

    def forget(self, coords: Iterable[int]) -> "Character":
        """Set the listed torus variables to 1 (drops those coordinates)."""
        drop = set(coords)
        bad = [i for i in drop if not 0 <= i < self._rank]
        if bad:
            raise DimensionError(f"variable indices {bad} out of range for rank {self._rank}")
        keep = [i for i in range(self._rank) if i not in drop]
        out: Dict[Weight, int] = {}
        for w, m in self._terms.items():
            u = tuple(w[i] for i in keep)
            out[u] = out.get(u, 0) + m
        return Character._raw(len(keep), {w: m for w, m in out.items() if m})

    def divide_exact(self, other: "Character") -> "Character":
        """Exact quotient in the Laurent polynomial ring.

        Long division on lex-leading terms.  A quotient term outside the
        Newton box of any exact quotient certifies a nonzero remainder.
        """
        self._check(other)
        if not other:
            raise ZeroDivisionError("division by the zero character")
        if not self:
            return Character.zero(self._rank)
        r = self._rank
        lead_w = max(other._terms)
        lead_m = other._terms[lead_w]
        lo = [min(w[i] for w in self._terms) - min(w[i] for w in other._terms) for i in range(r)]
        hi = [max(w[i] for w in self._terms) - max(w[i] for w in other._terms) for i in range(r)]
        rem = dict(self._terms)
        heap = [tuple(-x for x in w) for w in rem]
        heapq.heapify(heap)
        quot: Dict[Weight, int] = {}
        while heap:
            w = tuple(-x for x in heapq.heappop(heap))
            m = rem.get(w, 0)
            if m == 0:
                continue
            if m % lead_m:
                raise ArithmeticError("inexact division: non-integral quotient coefficient")
            c = m // lead_m
            q = tuple(a - b for a, b in zip(w, lead_w))
            if any(q[i] < lo[i] or q[i] > hi[i] for i in range(r)):
                raise ArithmeticError("inexact division: nonzero remainder")
            quot[q] = c
            for u, mu in other._terms.items():
                v = tuple(a + b for a, b in zip(q, u))
                nv = rem.get(v, 0) - c * mu
                if nv:
                    if v not in rem or rem[v] == 0:
                        heapq.heappush(heap, tuple(-x for x in v))
                    rem[v] = nv
                else:
                    rem.pop(v, None)
        return Character._raw(r, quot)

    def sorted_items(self):
        return sorted(self._terms.items(), reverse=True)

    def __repr__(self):
        if not self._terms:
            return f"Character({self._rank}, 0)"
        body = " + ".join(f"{m}*t^{list(w)}" for w, m in self.sorted_items())
        return f"Character({self._rank}, {body})"

    def to_json(self) -> dict:
        return {"terms": [{"w": list(w), "m": m} for w, m in self.sorted_items()]}

    @classmethod
    def from_json(cls, obj: dict, rank: int | None = None) -> "Character":
        try:
            terms = [(tuple(t["w"]), int(t["m"])) for t in obj["terms"]]
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed character JSON: {exc}") from None
        if rank is None:
            if not terms:
                raise DimensionError("rank of an empty character must be given explicitly")
            rank = len(terms[0][0])
        return cls(rank, terms)


# -- Weyl group -------------------------------------------------------------

@lru_cache(maxsize=None)
def _signed_permutations(n: int):
    """All (perm, signs, epsilon) for the hyperoctahedral group of rank n."""
    out = []
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        for signs in itertools.product((1, -1), repeat=n):
            eps = (-1) ** inv
            for s in signs:
                eps *= s
            out.append((perm, signs, eps))
    return tuple(out)


def _weyl_elements(g: GroupDescriptor):
    if g.kind == "torus":
        return (((tuple(range(g.rank))), (1,) * g.rank, 1),)
    return _signed_permutations(g.rank)


def _act(element, w: Weight) -> Weight:
    perm, signs, _ = element
    return tuple(signs[i] * w[perm[i]] for i in range(len(w)))


def weyl_group_orbit(g: GroupDescriptor, w: Iterable[int]) -> frozenset:
    """Distinct pairs ``(s(w), sign(s))`` over the Weyl group elements s."""
    w = g.check_weight(w)
    return frozenset((_act(e, w), e[2]) for e in _weyl_elements(g))


def _alternant(g: GroupDescriptor, w: Weight) -> Character:
    acc: Dict[Weight, int] = {}
    for e in _weyl_elements(g):
        u = _act(e, w)
        acc[u] = acc.get(u, 0) + e[2]
    return Character(g.rank, acc)


@lru_cache(maxsize=4096)
def _weyl_character(g: GroupDescriptor, lam: Weight) -> Character:
    if g.kind == "torus":
        return Character._raw(g.rank, {lam: 1})
    rho = g.rho()
    num = _alternant(g, tuple(a + b for a, b in zip(lam, rho)))
    den = _alternant(g, rho)
    return num.divide_exact(den)


def weyl_character(g: GroupDescriptor, lam: Iterable[int]) -> Character:
    """Character of the irreducible module with highest weight ``lam``."""
    lam = g.check_weight(lam)
    if not g.is_dominant(lam):
        raise DomainError(f"weight {lam} is not dominant for {g.name}")
    return _weyl_character(g, lam)


def weyl_dimension(g: GroupDescriptor, lam: Iterable[int]) -> int:
    """Weyl dimension formula (product over positive roots)."""
    lam = g.check_weight(lam)
    if not g.is_dominant(lam):
        raise DomainError(f"weight {lam} is not dominant for {g.name}")
    if g.kind == "torus":
        return 1
    rho = g.rho()
    l = [a + b for a, b in zip(lam, rho)]
    n = g.rank
    out = Fraction(1)
    for i in range(n):
        out *= Fraction(l[i], rho[i])
        for j in range(i + 1, n):
            out *= Fraction((l[i] - l[j]) * (l[i] + l[j]), (rho[i] - rho[j]) * (rho[i] + rho[j]))
    assert out.denominator == 1
    return int(out)


def is_weyl_invariant(g: GroupDescriptor, h: Character) -> bool:
    if g.kind == "torus":
        return True
    n = g.rank
    for w, m in h.items():
        flipped = w[:-1] + (-w[-1],)
        if h[flipped] != m:
            return False
        for i in range(n - 1):
            swapped = w[:i] + (w[i + 1], w[i]) + w[i + 2:]
            if h[swapped] != m:
                return False
    return True


def dominates(g: GroupDescriptor, lam: Weight, mu: Weight) -> bool:
    """True iff ``lam - mu`` is a nonnegative integer combination of positive roots."""
    v = [a - b for a, b in zip(lam, mu)]
    if g.kind == "torus":
        return not any(v)
    partial = 0
    for x in v[:-1]:
        partial += x
        if partial < 0:
            return False
    total = sum(v)
    return total >= 0 and total % 2 == 0


def maximal_weight(g: GroupDescriptor, h: Character) -> Weight:
    """A dominance-maximal weight of ``h``; ties broken lexicographically.

    Dominance implies lexicographic order in the epsilon basis (every
    positive root has a positive leading coordinate), so the lex-largest
    weight is dominance-maximal and is the lex-largest of the maximal ones.
    """
    if h.rank != g.rank:
        raise DimensionError(f"character rank {h.rank} does not match {g.name}")
    if not h:
        raise EmptyError("maximal weight of the zero character")
    return max(h.weights())


def compose(g: GroupDescriptor, mults: Mapping[Weight, int]) -> Character:
    """Sum of ``m * chi_lambda`` over the given multiplicities."""
    out = Character.zero(g.rank)
    for lam, m in mults.items():
        out = out + weyl_character(g, lam) * int(m)
    return out


def decompose_character(g: GroupDescriptor, h: Character) -> Dict[Weight, int]:
    """Recover irreducible multiplicities by peeling off maximal weights."""
    if h.rank != g.rank:
        raise DimensionError(f"character rank {h.rank} does not match {g.name}")
    if any(m < 0 for _, m in h.items()):
        raise NotACharacterError("negative multiplicity in input")
    if not is_weyl_invariant(g, h):
        raise NotACharacterError("input is not Weyl-group invariant")
    out: Dict[Weight, int] = {}
    rest = h
    while rest:
        lam = maximal_weight(g, rest)
        if not g.is_dominant(lam):
            raise NotACharacterError(f"maximal weight {lam} is not dominant")
        m = rest[lam]
        if m <= 0:
            raise NotACharacterError(f"nonpositive multiplicity {m} at maximal weight {lam}")
        out[lam] = m
        rest = rest - weyl_character(g, lam) * m
        if any(c < 0 for _, c in rest.items()):
            raise NotACharacterError(f"subtracting {m} x chi{lam} leaves negative coefficients")
    return out


def multiplicities_to_json(mults: Mapping[Weight, int]) -> dict:
    return {"terms": [{"w": list(w), "m": m} for w, m in sorted(mults.items(), reverse=True)]}


def multiplicities_from_json(obj: dict) -> Dict[Weight, int]:
    out = {}
    for t in obj["terms"]:
        m = int(t["m"])
        if m < 1:
            raise DomainError(f"multiplicity must be positive, got {m}")
        out[tuple(int(x) for x in t["w"])] = m
    return out


def substitute_characters(g: GroupDescriptor, series):
    """Replace each symbol t~^lambda by chi_lambda, degree by degree."""

    def convert(symbols: Character) -> Character:
        if symbols.rank != g.rank:
            raise DimensionError(f"series rank {symbols.rank} does not match {g.name}")
        return compose(g, dict(symbols.items()))

    return series.map_coefficients(convert, rank=g.rank)


def extract_multiplicities(g: GroupDescriptor, series):
    """Inverse of :func:`substitute_characters`: per-degree decomposition."""

    def convert(h: Character) -> Character:
        return Character(g.rank, decompose_character(g, h))

    return series.map_coefficients(convert, rank=g.rank)
