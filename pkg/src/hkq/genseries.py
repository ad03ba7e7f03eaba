"""Truncated Laurent series in the grading variable t with Character coefficients.

Includes expansion of rational closed forms and the fixed-point
localisation sum.  Every factor ``1 - t^d x^w`` is inverted as a geometric
series in positive powers of t, so all denominators need ``d > 0``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Sequence, Tuple

from .charring import Character, Weight
from .errors import DimensionError, DomainError, ExpansionDirectionError


@dataclass(frozen=True)
class Monomial:
    """``c * t^t * x^w``; ``c`` defaults to 1 (signs allow super-space data)."""

    t: int
    w: Weight
    c: int = 1

    def __post_init__(self):
        object.__setattr__(self, "w", tuple(int(x) for x in self.w))

    @property
    def rank(self):
        return len(self.w)

    def to_json(self):
        out = {"t": self.t, "w": list(self.w)}
        if self.c != 1:
            out["c"] = self.c
        return out

    @classmethod
    def from_json(cls, obj):
        try:
            return cls(int(obj["t"]), tuple(obj["w"]), int(obj.get("c", 1)))
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed monomial JSON: {exc}") from None


class TruncatedSeries:
    """Series ``sum_d c_d t^d`` known for ``-order <= d <= order``.

    Coefficients beyond the order are undefined, not zero; equality is
    therefore only meaningful up to the smaller of two orders.
    """

    __slots__ = ("order", "rank", "_coeffs")

    def __init__(self, order: int, rank: int, coeffs: Dict[int, Character] | None = None):
        if order < 0:
            raise DomainError(f"order must be nonnegative, got {order}")
        self.order = order
        self.rank = rank
        self._coeffs: Dict[int, Character] = {}
        for d, c in (coeffs or {}).items():
            if c.rank != rank:
                raise DimensionError(f"coefficient at t^{d} has rank {c.rank}, expected {rank}")
            if abs(d) <= order and c:
                self._coeffs[int(d)] = c

    @classmethod
    def zero(cls, order, rank):
        return cls(order, rank)

    def __getitem__(self, d: int) -> Character:
        if abs(d) > self.order:
            raise IndexError(f"degree {d} beyond truncation order {self.order}")
        return self._coeffs.get(d, Character.zero(self.rank))

    def degrees(self):
        return sorted(self._coeffs)

    def items(self):
        return sorted(self._coeffs.items())

    def __bool__(self):
        return bool(self._coeffs)

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(min(order, self.order), self.rank, self._coeffs)

    def map_coefficients(self, fn: Callable[[Character], Character], rank: int | None = None):
        rank = self.rank if rank is None else rank
        return TruncatedSeries(self.order, rank, {d: fn(c) for d, c in self._coeffs.items()})

    def ranks(self) -> Dict[int, int]:
        """Total multiplicity per degree, i.e. the fully specialised series."""
        return {d: c.evaluate() for d, c in self.items()}

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return series_eq(self, other)

    __hash__ = None

    def __add__(self, other):
        return series_add(self, other)

    def __mul__(self, other):
        return series_mul(self, other)

    def __repr__(self):
        body = ", ".join(f"t^{d}: {c!r}" for d, c in self.items())
        return f"TruncatedSeries(order={self.order}, {{{body}}})"

    def to_json(self):
        return {"order": self.order,
                "coeffs": [{"d": d, "char": c.to_json()} for d, c in self.items()]}

    @classmethod
    def from_json(cls, obj, rank: int | None = None):
        entries = obj.get("coeffs", [])
        chars = {}
        for e in entries:
            chars[int(e["d"])] = Character.from_json(e["char"], rank)
        if rank is None:
            if not chars:
                raise DimensionError("rank of an empty series must be given explicitly")
            rank = next(iter(chars.values())).rank
        return cls(int(obj["order"]), rank, chars)


def _check_compatible(a: TruncatedSeries, b: TruncatedSeries):
    if a.rank != b.rank:
        raise DimensionError(f"series rank mismatch: {a.rank} vs {b.rank}")


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    _check_compatible(a, b)
    n = min(a.order, b.order)
    out = {}
    for d in set(a._coeffs) | set(b._coeffs):
        if abs(d) <= n:
            out[d] = a[d] + b[d]
    return TruncatedSeries(n, a.rank, out)


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Product truncated at ``min(a.order, b.order)``.

    Only valid when both operands have no terms below ``-order`` that could
    feed the retained window, which holds for series bounded below by the
    truncation window (all series produced here).
    """
    _check_compatible(a, b)
    n = min(a.order, b.order)
    out: Dict[int, Character] = {}
    for d1, c1 in a._coeffs.items():
        for d2, c2 in b._coeffs.items():
            d = d1 + d2
            if abs(d) <= n:
                prod = c1 * c2
                out[d] = out[d] + prod if d in out else prod
    return TruncatedSeries(n, a.rank, out)


def series_eq(a: TruncatedSeries, b: TruncatedSeries) -> bool:
    """Coefficientwise equality up to the common order."""
    if a.rank != b.rank:
        return False
    n = min(a.order, b.order)
    return all(a[d] == b[d] for d in range(-n, n + 1))


def specialize(s: TruncatedSeries, variables: Iterable[int] | None = None) -> TruncatedSeries:
    """Set the listed torus variables to 1 (all of them when ``None``)."""
    variables = range(s.rank) if variables is None else list(variables)
    drop = set(variables)
    return s.map_coefficients(lambda c: c.forget(drop), rank=s.rank - len(drop))


@dataclass(frozen=True)
class RationalForm:
    """``numerator / prod_i (1 - denominators[i])``."""

    numerator: Monomial
    denominators: Tuple[Monomial, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "denominators", tuple(self.denominators))
        r = self.numerator.rank
        for m in self.denominators:
            if m.rank != r:
                raise DimensionError("numerator and denominator monomials differ in rank")

    @property
    def rank(self):
        return self.numerator.rank


def _geometric(m: Monomial, order: int) -> TruncatedSeries:
    if m.t == 0:
        raise ExpansionDirectionError(
            f"factor 1 - t^0 x^{list(m.w)} has no expansion direction in t")
    if m.t < 0:
        raise ExpansionDirectionError(
            f"factor with negative t-degree {m.t}; rewrite with positive t-degree")
    coeffs = {}
    k = 0
    while k * m.t <= order:
        c = m.c ** k
        if c:
            coeffs[k * m.t] = Character._raw(m.rank, {tuple(k * x for x in m.w): c})
        k += 1
    return TruncatedSeries(order, m.rank, coeffs)


def _mul_into(acc: Dict[int, Character], factor: TruncatedSeries, order: int) -> Dict[int, Character]:
    out: Dict[int, Character] = {}
    for d1, c1 in acc.items():
        for d2, c2 in factor._coeffs.items():
            d = d1 + d2
            if d > order:
                continue
            prod = c1 * c2
            out[d] = out[d] + prod if d in out else prod
    return {d: c for d, c in out.items() if c}


def expand(f: RationalForm, order: int) -> TruncatedSeries:
    """Taylor expansion around t = 0, truncated at ``|d| <= order``."""
    if order < 0:
        raise DomainError(f"order must be nonnegative, got {order}")
    for m in f.denominators:
        if m.t <= 0:
            _geometric(m, order)  # raises with the precise message
    num = f.numerator
    if num.t > order:
        return TruncatedSeries.zero(order, f.rank)
    # Factors only raise the degree, so a negative numerator degree needs
    # correspondingly longer geometric tails.
    reach = order - min(num.t, 0)
    acc = {num.t: Character._raw(f.rank, {num.w: num.c})}
    for m in f.denominators:
        acc = _mul_into(acc, _geometric(m, reach), order)
    return TruncatedSeries(order, f.rank, acc)


@dataclass(frozen=True)
class FixedPointDatum:
    """Bundle weight and cotangent weights at an isolated fixed point."""

    bundle_weight: Monomial
    cotangent_weights: Tuple[Monomial, ...]

    def __post_init__(self):
        object.__setattr__(self, "cotangent_weights", tuple(self.cotangent_weights))
        r = self.bundle_weight.rank
        for m in self.cotangent_weights:
            if m.rank != r:
                raise DimensionError("bundle and cotangent weights differ in rank")
            if m.t <= 0:
                raise ExpansionDirectionError(
                    f"cotangent weight t^{m.t} x^{list(m.w)} must have positive t-degree")
            if m.c != 1:
                raise DomainError("cotangent weights are plain monomials (coefficient 1)")

    @property
    def rank(self):
        return self.bundle_weight.rank

    def rational_form(self) -> RationalForm:
        return RationalForm(self.bundle_weight, self.cotangent_weights)

    def to_json(self):
        return {"bundle": self.bundle_weight.to_json(),
                "cotangent": [m.to_json() for m in self.cotangent_weights]}

    @classmethod
    def from_json(cls, obj):
        return cls(Monomial.from_json(obj["bundle"]),
                   tuple(Monomial.from_json(m) for m in obj["cotangent"]))


def points_to_json(points: Sequence[FixedPointDatum]) -> dict:
    return {"points": [p.to_json() for p in points]}


def points_from_json(obj) -> List[FixedPointDatum]:
    try:
        return [FixedPointDatum.from_json(p) for p in obj["points"]]
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed fixed-point JSON: {exc}") from None


def localize(points: Sequence[FixedPointDatum], order: int, rank: int | None = None) -> TruncatedSeries:
    """Sum over fixed points of bundle weight / Lambda_{-1}(cotangent), to ``order``.

    ``rank`` is only needed for an empty point list.
    """
    if not points:
        if rank is None:
            raise DimensionError("rank must be given for an empty fixed-point list")
        return TruncatedSeries.zero(order, rank)
    r = points[0].rank
    if rank is not None and rank != r:
        raise DimensionError(f"fixed points have rank {r}, expected {rank}")
    total = TruncatedSeries.zero(order, r)
    for p in points:
        if p.rank != r:
            raise DimensionError("fixed points of differing rank")
        total = series_add(total, expand(p.rational_form(), order))
    return total
