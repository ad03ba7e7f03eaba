"""Borel-Weil bookkeeping over the twistor sphere CP^1.

A quantum ledger lists, per degree d, the irreducible modules V_lambda and
their multiplicities.  The super Hilbert space at degree d is the sum of
``W^(d) (x) V_lambda`` with ``W^(d) = H^0(O(d)) + H^1(O(d))``.

Convention: standard Borel-Weil-Bott, so ``H^1(CP^1, O) = 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple

from .charring import GroupDescriptor, Weight, weyl_dimension
from .errors import DomainError


@dataclass(frozen=True)
class SuperDim:
    even: int
    odd: int

    def __add__(self, other):
        return SuperDim(self.even + other.even, self.odd + other.odd)

    def __mul__(self, k: int):
        return SuperDim(self.even * k, self.odd * k)

    __rmul__ = __mul__

    @property
    def euler(self) -> int:
        return self.even - self.odd

    @property
    def total(self) -> int:
        return self.even + self.odd

    def to_json(self):
        return {"even": self.even, "odd": self.odd}


ZERO = SuperDim(0, 0)


def cohomology_dims(d: int) -> SuperDim:
    """(dim H^0, dim H^1) of O(d) on CP^1."""
    if d >= 0:
        return SuperDim(d + 1, 0)
    return SuperDim(0, -d - 1)


@dataclass(frozen=True)
class LedgerEntry:
    d: int
    lam: Weight
    m: int

    def to_json(self):
        return {"d": self.d, "lambda": list(self.lam), "m": self.m}


@dataclass(frozen=True)
class QuantumLedger:
    entries: Tuple[LedgerEntry, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        for e in self.entries:
            if e.m < 1:
                raise DomainError(f"multiplicity must be >= 1, got {e.m} at d={e.d}")

    @classmethod
    def from_triples(cls, triples: Iterable[Tuple[int, Iterable[int], int]]):
        return cls(tuple(LedgerEntry(int(d), tuple(lam), int(m)) for d, lam, m in triples))

    def degrees(self) -> List[int]:
        return sorted({e.d for e in self.entries})

    def at(self, d: int) -> List[LedgerEntry]:
        return [e for e in self.entries if e.d == d]

    def __add__(self, other):
        return QuantumLedger(self.entries + other.entries)

    def validate(self, group: GroupDescriptor):
        for e in self.entries:
            lam = group.check_weight(e.lam)
            if not group.is_dominant(lam):
                raise DomainError(f"ledger weight {lam} at d={e.d} is not dominant for {group.name}")

    def to_json(self):
        return {"entries": [e.to_json() for e in self.entries]}

    @classmethod
    def from_json(cls, obj):
        try:
            return cls.from_triples((e["d"], e["lambda"], e["m"]) for e in obj["entries"])
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed ledger JSON: {exc}") from None


def super_hilbert_dims(ledger: QuantumLedger, group: GroupDescriptor) -> Dict[int, SuperDim]:
    """Per-degree super dimension: sum of m * dim W^(d) * dim V_lambda."""
    ledger.validate(group)
    out: Dict[int, SuperDim] = {}
    for e in ledger.entries:
        contrib = cohomology_dims(e.d) * (e.m * weyl_dimension(group, e.lam))
        out[e.d] = out.get(e.d, ZERO) + contrib
    return out


def twist_dims(ledger: QuantumLedger, group: GroupDescriptor) -> Dict[Tuple[int, Weight, int], SuperDim]:
    """Dimensions after twisting by L^{-d}: each copy becomes V_lambda (x) W^(0).

    Keys are ``(d, lambda, j)`` with ``j`` running over ``1..m``.
    """
    ledger.validate(group)
    w0 = cohomology_dims(0)
    out: Dict[Tuple[int, Weight, int], SuperDim] = {}
    for e in ledger.entries:
        dim_v = weyl_dimension(group, e.lam)
        base = sum(1 for k in out if k[0] == e.d and k[1] == e.lam)
        for j in range(1, e.m + 1):
            out[(e.d, e.lam, base + j)] = w0 * dim_v
    return out


def twist_totals(ledger: QuantumLedger, group: GroupDescriptor) -> Dict[int, SuperDim]:
    out: Dict[int, SuperDim] = {}
    for (d, _, _), sd in twist_dims(ledger, group).items():
        out[d] = out.get(d, ZERO) + sd
    return out
