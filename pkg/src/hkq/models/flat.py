"""Flat quaternionic space H^n with symmetry group Sp(n)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from ..charring import GroupDescriptor, weyl_dimension
from ..cp1rep import QuantumLedger, super_hilbert_dims
from ..errors import DomainError
from ..genseries import FixedPointDatum, Monomial, RationalForm


@dataclass(frozen=True)
class FlatModel:
    n: int
    hbar: float = 1.0

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise DomainError(f"quaternionic dimension must be >= 1, got {self.n!r}")
        if not self.hbar > 0:
            raise DomainError(f"hbar must be positive, got {self.hbar!r}")

    @property
    def group(self) -> GroupDescriptor:
        return GroupDescriptor.sp(self.n)


def _unit(n, i, sign=1):
    return tuple(sign if j == i else 0 for j in range(n))


def _cotangent(n):
    out = []
    for i in range(n):
        out.append(Monomial(1, _unit(n, i, 1)))
        out.append(Monomial(1, _unit(n, i, -1)))
    return tuple(out)


def flat_fixed_points(m: FlatModel) -> List[FixedPointDatum]:
    """The origin is the only fixed point; weights t*x_i^{+-1} on coordinates."""
    return [FixedPointDatum(Monomial(0, (0,) * m.n), _cotangent(m.n))]


def flat_closed_form(m: FlatModel) -> RationalForm:
    """1 / prod_i (1 - t x_i)(1 - t / x_i)."""
    return RationalForm(Monomial(0, (0,) * m.n), _cotangent(m.n))


def flat_rank_form(m: FlatModel) -> RationalForm:
    """1 / (1 - t)^{2n}, the ungraded rank series (rank-0 weights)."""
    return RationalForm(Monomial(0, ()), (Monomial(1, ()),) * (2 * m.n))


def flat_multiplicity_ledger(m: FlatModel, dmax: int) -> QuantumLedger:
    """Degree d carries Sym^d of the defining module once, weight (d, 0, ..., 0)."""
    if dmax < 0:
        raise DomainError(f"dmax must be >= 0, got {dmax}")
    return QuantumLedger.from_triples(
        (d, (d,) + (0,) * (m.n - 1), 1) for d in range(dmax + 1))


def flat_dimension_report(m: FlatModel, dmax: int) -> List[dict]:
    """Super dimensions per degree next to the two binomial closed forms.

    ``sym_dim`` is dim Sym^d C^{2n} from the Weyl dimension formula;
    ``even_formula`` is (d+1) C(2n+d-1, d) and ``alt_formula`` is
    (d+1) C(2n+d, d), the other value found in the literature.
    """
    ledger = flat_multiplicity_ledger(m, dmax)
    dims = super_hilbert_dims(ledger, m.group)
    rows = []
    for d in range(dmax + 1):
        sd = dims[d]
        rows.append({
            "d": d,
            "even": sd.even,
            "odd": sd.odd,
            "sym_dim": weyl_dimension(m.group, (d,) + (0,) * (m.n - 1)),
            "even_formula": (d + 1) * math.comb(2 * m.n + d - 1, d),
            "alt_formula": (d + 1) * math.comb(2 * m.n + d, d),
        })
    return rows


def gaussian_pairing(m: FlatModel, alpha: Sequence[int], beta: Sequence[int]) -> float:
    """<z^alpha psi0, z^beta psi0> with psi0^2 = exp(-|z|^2 / 2 hbar) on C^{2n}."""
    alpha, beta = tuple(alpha), tuple(beta)
    if len(alpha) != 2 * m.n or len(beta) != 2 * m.n:
        raise DomainError(f"multi-indices must have length {2 * m.n}")
    if any(x < 0 for x in alpha + beta):
        raise DomainError("multi-indices must be nonnegative")
    if alpha != beta:
        return 0.0
    out = 1.0
    for a in alpha:
        out *= math.pi * (2.0 * m.hbar) ** (a + 1) * math.factorial(a)
    return out


def gaussian_pairing_mc(m: FlatModel, alpha: Sequence[int], beta: Sequence[int],
                        samples: int = 200_000, seed: int = 0):
    """Monte-Carlo estimate of :func:`gaussian_pairing`; returns (mean, stderr).

    Samples z from the normalised Gaussian measure (each real coordinate has
    variance hbar) and rescales by the total mass (2 pi hbar)^{2n}.
    """
    rng = np.random.default_rng(seed)
    dim = 2 * m.n
    z = rng.normal(scale=math.sqrt(m.hbar), size=(samples, dim)) \
        + 1j * rng.normal(scale=math.sqrt(m.hbar), size=(samples, dim))
    za = np.prod(z ** np.asarray(alpha), axis=1)
    zb = np.prod(z ** np.asarray(beta), axis=1)
    vals = za * np.conj(zb) * (2.0 * math.pi * m.hbar) ** dim
    mean = vals.mean()
    stderr = vals.std(ddof=1) / math.sqrt(samples)
    return complex(mean), float(stderr)
