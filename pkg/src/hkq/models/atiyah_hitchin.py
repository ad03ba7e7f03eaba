"""Atiyah-Hitchin manifold: integrability of exp(-alpha Omega) and the w-coordinate.

Orbits are parametrised by the modulus k in (0, 1).  For the integral we
use x = -log(1 - k^2) in (0, inf), which resolves the k -> 1 end where the
integrand decays like a Gaussian in x; then dm = (1 - k^2) dx.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List

import numpy as np

from ..errors import DomainError
from ..specfun import _ah_arrays, ah_params

PHI_FACTOR = 2.0 * math.pi  # volume of the phi circle; rescales every value uniformly
_GL = np.polynomial.legendre.leggauss(10)


@dataclass(frozen=True)
class AHPoint:
    k: float
    a: complex
    b: complex
    theta: float = 0.0
    psi: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.k < 1.0:
            raise DomainError(f"modulus k={self.k!r} outside (0, 1)")
        norm = abs(self.a) ** 2 + abs(self.b) ** 2
        if abs(norm - 1.0) > 1e-12:
            raise DomainError(f"|a|^2 + |b|^2 = {norm!r}, expected 1")


def _w_formula(k1, k2, a, b):
    ac = np.conj(a)
    return k1 ** 2 * ac * (-12.0 * ac * b ** 2 * k2 + 4.0 * b ** 3 - 4.0 * ac ** 2 * b)


def ah_w(p: AHPoint) -> complex:
    """Closed-form holomorphic coordinate w at an SU(2) point (a, b)."""
    par = ah_params(p.k)
    return complex(_w_formula(par.k1, par.k2, complex(p.a), complex(p.b)))


def ah_w_bound(k: float) -> float:
    """16 k1^4 (9 k2^2 + 2), an upper bound for |w|^2 at modulus k."""
    par = ah_params(k)
    return 16.0 * par.k1 ** 4 * (9.0 * par.k2 ** 2 + 2.0)


def ah_wbound_check(k: float, samples: int = 100_000, seed: int = 0) -> dict:
    """Sample (a, b) uniformly on the unit 3-sphere and test the |w|^2 bound."""
    par = ah_params(k)
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(samples, 4))
    g /= np.linalg.norm(g, axis=1, keepdims=True)
    a = g[:, 0] + 1j * g[:, 1]
    b = g[:, 2] + 1j * g[:, 3]
    w2 = np.abs(_w_formula(par.k1, par.k2, a, b)) ** 2
    bound = 16.0 * par.k1 ** 4 * (9.0 * par.k2 ** 2 + 2.0)
    return {"k": k, "samples": samples, "seed": seed, "bound": bound,
            "max_w2": float(w2.max()), "max_ratio": float(w2.max() / bound),
            "violations": int(np.count_nonzero(w2 > bound))}


def _nodes(lo, hi, panels):
    x, w = _GL
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    return (mid[:, None] + half[:, None] * x).ravel(), (half[:, None] * w).ravel()


def _radial(x):
    m1 = np.exp(-x)
    m = -np.expm1(-x)
    K, _, bg, gd, bd = _ah_arrays(m, m1)
    return m, K, bg, gd, bd


def _cutoff(alpha):
    """x beyond which even the crude angular-uniform bound is negligible."""
    xs = np.arange(0.5, 700.0, 0.5)  # exp(-x) stays normal
    m, K, bg, gd, bd = _radial(xs)
    lower = (gd + bg + bd) / 8.0 + np.minimum(bg, bd) / 8.0
    logb = np.log(bg * gd * bd / (4.0 * m * K * K)) - alpha * lower
    peak = int(np.argmax(logb))
    below = np.nonzero(logb[peak:] < logb[peak] - 60.0)[0]
    if not below.size:
        raise DomainError(f"alpha={alpha} too small to locate an integration cutoff")
    return float(xs[peak + below[0]])


def _full(alpha, x_max, px, pt, pp):
    x, wx = _nodes(0.0, x_max, px)
    th, wt = _nodes(0.0, math.pi / 2.0, pt)
    ps, wp = _nodes(0.0, math.pi / 2.0, pp)
    m, K, bg, gd, bd = _radial(x)
    radial_w = wx * bg * gd * bd / (4.0 * m * K * K)
    s2 = np.sin(th) ** 2
    c2 = np.cos(th) ** 2
    cp2 = np.cos(ps) ** 2
    sp2 = np.sin(ps) ** 2
    wt_sin = wt * np.sin(th)
    total = 0.0
    chunk = max(1, 2_000_000 // (th.size * ps.size))
    for i in range(0, x.size, chunk):
        sl = slice(i, i + chunk)
        base = (bg[sl] + gd[sl] + bd[sl]) / 8.0
        omega = (base[:, None, None]
                 + (gd[sl, None, None] * s2[None, :, None] * cp2[None, None, :]
                    + bd[sl, None, None] * s2[None, :, None] * sp2[None, None, :]
                    + bg[sl, None, None] * c2[None, :, None]) / 8.0)
        ang = np.einsum("ijk,j,k->i", np.exp(-alpha * omega), wt_sin, wp)
        total += float(radial_w[sl] @ ang)
    # theta in [0, pi] and psi in [0, 2 pi] by symmetry, then the phi circle
    return 8.0 * PHI_FACTOR * total


def _majorant(alpha, x_max, px):
    """The one-dimensional comparison integral, as dx with dm = (1-k^2) dx."""
    x, wx = _nodes(0.0, x_max, px)
    m, K, bg, gd, bd = _radial(x)
    return float(wx @ (np.exp(-alpha * gd / 8.0) * bg * gd * bd / (m * K * K)))


def _rigorous_majorant(alpha, x_max, px):
    """Volume of SO(3) times the angle-free lower bound for Omega."""
    x, wx = _nodes(0.0, x_max, px)
    m, K, bg, gd, bd = _radial(x)
    lower = (gd + bg + bd) / 8.0 + np.minimum(bg, bd) / 8.0
    return 8.0 * math.pi ** 2 * float(wx @ (np.exp(-alpha * lower) * bg * gd * bd / (4.0 * m * K * K)))


@dataclass(frozen=True)
class AHIntegralResult:
    alpha: float
    value: float
    converged: bool
    levels: List[float]
    majorant: float
    majorant_converged: bool
    majorant_levels: List[float]
    rigorous_majorant: float
    x_max: float
    phi_factor: float = PHI_FACTOR

    def __iter__(self):
        return iter((self.value, self.converged))

    @staticmethod
    def rel_changes(levels):
        return [abs(b - a) / abs(b) for a, b in zip(levels, levels[1:])]

    def to_json(self):
        return {"alpha": self.alpha, "value": self.value, "converged": self.converged,
                "levels": self.levels, "rel_changes": self.rel_changes(self.levels),
                "majorant": self.majorant, "majorant_converged": self.majorant_converged,
                "majorant_levels": self.majorant_levels,
                "rigorous_majorant": self.rigorous_majorant,
                "x_max": self.x_max, "phi_factor": self.phi_factor}


def ah_integral(alpha: float, tol: float = 1e-6, doublings: int = 3,
                base_panels=(6, 2, 2)) -> AHIntegralResult:
    """Integral of exp(-alpha Omega) dvol over (0, 1) x SO(3), plus majorants.

    The mesh (panels of 10-point Gauss-Legendre in x, theta, psi) is doubled
    ``doublings`` times; ``converged`` requires every successive relative
    change to be at most ``tol``.
    """
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha!r}")
    x_max = _cutoff(alpha)
    px, pt, pp = base_panels
    levels, maj = [], []
    for lvl in range(doublings + 1):
        f = 2 ** lvl
        levels.append(_full(alpha, x_max, px * f, pt * f, pp * f))
        maj.append(_majorant(alpha, x_max, px * f))
    changes = AHIntegralResult.rel_changes(levels)
    maj_changes = AHIntegralResult.rel_changes(maj)
    return AHIntegralResult(
        alpha=alpha, value=levels[-1],
        converged=bool(all(c <= tol for c in changes) and math.isfinite(levels[-1])),
        levels=levels, majorant=maj[-1],
        majorant_converged=bool(all(c <= tol for c in maj_changes) and math.isfinite(maj[-1])),
        majorant_levels=maj,
        rigorous_majorant=_rigorous_majorant(alpha, x_max, px * 2 ** doublings),
        x_max=x_max)
