"""Taub-NUT metric on R^4 = C^2 with parameter a (a = 0 is flat).

Coordinate convention (isolated here): for flat coordinates (z1, z2),

    x1 = (|z1|^2 - |z2|^2) / 2,   x2 + i x3 = z1 z2,   r = (|z1|^2 + |z2|^2) / 2.

In Gibbons-Hawking form the metric has harmonic function
V = a^2 + 1/(2r); the flat case is V = 1/(2r), so in z-coordinates the
volume form is ``(1 + 2 a^2 r) d^4 z``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict

import numpy as np
from scipy.special import i0e

from ..errors import DomainError
from ..genseries import TruncatedSeries, localize
from ..specfun import integrate_adaptive
from .flat import FlatModel, flat_fixed_points


@dataclass(frozen=True)
class TaubNUTModel:
    a: float
    hbar: float = 1.0

    def __post_init__(self):
        if not self.a >= 0:
            raise DomainError(f"Taub-NUT parameter must be >= 0, got {self.a!r}")
        if not self.hbar > 0:
            raise DomainError(f"hbar must be positive, got {self.hbar!r}")


def taubnut_coords(m: TaubNUTModel, z1: complex, z2: complex, w2_uses: str = "x2") -> dict:
    """Hopf coordinates, potentials and the holomorphic coordinates (w1, w2).

    ``w2_uses`` selects the exponent in w2 = exp(-a^2 x) z2: ``"x2"`` as
    printed, or ``"x1"`` for the variant consistent with the torus weight.
    """
    if w2_uses not in ("x1", "x2"):
        raise DomainError("w2_uses must be 'x1' or 'x2'")
    z1, z2 = complex(z1), complex(z2)
    a2 = m.a * m.a
    n1, n2 = abs(z1) ** 2, abs(z2) ** 2
    x1 = (n1 - n2) / 2.0
    p = z1 * z2
    x2, x3 = p.real, p.imag
    r = (n1 + n2) / 2.0
    mu = r + a2 * (x2 ** 2 + x3 ** 2)
    mu_j = r + a2 * (x1 ** 2 + x3 ** 2)
    mu_k = r + a2 * (x1 ** 2 + x2 ** 2)
    phi = r + a2 / 2.0 * (r ** 2 + x1 ** 2)
    w1 = math.exp(a2 * x1) * z1
    w2 = math.exp(-a2 * (x2 if w2_uses == "x2" else x1)) * z2
    return {"x1": x1, "x2": x2, "x3": x3, "r": r, "mu": mu, "mu_j": mu_j,
            "mu_k": mu_k, "phi": phi, "w1": w1, "w2": w2}


@dataclass(frozen=True)
class TNL2Result:
    value: float
    converged: bool
    tail_bound: float
    quad_error: float
    radius: float

    def __iter__(self):
        return iter((self.value, self.converged))

    def to_json(self):
        return {"value": self.value, "converged": self.converged, "tail_bound": self.tail_bound,
                "quad_error": self.quad_error, "radius": self.radius}


_GL8 = np.polynomial.legendre.leggauss(8)


def _composite_nodes(lo, hi, panels, rule=_GL8):
    x, w = rule
    edges = np.linspace(lo, hi, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def _log_integrand(m: TaubNUTModel, n, mm, r, s, w2_uses):
    """log of the (r, s)-density after the two angular integrals are done.

    u1 = r s, u2 = r (1 - s) are |z1|^2/2, |z2|^2/2; d^4z = r dr ds dth1 dth2.
    The angle th1 gives 2 pi, the relative angle sigma = th1 + th2 enters only
    through x2 = 2 sqrt(u1 u2) cos(sigma) and integrates to 2 pi I0(.).
    """
    a2, hb = m.a * m.a, m.hbar
    u1, u2 = r * s, r * (1.0 - s)
    x1 = u1 - u2
    phi = r + a2 / 2.0 * (r * r + x1 * x1)
    out = -phi / hb + np.log1p(2.0 * a2 * r) + np.log(r)
    if n:
        out = out + n * np.log(2.0 * u1)
    if mm:
        out = out + mm * np.log(2.0 * u2)
    if w2_uses == "x2":
        out = out + 2.0 * a2 * n * x1
        c = 4.0 * a2 * mm * np.sqrt(u1 * u2)
        out = out + np.log(i0e(c)) + c
    else:
        out = out + 2.0 * a2 * (n - mm) * x1
    return out + 2.0 * math.log(2.0 * math.pi)


def _tail_bound(m: TaubNUTModel, p: int, radius: float) -> float:
    """Majorant for the integral over r > radius.

    Uses |x1|, |x2| <= r, |z1|^2, |z2|^2 <= 2r and phi >= r + a^2 r^2 / 2.
    """
    a2, hb = m.a * m.a, m.hbar

    def f(r):
        return ((2.0 * r) ** p * r * (1.0 + 2.0 * a2 * r)
                * np.exp(2.0 * a2 * p * r - r / hb - a2 * r * r / (2.0 * hb)))

    val, _ = integrate_adaptive(f, radius, math.inf, tol=1e-300, rtol=1e-6)
    return 4.0 * math.pi ** 2 * val


def _disk_integral(m, n, mm, radius, panels, s_nodes, w2_uses):
    r, wr = _composite_nodes(0.0, radius, panels)
    s, ws = _composite_nodes(0.0, 1.0, 1, np.polynomial.legendre.leggauss(s_nodes))
    logf = _log_integrand(m, n, mm, r[:, None], s[None, :], w2_uses)
    shift = float(np.max(logf))
    return math.exp(shift) * float(wr @ np.exp(logf - shift) @ ws)


def taubnut_l2(m: TaubNUTModel, n: int, mm: int, tol: float = 1e-6, cap: int = 4,
               w2_uses: str = "x2", max_doublings: int = 8) -> TNL2Result:
    """Squared L2 norm of w1^n w2^mm psi0 for the Taub-NUT volume.

    The radius is grown until the majorant tail is below ``tol`` relative to
    the value; the disk integral is refined by doubling until two successive
    values agree to ``tol / 10``.
    """
    if n < 0 or mm < 0:
        raise DomainError("exponents must be nonnegative")
    if n + mm > cap:
        raise DomainError(f"n + m = {n + mm} exceeds the configured cap {cap}")
    p = n + mm
    hb = m.hbar
    radius = 8.0 * hb * (p + 2)
    panels, s_nodes = 8, 16
    value = _disk_integral(m, n, mm, radius, panels, s_nodes, w2_uses)
    tail = _tail_bound(m, p, radius)
    for _ in range(60):
        if tail <= tol * value:
            break
        radius *= 1.5
        value = _disk_integral(m, n, mm, radius, panels, s_nodes, w2_uses)
        tail = _tail_bound(m, p, radius)
    quad_err = math.inf
    for _ in range(max_doublings):
        panels *= 2
        s_nodes *= 2
        refined = _disk_integral(m, n, mm, radius, panels, s_nodes, w2_uses)
        quad_err = abs(refined - value)
        value = refined
        if quad_err <= tol * 0.1 * abs(value):
            break
    converged = bool(math.isfinite(value) and tail <= tol * value
                     and quad_err <= tol * 0.1 * abs(value))
    return TNL2Result(value, converged, tail, quad_err, radius)


def taubnut_series(order: int) -> TruncatedSeries:
    """H'(t, x) for Taub-NUT: identical to the flat n = 1 series."""
    if order < 0:
        raise DomainError(f"order must be >= 0, got {order}")
    return localize(flat_fixed_points(FlatModel(1)), order)


def taubnut_weight_table(d: int) -> Dict[int, int]:
    """Torus weight n - m -> number of monomials w1^n w2^m with n + m = d."""
    if d < 0:
        raise DomainError("degree must be >= 0")
    out: Dict[int, int] = {}
    for n in range(d + 1):
        w = n - (d - n)
        out[w] = out.get(w, 0) + 1
    return out
