"""Elliptic integrals, Atiyah-Hitchin metric coefficients, adaptive quadrature.

The AGM routines take the modulus squared ``m = k**2`` together with its
complement ``m1 = 1 - k**2`` so that the regime k -> 1 (where all the
interesting asymptotics live) never loses precision to ``1 - k*k``.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable, Tuple

import numpy as np

from .errors import ConvergenceError, DomainError

_EPS = np.finfo(float).eps


def agm_elliptic(m, m1):
    """Vectorised AGM returning ``(K, S)`` with ``E = K * (1 - S)``.

    ``S = 1/2 * sum_n 2**n c_n**2`` so ``K - E = K * S`` is available
    without cancellation.  The first step and the recurrence
    ``c_{n+1} = c_n**2 / (4 a_{n+1})`` avoid subtracting nearly equal numbers.
    """
    m = np.asarray(m, dtype=float)
    m1 = np.asarray(m1, dtype=float)
    kp = np.sqrt(m1)
    a = (1.0 + kp) / 2.0
    b = np.sqrt(kp)
    c = m / (2.0 * (1.0 + kp))
    s = 0.5 * m + c * c
    p = 2.0
    for _ in range(64):
        if np.all(c <= _EPS * a * 1e-3):
            break
        a_next = (a + b) / 2.0
        b = np.sqrt(a * b)
        c = c * c / (4.0 * a_next)
        a = a_next
        s = s + p * c * c
        p *= 2.0
    else:  # pragma: no cover - quadratic convergence makes this unreachable
        raise ConvergenceError("AGM iteration did not converge")
    return np.pi / (2.0 * a), s


def _check_modulus(k, upper_inclusive):
    if not (0.0 <= k < 1.0 or (upper_inclusive and k == 1.0)):
        rng = "[0, 1]" if upper_inclusive else "[0, 1)"
        raise DomainError(f"modulus k={k!r} outside {rng}")


def elliptic_K(k: float) -> float:
    """Complete elliptic integral of the first kind, modulus convention."""
    k = float(k)
    _check_modulus(k, upper_inclusive=False)
    K, _ = agm_elliptic(k * k, (1.0 - k) * (1.0 + k))
    return float(K)


def elliptic_E(k: float) -> float:
    """Complete elliptic integral of the second kind, modulus convention."""
    k = float(k)
    _check_modulus(k, upper_inclusive=True)
    if k == 1.0:
        return 1.0
    K, S = agm_elliptic(k * k, (1.0 - k) * (1.0 + k))
    return float(K * (1.0 - S))


@dataclass(frozen=True)
class AHParams:
    """Metric coefficients of the Atiyah-Hitchin manifold at modulus k.

    ``bg, gd, bd`` are the pairwise products beta*gamma, gamma*delta,
    beta*delta; ``b2, g2, d2`` the squares recovered from them.
    """

    k: float
    m1: float
    K: float
    E: float
    bg: float
    gd: float
    bd: float
    b2: float
    g2: float
    d2: float
    k1: float
    k2: float

    def to_json(self):
        return {f: getattr(self, f) for f in self.__dataclass_fields__}


def _ah_arrays(m, m1):
    K, S = agm_elliptic(m, m1)
    K2 = K * K
    bg = -K2 * (1.0 - S)
    gd = K2 * S
    bd = K2 * (S - m)
    return K, S, bg, gd, bd


def _params(k, m, m1):
    kp = math.sqrt(m1)
    K, S, bg, gd, bd = (float(x) for x in _ah_arrays(m, m1))
    E = K * (1.0 - S)
    return AHParams(
        k=k, m1=m1, K=K, E=E, bg=bg, gd=gd, bd=bd,
        b2=bg * bd / gd, g2=bg * gd / bd, d2=gd * bd / bg,
        k1=math.sqrt(k * kp) * K / 2.0,
        k2=(1.0 - 2.0 * m) / (3.0 * k * kp),
    )


def ah_params_from_m1(m1: float) -> AHParams:
    """Parameters at modulus k with ``1 - k**2 = m1`` given directly."""
    m1 = float(m1)
    if not 0.0 < m1 < 1.0:
        raise DomainError(f"1 - k^2 = {m1!r} must lie in (0, 1)")
    m = 1.0 - m1
    return _params(math.sqrt(m), m, m1)


def ah_params(k: float) -> AHParams:
    k = float(k)
    if not 0.0 < k < 1.0:
        raise DomainError(f"modulus k={k!r} outside (0, 1)")
    return _params(k, k * k, (1.0 - k) * (1.0 + k))


def ah_potential(p: AHParams, theta, psi):
    """Kaehler potential Omega at Euler angles (theta, psi); broadcasts."""
    st2 = np.sin(theta) ** 2
    return ((p.bg + p.gd + p.bd) / 8.0
            + (p.gd * st2 * np.cos(psi) ** 2 + p.bd * st2 * np.sin(psi) ** 2
               + p.bg * np.cos(theta) ** 2) / 8.0)


def ah_potential_lower_bound(p: AHParams, theta=None):
    """A lower bound for Omega over psi (and over theta when ``theta`` is None).

    Uses only bg, bd <= 0 <= gd:
    ``Omega >= gd/8 + (bg + bd)/8 + (bg cos^2 theta + bd sin^2 theta)/8``.
    """
    base = (p.gd + p.bg + p.bd) / 8.0
    if theta is None:
        return base + min(p.bg, p.bd) / 8.0
    return base + (p.bg * np.cos(theta) ** 2 + p.bd * np.sin(theta) ** 2) / 8.0


def ah_volume_density(p: AHParams) -> float:
    """beta^2 gamma^2 delta^2 / (4 k^2 (1 - k^2) K^2), density in m = k^2."""
    return p.bg * p.gd * p.bd / (4.0 * p.k ** 2 * p.m1 * p.K ** 2)


# -- adaptive quadrature ----------------------------------------------------

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(15)


def _map_interval(f, a, b):
    """Return (g, lo, hi) with int_a^b f = int_lo^hi g and finite lo, hi."""
    if math.isinf(a) and math.isinf(b):
        if a > 0 or b < 0:
            raise DomainError("integration limits must satisfy a < b")

        def g(t):
            u = 1.0 - t * t
            return f(t / u) * (1.0 + t * t) / (u * u)

        return g, -1.0, 1.0
    if math.isinf(b):
        def g(t):
            u = 1.0 - t
            return f(a + t / u) / (u * u)

        return g, 0.0, 1.0
    if math.isinf(a):
        def g(t):
            return f(b - (1.0 - t) / t) / (t * t)

        return g, 0.0, 1.0
    return f, a, b


def _vectorized(f):
    """Wrap ``f`` so it accepts node arrays, falling back to a scalar loop."""
    probe = np.array([0.25, 0.5])
    try:
        out = np.asarray(f(probe), dtype=float)
        if out.shape == probe.shape:
            return f
    except (TypeError, ValueError):
        pass
    return lambda x: np.array([f(float(xi)) for xi in x], dtype=float)


def _gauss(g, lo, hi):
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    x = mid + half * _GL_NODES
    return half * float(np.dot(_GL_WEIGHTS, g(x)))


def integrate_adaptive(f: Callable, a: float, b: float, tol: float = 1e-10,
                       rtol: float = 0.0, max_intervals: int = 4000) -> Tuple[float, float]:
    """Globally adaptive Gauss-Legendre quadrature on (a, b).

    Infinite limits are mapped to finite ones; nodes are strictly interior
    so integrable endpoint singularities are handled by bisection.  ``f``
    may be vectorised (called with an array) or scalar.  Returns
    ``(value, error_estimate)``; the estimate compares each interval's
    15-point rule with the sum over its two halves.
    """
    if not tol > 0:
        raise DomainError("tol must be positive")
    if a == b:
        return 0.0, 0.0
    sign = 1.0
    if a > b:
        a, b, sign = b, a, -1.0
    g, lo, hi = _map_interval(f, float(a), float(b))
    g = _vectorized(g)

    def piece(l, h):
        mid = 0.5 * (l + h)
        whole = _gauss(g, l, h)
        left = _gauss(g, l, mid)
        right = _gauss(g, mid, h)
        return left + right, abs(left + right - whole)

    val, err = piece(lo, hi)
    heap = [(-err, lo, hi, val)]
    total, total_err = val, err
    while True:
        if not math.isfinite(total):
            raise ConvergenceError("integrand produced non-finite values", total, total_err)
        if total_err <= max(tol, rtol * abs(total)):
            # resum exactly before accepting; incremental updates drift
            total = math.fsum(item[3] for item in heap)
            total_err = math.fsum(-item[0] for item in heap)
            if total_err <= max(tol, rtol * abs(total)):
                return sign * total, total_err
        if len(heap) >= max_intervals:
            raise ConvergenceError(
                f"no convergence within {max_intervals} subintervals",
                sign * total, total_err)
        neg_err, l, h, v = heapq.heappop(heap)
        mid = 0.5 * (l + h)
        if not l < mid < h:
            raise ConvergenceError("interval became too small to bisect", sign * total, total_err)
        v1, e1 = piece(l, mid)
        v2, e2 = piece(mid, h)
        heapq.heappush(heap, (-e1, l, mid, v1))
        heapq.heappush(heap, (-e2, mid, h, v2))
        total += v1 + v2 - v
        total_err += e1 + e2 + neg_err
