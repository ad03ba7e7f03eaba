"""ADHM data (alpha0, alpha1, a, b) for framed instantons of charge k, rank r.

Shapes: alpha0, alpha1 are k x k, a is r x k (a map C^k -> C^r), b is
k x r.  The complex equation is [alpha0, alpha1] + b a = 0, which is the
only product of a and b that is k x k.  GL(k) acts by

    g.(alpha0, alpha1, a, b) = (g alpha0 g^-1, g alpha1 g^-1, a g^-1, g b),

which is the action that preserves both the equation and the shapes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DimensionError, DomainError


def _matrix_to_json(m):
    """Row-major flat list of [re, im] pairs."""
    return [[float(z.real), float(z.imag)] for z in np.ravel(m)]


def _matrix_from_json(obj, shape, name):
    arr = np.asarray(obj, dtype=float)
    # accepts the flat row-major form and also nested rows of pairs
    if arr.ndim == 2 and arr.shape[-1] == 2:
        if arr.shape[0] != shape[0] * shape[1]:
            raise DimensionError(f"{name}: expected {shape[0] * shape[1]} entries, got {arr.shape[0]}")
        arr = arr.reshape(shape + (2,))
    if arr.ndim != 3 or arr.shape != shape + (2,):
        raise DimensionError(f"{name}: expected a {shape[0]}x{shape[1]} matrix of [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


@dataclass(frozen=True, eq=False)
class ADHMDatum:
    k: int
    r: int
    alpha0: np.ndarray
    alpha1: np.ndarray
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        if self.k < 1:
            raise DomainError(f"k must be >= 1, got {self.k}")
        if self.r < 2:
            raise DomainError(f"r must be >= 2, got {self.r}")
        want = {"alpha0": (self.k, self.k), "alpha1": (self.k, self.k),
                "a": (self.r, self.k), "b": (self.k, self.r)}
        for name, shape in want.items():
            m = np.asarray(getattr(self, name), dtype=complex)
            if m.shape != shape:
                raise DimensionError(f"{name} has shape {m.shape}, expected {shape}")
            object.__setattr__(self, name, m)

    def to_json(self):
        return {"k": self.k, "r": self.r,
                **{n: _matrix_to_json(getattr(self, n)) for n in ("alpha0", "alpha1", "a", "b")}}

    @classmethod
    def from_json(cls, obj):
        try:
            k, r = int(obj["k"]), int(obj["r"])
            return cls(k, r,
                       _matrix_from_json(obj["alpha0"], (k, k), "alpha0"),
                       _matrix_from_json(obj["alpha1"], (k, k), "alpha1"),
                       _matrix_from_json(obj["a"], (r, k), "a"),
                       _matrix_from_json(obj["b"], (k, r), "b"))
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed ADHM datum JSON: {exc}") from None


@dataclass(frozen=True)
class ADHMReport:
    complex_residual: float
    real_residual: float
    injective: bool
    surjective: bool
    norm: float
    tol: float

    @property
    def stable(self) -> bool:
        return self.injective and self.surjective

    @property
    def on_variety(self) -> bool:
        return self.complex_residual <= self.tol

    def to_json(self):
        return {"complex_residual": self.complex_residual, "real_residual": self.real_residual,
                "stable": self.stable, "injective": self.injective, "surjective": self.surjective,
                "on_variety": self.on_variety, "norm": self.norm}


def _comm(x, y):
    return x @ y - y @ x


def complex_residual(d: ADHMDatum) -> float:
    return float(np.linalg.norm(_comm(d.alpha0, d.alpha1) + d.b @ d.a))


def real_residual(d: ADHMDatum) -> float:
    h = lambda m: m.conj().T
    mu = (_comm(d.alpha0, h(d.alpha0)) + _comm(d.alpha1, h(d.alpha1))
          + d.b @ h(d.b) - h(d.a) @ d.a)
    return float(np.linalg.norm(mu))


def _null(m, tol):
    """Orthonormal basis (columns) of the numerical kernel of ``m``."""
    n = m.shape[1]
    if m.shape[0] == 0:
        return np.eye(n, dtype=complex)
    _, s, vh = np.linalg.svd(m)
    scale = max(float(s[0]) if s.size else 0.0, 1.0)
    rank = int(np.count_nonzero(s > tol * scale))
    return vh[rank:].conj().T


def _has_eigvec_in(q, x, tol):
    """Does ``x`` have an eigenvector in span(q)?  (q orthonormal columns.)

    Shrinks W to {v in W : x v in W} until stable; the limit is the largest
    x-invariant subspace of span(q), nonzero iff it holds an eigenvector.
    """
    n = x.shape[0]
    while q.shape[1]:
        proj = np.eye(n) - q @ q.conj().T
        c = _null(proj @ x @ q, tol)
        if c.shape[1] == q.shape[1]:
            return True
        q = q @ c
        if q.shape[1]:
            q, _ = np.linalg.qr(q)
    return False


def _injective(x0, x1, a, tol):
    """No common eigenvector of (x0, x1) lies in ker a."""
    k = x0.shape[0]
    eig = np.linalg.eigvals(x0)
    seen = []
    scale = max(1.0, float(np.abs(eig).max()) if eig.size else 1.0)
    for lam in eig:
        if any(abs(lam - s) <= 1e-6 * scale for s in seen):
            continue
        seen.append(lam)
        q = _null(np.vstack([x0 - lam * np.eye(k), a]), tol)
        if q.shape[1] and _has_eigvec_in(q, x1, tol):
            return False
    return True


def adhm_check(d: ADHMDatum, tol: float = 1e-9) -> ADHMReport:
    """Residuals of both moment maps, stability, and the norm functional.

    Stability: the column operator (alpha0 + l, alpha1 + m, a) is injective and
    the row operator (l - alpha0, alpha1 - m, b) surjective for all l, m.  The
    dual condition is the injectivity test for the transposed triple.
    """
    if not tol > 0:
        raise DomainError("tol must be positive")
    inj = _injective(d.alpha0, d.alpha1, d.a, tol)
    sur = _injective(d.alpha0.T, d.alpha1.T, d.b.T, tol)
    norm = float(sum(np.linalg.norm(m) ** 2 for m in (d.alpha0, d.alpha1, d.a, d.b)))
    return ADHMReport(complex_residual(d), real_residual(d), inj, sur, norm, tol)


def act(d: ADHMDatum, g) -> ADHMDatum:
    g = np.asarray(g, dtype=complex)
    if g.shape != (d.k, d.k):
        raise DimensionError(f"group element has shape {g.shape}, expected {(d.k, d.k)}")
    gi = np.linalg.inv(g)
    return ADHMDatum(d.k, d.r, g @ d.alpha0 @ gi, g @ d.alpha1 @ gi, d.a @ gi, g @ d.b)


def random_datum(k: int, r: int, rng: np.random.Generator) -> ADHMDatum:
    def cg(*shape):
        return rng.normal(size=shape) + 1j * rng.normal(size=shape)

    return ADHMDatum(k, r, cg(k, k), cg(k, k), cg(r, k), cg(k, r))


def zero_datum(k: int = 1, r: int = 2) -> ADHMDatum:
    z = lambda *s: np.zeros(s, dtype=complex)
    return ADHMDatum(k, r, z(k, k), z(k, k), z(r, k), z(k, r))


def hand_datum() -> ADHMDatum:
    """k = 1, r = 2 with b a = 0 and both stability conditions satisfied."""
    return ADHMDatum(1, 2, [[0]], [[0]], [[1], [0]], [[0, 1]])


def hand_datum_k2() -> ADHMDatum:
    """k = 2, r = 2: commuting diagonal alphas with b a = 0, stable."""
    return ADHMDatum(2, 2, np.diag([1, 2]), np.diag([3, -1]),
                     [[1, 1], [0, 0]], [[0, 1], [0, 1]])
