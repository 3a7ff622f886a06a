"""Projections in M_n(C): order, lattice operations, Rickart projections.

All structural tests use the max-entry norm against ``Tolerances.proj``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import (
    DimMismatch,
    NotAProjection,
    NotHermitian,
    NotOrthogonal,
    ToleranceViolated,
)


@dataclass(frozen=True)
class Tolerances:
    proj: float = 1e-9     # hermitian / idempotent / orthogonality checks, rank cut
    val: float = 1e-9      # "probability one"
    limit: float = 1e-6    # agreement of iterative limits
    cap: int = 200         # squarings allowed in the meet iterate
    cauchy: float = 1e-10  # early exit of the meet iterate

    def __post_init__(self):
        for name in ("proj", "val", "limit", "cauchy"):
            v = getattr(self, name)
            if not (0 < v < 1e-2):
                raise ValueError(f"tolerance {name}={v} must lie in (0, 1e-2)")
        if self.cap < 1:
            raise ValueError("iterate cap must be at least 1")


DEFAULT_TOL = Tolerances()


def maxnorm(a: np.ndarray) -> float:
    return float(np.max(np.abs(a))) if a.size else 0.0


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


class MatProjection:
    """Hermitian idempotent n x n matrix (validated on construction)."""

    __slots__ = ("m",)

    def __init__(self, m, tol: Tolerances = DEFAULT_TOL, check: bool = True):
        m = _frozen(m)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimMismatch(f"projection must be square, got shape {m.shape}")
        if check:
            herm = maxnorm(m - m.conj().T)
            idem = maxnorm(m @ m - m)
            if herm > tol.proj or idem > tol.proj:
                raise NotAProjection(
                    f"not a projection: |M-M*| = {herm:.3g}, |M^2-M| = {idem:.3g}",
                    witness=(herm, idem),
                )
        object.__setattr__(self, "m", m)

    def __setattr__(self, *_):
        raise AttributeError("MatProjection is immutable")

    @property
    def dim(self) -> int:
        return self.m.shape[0]

    @property
    def rank(self) -> int:
        return int(round(np.trace(self.m).real))

    def close(self, other: "MatProjection", tol: float = DEFAULT_TOL.proj) -> bool:
        return self.dim == other.dim and maxnorm(self.m - other.m) <= tol

    def is_zero(self, tol: float = DEFAULT_TOL.proj) -> bool:
        return maxnorm(self.m) <= tol

    def __repr__(self):
        return f"MatProjection(dim={self.dim}, rank={self.rank})"

    @classmethod
    def zero(cls, n: int) -> "MatProjection":
        return cls(np.zeros((n, n)), check=False)

    @classmethod
    def one(cls, n: int) -> "MatProjection":
        return cls(np.eye(n), check=False)

    @classmethod
    def onto(cls, vectors, tol: Tolerances = DEFAULT_TOL) -> "MatProjection":
        """Orthogonal projector onto the span of the given columns."""
        return cls(_range_projector(np.atleast_2d(np.asarray(vectors, dtype=complex)), tol.proj), check=False)


def _same_dim(*ps):
    dims = {p.dim if isinstance(p, MatProjection) else np.shape(p)[0] for p in ps}
    if len(dims) != 1:
        raise DimMismatch(f"dimension mismatch: {sorted(dims)}", witness=tuple(sorted(dims)))
    return dims.pop()


def _range_projector(a: np.ndarray, cut: float) -> np.ndarray:
    """Projector onto range(a) from an SVD with singular-value cut."""
    if a.size == 0:
        return np.zeros((a.shape[0], a.shape[0]), dtype=complex)
    u, s, _ = np.linalg.svd(a)
    r = int(np.sum(s > cut))
    ur = u[:, :r]
    return ur @ ur.conj().T


def _kernel_projector(a: np.ndarray, cut: float) -> np.ndarray:
    """Projector onto ker(a) (columns index the domain)."""
    _, s, vh = np.linalg.svd(a)
    r = int(np.sum(s > cut))
    k = vh[r:].conj().T
    return k @ k.conj().T


def _symmetrize(a: np.ndarray) -> np.ndarray:
    return (a + a.conj().T) / 2


# ------------------------------------------------------------------ lattice


def proj_order(p: MatProjection, q: MatProjection, tol: Tolerances = DEFAULT_TOL) -> bool:
    """p <= q iff pq = qp = p."""
    _same_dim(p, q)
    return maxnorm(p.m @ q.m - p.m) <= tol.proj and maxnorm(q.m @ p.m - p.m) <= tol.proj


def proj_perp(p: MatProjection) -> MatProjection:
    return MatProjection(np.eye(p.dim) - p.m, check=False)


def proj_meet(p: MatProjection, q: MatProjection, tol: Tolerances = DEFAULT_TOL) -> MatProjection:
    """Projector onto range(p) n range(q) = ker [1-p; 1-q]."""
    n = _same_dim(p, q)
    one = np.eye(n)
    stacked = np.vstack([one - p.m, one - q.m])
    return MatProjection(_symmetrize(_kernel_projector(stacked, tol.proj)), check=False)


def proj_join(p: MatProjection, q: MatProjection, tol: Tolerances = DEFAULT_TOL) -> MatProjection:
    return proj_perp(proj_meet(proj_perp(p), proj_perp(q), tol))


def commute(p, q, tol: Tolerances = DEFAULT_TOL) -> float:
    """Commutator norm ||pq - qp||."""
    a = p.m if isinstance(p, MatProjection) else np.asarray(p)
    b = q.m if isinstance(q, MatProjection) else np.asarray(q)
    return maxnorm(a @ b - b @ a)


@dataclass(frozen=True)
class IterateResult:
    matrix: np.ndarray
    squarings: int
    converged: bool


def meet_by_iteration(p: MatProjection, q: MatProjection, tol: Tolerances = DEFAULT_TOL) -> IterateResult:
    """Strong limit of (pq)^m, reached by repeated squaring T <- T^2.

    After k squarings T = (pq)^(2^k); the loop stops once consecutive
    iterates differ by at most ``tol.cauchy`` or after ``tol.cap`` squarings.
    """
    _same_dim(p, q)
    t = p.m @ q.m
    for k in range(1, tol.cap + 1):
        t2 = t @ t
        if maxnorm(t2 - t) <= tol.cauchy:
            return IterateResult(t2, k, True)
        t = t2
    return IterateResult(t, tol.cap, False)


# ------------------------------------------------------------------ Rickart


def spectral_projections(a: np.ndarray, tol: Tolerances = DEFAULT_TOL) -> list[tuple[float, np.ndarray]]:
    """Eigenvalue/projector pairs of a hermitian matrix, degenerate
    eigenvalues (within ``tol.proj``) grouped before anything is thresholded."""
    a = np.asarray(a, dtype=complex)
    herm = maxnorm(a - a.conj().T)
    if herm > tol.proj:
        raise NotHermitian(f"matrix is not hermitian (|a-a*| = {herm:.3g})", witness=(herm,))
    w, v = np.linalg.eigh(_symmetrize(a))
    groups: list[list[int]] = []
    for k in range(len(w)):
        if groups and w[k] - w[groups[-1][-1]] <= tol.proj:
            groups[-1].append(k)
        else:
            groups.append([k])
    out = []
    for g in groups:
        vg = v[:, g]
        out.append((float(np.mean(w[g])), vg @ vg.conj().T))
    return out


def support(a, tol: Tolerances = DEFAULT_TOL) -> MatProjection:
    """[a > 0]: spectral projection onto the strictly positive eigenvalues."""
    n = np.shape(a)[0]
    acc = np.zeros((n, n), dtype=complex)
    for lam, e in spectral_projections(a, tol):
        if lam > tol.proj:
            acc += e
    return MatProjection(acc, check=False)


def zero_projection(a, tol: Tolerances = DEFAULT_TOL) -> MatProjection:
    """[a = 0]: spectral projection onto the kernel of a hermitian a."""
    n = np.shape(a)[0]
    acc = np.zeros((n, n), dtype=complex)
    for lam, e in spectral_projections(a, tol):
        if abs(lam) <= tol.proj:
            acc += e
    return MatProjection(acc, check=False)


def positive_part(a, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    n = np.shape(a)[0]
    acc = np.zeros((n, n), dtype=complex)
    for lam, e in spectral_projections(a, tol):
        if lam > 0:
            acc += lam * e
    return acc


@dataclass(frozen=True)
class RickartProjections:
    RP: MatProjection
    LP: MatProjection
    support: MatProjection | None


def rickart_projections(x, context=None, tol: Tolerances = DEFAULT_TOL) -> RickartProjections:
    """RP[x] (onto range x*) and LP[x] (onto range x) via SVD.

    The right annihilator of x is (1 - RP[x]) A.  ``support`` is [x > 0]
    when x is hermitian, else None.  With ``context`` given, x must lie in it.
    """
    x = np.asarray(x, dtype=complex)
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise DimMismatch(f"expected a square matrix, got shape {x.shape}")
    if context is not None:
        _same_dim(x, context.one)
        dev = context.distance(x)
        if dev > tol.proj:
            raise ToleranceViolated(f"element is {dev:.3g} away from context {context.name}", witness=(dev,))
    u, s, vh = np.linalg.svd(x)
    r = int(np.sum(s > tol.proj))
    ur, vr = u[:, :r], vh[:r].conj().T
    rp = MatProjection(vr @ vr.conj().T, check=False)
    lp = MatProjection(ur @ ur.conj().T, check=False)
    sup = support(x, tol) if maxnorm(x - x.conj().T) <= tol.proj else None
    return RickartProjections(rp, lp, sup)


def rickart_meet(p: MatProjection, q: MatProjection, tol: Tolerances = DEFAULT_TOL) -> MatProjection:
    """p ^ q = p - LP[p(1-q)]."""
    n = _same_dim(p, q)
    lp = rickart_projections(p.m @ (np.eye(n) - q.m), tol=tol).LP
    return MatProjection(p.m - lp.m, check=False)


def rickart_join(p: MatProjection, q: MatProjection, tol: Tolerances = DEFAULT_TOL) -> MatProjection:
    """p v q = q + RP[p(1-q)]."""
    n = _same_dim(p, q)
    rp = rickart_projections(p.m @ (np.eye(n) - q.m), tol=tol).RP
    return MatProjection(q.m + rp.m, check=False)


def ortho_sup(ps: Sequence[MatProjection], n: int | None = None, tol: Tolerances = DEFAULT_TOL) -> MatProjection:
    """Supremum of pairwise orthogonal projections as [sum 2^-i p_i > 0]."""
    if not ps:
        if n is None:
            raise DimMismatch("dimension needed for an empty family")
        return MatProjection.zero(n)
    n = _same_dim(*ps)
    for i in range(len(ps)):
        for j in range(i + 1, len(ps)):
            d = maxnorm(ps[i].m @ ps[j].m)
            if d > tol.proj:
                raise NotOrthogonal(f"projections {i} and {j} are not orthogonal (|p q| = {d:.3g})", witness=(i, j, d))
    a = sum(2.0 ** -(i + 1) * p.m for i, p in enumerate(ps))
    return support(a, tol)


def iterated_join(ps: Sequence[MatProjection], n: int, tol: Tolerances = DEFAULT_TOL) -> MatProjection:
    acc = MatProjection.zero(n)
    for p in ps:
        acc = proj_join(acc, p, tol)
    return acc
