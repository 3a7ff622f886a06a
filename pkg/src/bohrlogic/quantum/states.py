"""States, Kripke valuations, measures and the state-proposition pairing."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DimMismatch, InvalidState, MixedBase
from ..heyting import MonotoneSection
from ..lattice import bits
from .contexts import ContextPoset
from .projections import DEFAULT_TOL, MatProjection, Tolerances, maxnorm
from .spectrum import ExternalSpectrum


class DensityState:
    """Hermitian, positive semidefinite, unit trace."""

    __slots__ = ("rho",)

    def __init__(self, rho, tol: Tolerances = DEFAULT_TOL):
        rho = np.array(rho, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise DimMismatch(f"state must be square, got shape {rho.shape}")
        herm = maxnorm(rho - rho.conj().T)
        if herm > tol.proj:
            raise InvalidState(f"state is not hermitian (|rho-rho*| = {herm:.3g})", witness=(herm,))
        low = float(np.linalg.eigvalsh((rho + rho.conj().T) / 2).min())
        if low < -tol.proj:
            raise InvalidState(f"state has negative eigenvalue {low:.3g}", witness=(low,))
        tr = complex(np.trace(rho))
        if abs(tr - 1) > tol.proj:
            raise InvalidState(f"state has trace {tr.real:.12g}", witness=(tr.real,))
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)

    def __setattr__(self, *_):
        raise AttributeError("DensityState is immutable")

    @property
    def dim(self) -> int:
        return self.rho.shape[0]

    def expect(self, p) -> float:
        m = p.m if isinstance(p, MatProjection) else np.asarray(p)
        if m.shape != self.rho.shape:
            raise DimMismatch(f"state has dim {self.dim}, operator has shape {m.shape}")
        return float(np.trace(self.rho @ m).real)

    @classmethod
    def pure(cls, psi) -> "DensityState":
        psi = np.asarray(psi, dtype=complex)
        psi = psi / np.linalg.norm(psi)
        return cls(np.outer(psi, psi.conj()))

    @classmethod
    def mixed(cls, n: int) -> "DensityState":
        return cls(np.eye(n) / n)


@dataclass(frozen=True)
class Valuation:
    contexts: tuple[str, ...]
    mask: int
    upward_closed: bool

    def to_document(self) -> dict:
        return {"contexts": list(self.contexts), "upward_closed": self.upward_closed}


def _valuation(P: ContextPoset, values: list[float], tol: Tolerances) -> Valuation:
    mask = 0
    for i, v in enumerate(values):
        if v >= 1 - tol.val:
            mask |= 1 << i
    return Valuation(tuple(P.contexts[i].name for i in bits(mask)), mask, P.is_upper(mask))


def truth(psi: DensityState, p: MatProjection, tol: Tolerances = DEFAULT_TOL) -> bool:
    """Classical truth value: p is true in psi iff psi(p) = 1."""
    return psi.expect(p) >= 1 - tol.val


def kripke_valuation(psi: DensityState, S: MonotoneSection, P: ContextPoset,
                     tol: Tolerances = DEFAULT_TOL) -> Valuation:
    """Contexts C with tr(rho S(C)) = 1."""
    if psi.dim != P.dim:
        raise DimMismatch(f"state dim {psi.dim} vs context dim {P.dim}")
    return _valuation(P, [psi.expect(p) for p in P.section_projections(S)], tol)


def pairing(psi: DensityState, U: int, X: ExternalSpectrum, tol: Tolerances = DEFAULT_TOL) -> Valuation:
    """Contexts C with tr(rho V U(C)) = 1 for an open U of the spectrum."""
    if psi.dim != X.P.dim:
        raise DimMismatch(f"state dim {psi.dim} vs context dim {X.P.dim}")
    if U not in X.frame:
        raise MixedBase("not an open of this external spectrum")
    return _valuation(X.P, [psi.expect(X.projection(U, ci)) for ci in range(len(X.P))], tol)


def measure_valuation_bridge(psi: DensityState, P: ContextPoset, X: ExternalSpectrum | None = None,
                             tol: Tolerances = DEFAULT_TOL) -> dict:
    """mu(p) = tr(rho p) on every block, and its lift to opens.

    Per context: mu(0) = 0, mu(1) = 1, monotone, modular, additive on
    orthogonal pairs.  The lift to an open U is C -> nu_C(U(C)) =
    sup of mu over the projections of U(C), which is mu(V U(C)) since the
    local opens are ideals of a finite Boolean algebra.  Each local nu_C is
    checked to be a valuation (normalized, monotone, modular) with the join
    law on comparable pairs, which are the finite directed families.
    """
    if psi.dim != P.dim:
        raise InvalidState(f"state dim {psi.dim} vs context dim {P.dim}")
    eps = tol.val
    checks = {"zero": True, "one": True, "monotone": True, "modular": True, "additive": True}
    worst = 0.0
    for c in P.contexts:
        full = (1 << c.k) - 1
        mu = [psi.expect(c.projection(code)) for code in range(1 << c.k)]
        checks["zero"] &= abs(mu[0]) <= eps
        checks["one"] &= abs(mu[full] - 1) <= eps
        for x in range(1 << c.k):
            for y in range(1 << c.k):
                if x & ~y == 0:
                    checks["monotone"] &= mu[x] <= mu[y] + eps
                d = abs(mu[x] + mu[y] - mu[x & y] - mu[x | y])
                worst = max(worst, d)
                checks["modular"] &= d <= eps
                if x & y == 0:
                    checks["additive"] &= abs(mu[x | y] - mu[x] - mu[y]) <= eps
    out = {"block_checks": {k: bool(v) for k, v in checks.items()}, "max_modular_defect": worst}
    if X is not None:
        lift = {"normalized": True, "monotone": True, "directed_joins": True, "context_monotone": True}
        members = X.frame.members
        nu = {U: [psi.expect(X.projection(U, ci)) for ci in range(len(P))] for U in members}
        lift["normalized"] = all(abs(v) <= eps for v in nu[0]) and all(abs(v - 1) <= eps for v in nu[X.top])
        for U in members:
            for ci in range(len(P)):
                for cj in bits(P.up[ci]):
                    lift["context_monotone"] &= nu[U][ci] <= nu[U][cj] + eps
            for V in members:
                if U & ~V == 0:
                    lift["monotone"] &= all(a <= b + eps for a, b in zip(nu[U], nu[V]))
                    lift["directed_joins"] &= all(
                        abs(w - max(a, b)) <= eps for w, a, b in zip(nu[U | V], nu[U], nu[V])
                    )
        out["lift_checks"] = {k: bool(v) for k, v in lift.items()}
    return out
