"""Named context posets and random matrices for tests and scripts."""

from __future__ import annotations

import numpy as np

from .contexts import Context, ContextPoset
from .projections import MatProjection
from .states import DensityState


def diag_projection(*entries) -> MatProjection:
    return MatProjection(np.diag(np.array(entries, dtype=complex)))


def diagonal_context(n: int, name: str = "Cdiag") -> Context:
    atoms = [MatProjection(np.diag([1.0 if j == i else 0.0 for j in range(n)])) for i in range(n)]
    return Context(atoms, name)


def qubit_contexts() -> tuple[Context, Context]:
    """C_z (diagonal) and C_x (eigenprojections of sigma_x)."""
    cz = Context([diag_projection(1, 0), diag_projection(0, 1)], "Cz")
    plus = MatProjection(0.5 * np.array([[1, 1], [1, 1]]))
    minus = MatProjection(0.5 * np.array([[1, -1], [-1, 1]]))
    cx = Context([plus, minus], "Cx")
    return cz, cx


def qubit_poset() -> ContextPoset:
    """{C·1, C_z, C_x} in M_2."""
    return ContextPoset(list(qubit_contexts()))


def qutrit_poset(theta: float = 0.7) -> ContextPoset:
    """Four contexts in M_3: trivial < {P12, e3} < diagonal, and
    {P12, e3} < a maximal context rotated inside span(e1, e2)."""
    e = np.eye(3)
    P = lambda v: MatProjection(np.outer(v, np.conj(v)))
    coarse = Context([diag_projection(1, 1, 0), P(e[2])], "Ccoarse")
    diag = diagonal_context(3, "Cdiag")
    u = np.cos(theta) * e[0] + np.sin(theta) * e[1]
    v = -np.sin(theta) * e[0] + np.cos(theta) * e[1]
    rot = Context([P(u), P(v), P(e[2])], "Crot")
    return ContextPoset([coarse, diag, rot])


def single_context_poset(n: int) -> ContextPoset:
    """The commutative algebra C^n as its own single context."""
    return ContextPoset([diagonal_context(n, "Cn")], add_trivial=False)


# ----------------------------------------------------------------- random


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_projection(n: int, rng: np.random.Generator, rank: int | None = None) -> MatProjection:
    r = int(rng.integers(0, n + 1)) if rank is None else rank
    u = random_unitary(n, rng)[:, :r]
    return MatProjection(u @ u.conj().T)


def random_context(n: int, rng: np.random.Generator, name: str = "C", k: int | None = None) -> Context:
    """Random unitary frame with its columns grouped into k blocks."""
    u = random_unitary(n, rng)
    k = int(rng.integers(1, n + 1)) if k is None else k
    cuts = sorted(rng.choice(np.arange(1, n), size=k - 1, replace=False).tolist()) if k > 1 else []
    groups = np.split(np.arange(n), cuts)
    atoms = [MatProjection(u[:, g] @ u[:, g].conj().T) for g in groups]
    return Context(atoms, name)


def random_element(C: Context, rng: np.random.Generator, positive: bool = False,
                   zeros: bool = True) -> np.ndarray:
    """Hermitian element of C with random real atom coefficients, some of
    them exactly zero when ``zeros``."""
    c = rng.standard_normal(C.k)
    if positive:
        c = np.abs(c)
    if zeros:
        c[rng.random(C.k) < 0.3] = 0.0
    return sum(ci * e.m for ci, e in zip(c, C.atoms))


def random_state(n: int, rng: np.random.Generator, rank: int | None = None) -> DensityState:
    r = int(rng.integers(1, n + 1)) if rank is None else rank
    g = rng.standard_normal((n, r)) + 1j * rng.standard_normal((n, r))
    rho = g @ g.conj().T
    return DensityState(rho / np.trace(rho).real)
