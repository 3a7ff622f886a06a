"""Spectral opens of a context and the external spectrum of a context poset.

Inside a context the Gelfand spectrum is the atom set, and the basic open
D(a) of a hermitian a is the set of atoms where a is strictly positive.
Across a poset of contexts the opens are families S(C) of atom sets such
that every atom of a finer context lying under a selected atom is selected.
These are exactly the downsets of the poset of (context, atom) pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ..errors import BudgetExceeded, MixedBase, NotInContext
from ..frames import DownsetFrame
from ..heyting import BohrAlgebra, MonotoneSection
from ..lattice import DEFAULT_BUDGET, FinitePoset, bits, downsets, mask_of
from .contexts import Context, ContextPoset
from .projections import (
    DEFAULT_TOL,
    MatProjection,
    Tolerances,
    maxnorm,
    positive_part,
    support,
    zero_projection,
)


@dataclass(frozen=True)
class SpectralOpen:
    context: Context
    atom_set: int  # bitmask over context atoms

    def atoms(self) -> list[int]:
        return list(bits(self.atom_set))

    def projection(self) -> MatProjection:
        return self.context.projection(self.atom_set)

    def __le__(self, other: "SpectralOpen") -> bool:
        return self.atom_set & ~other.atom_set == 0

    def neg(self) -> "SpectralOpen":
        return SpectralOpen(self.context, ((1 << self.context.k) - 1) & ~self.atom_set)


def _coefficients(a, C: Context, tol: Tolerances) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if C.distance(a) > tol.proj:
        raise NotInContext(f"element is {C.distance(a):.3g} away from context {C.name}", witness=(C.name,))
    return C.coefficients(a).real


def spectrum_basis(a, C: Context, tol: Tolerances = DEFAULT_TOL) -> SpectralOpen:
    """D(a): atoms on which a is strictly positive (so D(a) = D(a+))."""
    c = _coefficients(a, C, tol)
    return SpectralOpen(C, mask_of(i for i, v in enumerate(c) if v > tol.proj))


def spectrum_relations(a, b, C: Context, tol: Tolerances = DEFAULT_TOL) -> dict[str, bool]:
    """The six defining relations for hermitian a, b in C.

    The continuity relation D(a) = V_{s>0} D(a - s) is evaluated over the
    finite set of shifts s = lambda/2 for the positive eigenvalues lambda.
    """
    D = lambda x: spectrum_basis(x, C, tol).atom_set
    one = np.eye(C.dim)
    full = (1 << C.k) - 1
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    lam = [v for v in _coefficients(a, C, tol) if v > tol.proj]
    cont = 0
    for v in lam:
        cont |= D(a - (v / 2) * one)
    return {
        "D(1)=top": D(one) == full,
        "D(a)^D(-a)=bottom": D(a) & D(-a) == 0,
        "D(-b^2)=bottom": D(-(b @ b)) == 0,
        "D(a+b)<=D(a)vD(b)": D(a + b) & ~(D(a) | D(b)) == 0,
        "D(ab)=(D(a)^D(b))v(D(-a)^D(-b))": D(a @ b) == (D(a) & D(b)) | (D(-a) & D(-b)),
        "D(a)=V D(a-s)": D(a) == cont,
    }


def pseudocomplement_check(a, C: Context, tol: Tolerances = DEFAULT_TOL) -> dict[str, bool]:
    """For a >= 0: not D(a) (atom-set complement) equals D([a=0]), and the
    defining adjunction D(a) ^ D(b) = 0 iff D(b) <= not D(a) holds for
    every projection b of C."""
    Da = spectrum_basis(a, C, tol)
    z = zero_projection(a, tol)
    Dz = spectrum_basis(z.m, C, tol)
    adj = True
    for code in range(1 << C.k):
        Db = code  # D(b) of the projection with this code
        adj &= ((Da.atom_set & Db) == 0) == ((Db & ~Da.neg().atom_set) == 0)
    return {"not D(a) = D([a=0])": Da.neg().atom_set == Dz.atom_set, "pseudocomplement": bool(adj)}


def regularity_check(a, C: Context, grid: int = 16, tol: Tolerances = DEFAULT_TOL) -> dict[str, bool]:
    """For a >= 0: D([a - r > 0]) <= D(a) for each r on a positive grid, and
    the union equals D(a) once the grid reaches below the smallest positive
    eigenvalue."""
    c = _coefficients(a, C, tol)
    pos = [v for v in c if v > tol.proj]
    Da = spectrum_basis(a, C, tol).atom_set
    top = max(pos) if pos else 1.0
    low = min(pos) / 2 if pos else 1.0
    rs = list(np.geomspace(low, top, grid)) if pos else [1.0]
    one = np.eye(C.dim)
    union, below = 0, True
    for r in rs:
        s = spectrum_basis(support(np.asarray(a) - r * one, tol).m, C, tol).atom_set
        below &= (s & ~Da) == 0
        union |= s
    return {"D([a-r>0]) <= D(a)": bool(below), "union = D(a)": union == Da}


def multiplication_check(a, b, C: Context, tol: Tolerances = DEFAULT_TOL) -> bool | None:
    """If a <= ab (a, b >= 0 commuting) then D(a) <= D(b); None when the
    hypothesis fails."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    gap = np.linalg.eigvalsh((a @ b - a + (a @ b - a).conj().T) / 2)
    if gap.min() < -tol.proj:
        return None
    return spectrum_basis(a, C, tol) <= spectrum_basis(b, C, tol)


def support_clauses(a, C: Context, tol: Tolerances = DEFAULT_TOL) -> dict:
    """Equivalent descriptions of [a>0] for hermitian a in C.

    * clause 3: p = [a>0] (eigendecomposition) satisfies p a = a+ and
      p [-a>0] = 0;
    * clause 2 applied to a+: the projections q of C with a+ q = 0 and
      b = b q whenever a+ b = 0 (checked on the atoms of C) are enumerated;
      exactly one must exist, and 1 - q must equal [a>0] computed as the
      complement of the SVD kernel of a+.
    """
    a = np.asarray(a, dtype=complex)
    _coefficients(a, C, tol)
    p = support(a, tol)
    pm = support(-a, tol)
    ap = positive_part(a, tol)
    clause3 = maxnorm(p.m @ a - ap) <= tol.proj and maxnorm(p.m @ pm.m) <= tol.proj
    annihilated = [e for e in C.atoms if maxnorm(ap @ e.m) <= tol.proj]
    qs = []
    for code in range(1 << C.k):
        q = C.projection(code)
        if maxnorm(ap @ q.m) > tol.proj:
            continue
        if all(maxnorm(e.m @ q.m - e.m) <= tol.proj for e in annihilated):
            qs.append(q)
    _, s, vh = np.linalg.svd(ap)
    r = int(np.sum(s > tol.proj))
    ker = vh[r:].conj().T
    svd_support = np.eye(C.dim) - ker @ ker.conj().T
    unique = len(qs) == 1
    agree = unique and maxnorm(np.eye(C.dim) - qs[0].m - p.m) <= tol.proj
    return {
        "clause3": bool(clause3),
        "clause2_unique": unique,
        "clause2_matches_clause3": bool(agree),
        "kernel_route_matches": maxnorm(svd_support - p.m) <= tol.proj,
    }


# --------------------------------------------------------- external spectrum


class ExternalSpectrum:
    """Frame of opens over a context poset, with the basis map f.

    Points of the base poset are pairs (context, atom); (D, f) <= (C, e)
    when C <= D and f <= e.  Opens are the downsets of this poset.
    """

    def __init__(self, P: ContextPoset, budget: int = DEFAULT_BUDGET):
        self.P = P
        self.budget = budget
        self.offsets = []
        pts = []
        for ci, c in enumerate(P.contexts):
            self.offsets.append(len(pts))
            pts.extend((ci, k) for k in range(c.k))
        self.points = tuple(pts)
        m = len(pts)
        order = np.zeros((m, m), dtype=bool)
        for u, (di, fk) in enumerate(pts):
            for v, (ci, ek) in enumerate(pts):
                if P.le[ci, di]:
                    D, C = P.contexts[di], P.contexts[ci]
                    f, e = D.atoms[fk], C.atoms[ek]
                    order[u, v] = maxnorm(f.m @ e.m - f.m) <= P.tol.proj
        labels = [f"{P.contexts[ci].name}:{k}" for ci, k in pts]
        self.base = FinitePoset(labels, order)

    @cached_property
    def frame(self) -> DownsetFrame:
        return DownsetFrame(self.base, tuple(downsets(self.base, self.budget)), "external spectrum", True)

    @property
    def top(self) -> int:
        return (1 << len(self.points)) - 1

    def component(self, U: int, ci: int) -> int:
        """Atom set U(C) of context ``ci``."""
        k = self.P.contexts[ci].k
        return (U >> self.offsets[ci]) & ((1 << k) - 1)

    def member_from_components(self, comps) -> int:
        U = 0
        for ci, code in enumerate(comps):
            U |= code << self.offsets[ci]
        return U

    def basis(self, S: MonotoneSection) -> int:
        """f(S)(C) = atom set of S(C)."""
        B = self.P.block_poset
        if S.base is not B:
            raise MixedBase("section is not over this context poset")
        return self.member_from_components(S.codes())

    @cached_property
    def bohr(self) -> BohrAlgebra:
        return BohrAlgebra(self.P.block_poset, self.budget)

    def basis_images(self) -> list[int]:
        C = self.bohr.code_matrix
        return [self.member_from_components(row) for row in C.tolist()]

    def density_report(self) -> dict:
        """Every open is the union of the basis images below it."""
        members = self.frame.members
        images = self.basis_images()
        failures = []
        for U in members:
            acc = 0
            for V in images:
                if V & ~U == 0:
                    acc |= V
            if acc != U:
                failures.append(self.frame.base.label_set(U))
        injective = len(set(images)) == len(images)
        all_open = all(V in self.frame for V in images)
        return {
            "members": len(members),
            "basis": len(images),
            "injective": injective,
            "images_are_opens": all_open,
            "dense": not failures,
            "failures": failures,
        }

    def projection(self, U: int, ci: int) -> MatProjection:
        """V U(C): sum of the selected atoms of context ``ci``."""
        return self.P.contexts[ci].projection(self.component(U, ci))


def external_spectrum(P: ContextPoset, budget: int = DEFAULT_BUDGET) -> ExternalSpectrum:
    X = ExternalSpectrum(P, budget)
    if len(X.frame) > budget:
        raise BudgetExceeded(f"external spectrum has more than {budget} opens")
    return X
