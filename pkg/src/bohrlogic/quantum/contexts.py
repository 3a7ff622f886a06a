"""Contexts (commutative subalgebras given by atoms) and context posets.

A context with atoms e_1..e_k has projection lattice Pow(k): the projection
with atom-code c is the sum of the atoms whose bits are set.  A context
poset converts to a :class:`BlockPoset` whose elements are the distinct
projections of all contexts, so the Heyting formulas apply unchanged.
"""

from __future__ import annotations

from functools import cached_property
from typing import Sequence

import numpy as np

from ..blocks import BlockPoset, BooleanBlock
from ..errors import DimMismatch, NotCommuting, NotInContext, PreconditionViolated
from ..heyting import MonotoneSection
from ..lattice import bits, mask_of
from .projections import DEFAULT_TOL, MatProjection, Tolerances, commute, maxnorm, rickart_projections

TRIVIAL_NAME = "C·1"


class Context:
    """Complete family of pairwise orthogonal nonzero projections.

    Atoms are put in a canonical order (by the position of their largest
    diagonal entry, then by the diagonal itself) so equal contexts given in
    different orders compare equal.
    """

    def __init__(self, atoms: Sequence[MatProjection], name: str = "", tol: Tolerances = DEFAULT_TOL):
        if not atoms:
            raise DimMismatch("a context needs at least one atom")
        dims = {a.dim for a in atoms}
        if len(dims) != 1:
            raise DimMismatch(f"atoms of different dimensions {sorted(dims)}")
        n = dims.pop()
        for i, a in enumerate(atoms):
            if a.is_zero(tol.proj):
                raise PreconditionViolated(f"atom {i} of context {name!r} is zero")
            for j in range(i + 1, len(atoms)):
                d = maxnorm(a.m @ atoms[j].m)
                if d > tol.proj:
                    from ..errors import NotOrthogonal
                    raise NotOrthogonal(f"atoms {i}, {j} of {name!r} are not orthogonal", witness=(i, j, d))
        total = maxnorm(sum(a.m for a in atoms) - np.eye(n))
        if total > tol.proj:
            raise PreconditionViolated(f"atoms of {name!r} do not sum to 1 (off by {total:.3g})")
        key = lambda a: (int(np.argmax(np.round(a.m.diagonal().real, 9))), tuple(-np.round(a.m.diagonal().real, 9)))
        self.atoms = tuple(sorted(atoms, key=key))
        self.name = name
        self.dim = n
        self.tol = tol

    @property
    def k(self) -> int:
        return len(self.atoms)

    @property
    def one(self) -> np.ndarray:
        return np.eye(self.dim)

    def __repr__(self):
        return f"Context({self.name!r}, dim={self.dim}, atoms={self.k})"

    def projection(self, code: int) -> MatProjection:
        acc = np.zeros((self.dim, self.dim), dtype=complex)
        for i in bits(code):
            acc = acc + self.atoms[i].m
        return MatProjection(acc, check=False)

    def coefficients(self, x) -> np.ndarray:
        """tr(x e)/tr(e) per atom."""
        x = np.asarray(x, dtype=complex)
        return np.array([np.trace(x @ e.m) / np.trace(e.m).real for e in self.atoms])

    def distance(self, x) -> float:
        """Distance from x to span(atoms)."""
        x = np.asarray(x, dtype=complex)
        c = self.coefficients(x)
        return maxnorm(x - sum(ci * e.m for ci, e in zip(c, self.atoms)))

    def contains(self, x, tol: float | None = None) -> bool:
        return self.distance(x) <= (self.tol.proj if tol is None else tol)

    def code_of(self, p: MatProjection) -> int | None:
        """Atom-code of p if p is a projection of this context, else None."""
        code = 0
        for i, e in enumerate(self.atoms):
            if maxnorm(e.m @ p.m - e.m) <= self.tol.proj:
                code |= 1 << i
        return code if self.projection(code).close(p, self.tol.proj) else None

    def refines(self, other: "Context") -> bool:
        """other <= self: each atom of ``other`` is a sum of atoms of self."""
        return all(self.code_of(e) is not None for e in other.atoms)

    def same_as(self, other: "Context") -> bool:
        return self.dim == other.dim and self.k == other.k and self.refines(other) and other.refines(self)

    def block_code_table(self, other: "Context") -> list[int]:
        """For other <= self: code (in self) of each atom of other."""
        return [self.code_of(e) for e in other.atoms]


def trivial_context(n: int, tol: Tolerances = DEFAULT_TOL) -> Context:
    return Context([MatProjection.one(n)], TRIVIAL_NAME, tol)


def context_generate(projs: Sequence[MatProjection], name: str = "", n: int | None = None,
                     tol: Tolerances = DEFAULT_TOL) -> Context:
    """Context generated by commuting projections: the nonzero products
    q_1 ... q_m with each q_i in {p_i, 1 - p_i}."""
    if not projs:
        if n is None:
            raise DimMismatch("dimension needed for an empty generator list")
        return Context([MatProjection.one(n)], name or TRIVIAL_NAME, tol)
    dims = {p.dim for p in projs}
    if len(dims) != 1:
        raise DimMismatch(f"generators of different dimensions {sorted(dims)}")
    n = dims.pop()
    for i in range(len(projs)):
        for j in range(i + 1, len(projs)):
            c = commute(projs[i], projs[j])
            if c > tol.proj:
                raise NotCommuting(f"generators {i} and {j} do not commute (|[p,q]| = {c:.3g})", witness=(i, j, c))
    atoms = [np.eye(n, dtype=complex)]
    for p in projs:
        nxt = []
        for a in atoms:
            for part in (a @ p.m, a @ (np.eye(n) - p.m)):
                if maxnorm(part) > tol.proj:
                    nxt.append((part + part.conj().T) / 2)
        atoms = nxt
    return Context([MatProjection(a, tol) for a in atoms], name, tol)


def meet_context(C: Context, D: Context, name: str = "") -> Context:
    """C n D: atoms are the sums over connected components of the graph
    joining a C-atom and a D-atom when their product is nonzero."""
    if C.dim != D.dim:
        raise DimMismatch("contexts of different dimensions")
    k = C.k
    parent = list(range(k + D.k))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, e in enumerate(C.atoms):
        for j, f in enumerate(D.atoms):
            if maxnorm(e.m @ f.m) > C.tol.proj:
                parent[find(i)] = find(k + j)
    comps: dict[int, list[int]] = {}
    for i in range(k):
        comps.setdefault(find(i), []).append(i)
    atoms = [C.projection(mask_of(v)) for v in comps.values()]
    return Context(atoms, name or f"{C.name}∧{D.name}", C.tol)


class MatrixBlockPoset(BlockPoset):
    """Block poset of a context poset; ``projections[x]`` is element x."""

    def __init__(self, labels, blocks, projections, contexts):
        super().__init__(labels, blocks)
        self.projections = projections
        self.contexts = contexts


class ContextPoset:
    """Contexts ordered by refinement, bottom first (the trivial context)."""

    def __init__(self, contexts: Sequence[Context], close_under_meet: bool = False,
                 tol: Tolerances = DEFAULT_TOL, add_trivial: bool = True):
        if not contexts:
            raise DimMismatch("need at least one context to fix the dimension")
        dims = {c.dim for c in contexts}
        if len(dims) != 1:
            raise DimMismatch(f"contexts of different dimensions {sorted(dims)}", witness=tuple(sorted(dims)))
        n = dims.pop()
        self.tol = tol
        self.dim = n
        found: list[Context] = [trivial_context(n, tol)] if add_trivial else []

        def add(c):
            for d in found:
                if d.same_as(c):
                    return False
            found.append(c)
            return True

        for c in contexts:
            add(c)
        if close_under_meet:
            changed = True
            while changed:
                changed = False
                for i in range(len(found)):
                    for j in range(i + 1, len(found)):
                        if add(meet_context(found[i], found[j])):
                            changed = True
        self.contexts = tuple(found)
        m = len(found)
        # le[i, j]: context i <= context j (j refines i)
        self.le = np.array([[found[j].refines(found[i]) for j in range(m)] for i in range(m)], dtype=bool)
        self.up = tuple(mask_of(np.flatnonzero(self.le[i])) for i in range(m))
        if not self.le.all(axis=1).any():
            raise PreconditionViolated("context family has no least context", witness=self.names)

    def __len__(self):
        return len(self.contexts)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.contexts)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            from ..errors import DocumentError
            raise DocumentError(f"unknown context {name!r}", witness=(name,)) from None

    def is_upper(self, mask: int) -> bool:
        return all((self.up[i] & ~mask) == 0 for i in bits(mask))

    @cached_property
    def block_poset(self) -> BlockPoset:
        """Each context contributes Pow(atoms); equal projections share an id."""
        projections: list[MatProjection] = []
        labels: list[str] = []

        def ident(p: MatProjection, label: str) -> int:
            for k, q in enumerate(projections):
                if q.close(p, self.tol.proj):
                    return k
            projections.append(p)
            labels.append(label)
            return len(projections) - 1

        blocks = []
        for c in self.contexts:
            by_code = []
            for code in range(1 << c.k):
                if code == 0:
                    lab = "0"
                elif code == (1 << c.k) - 1:
                    lab = "1"
                else:
                    lab = f"{c.name}{{{','.join(str(i) for i in bits(code))}}}"
                by_code.append(ident(c.projection(code), lab))
            blocks.append(BooleanBlock(c.name, tuple(by_code[1 << i] for i in range(c.k)), tuple(by_code)))
        P = MatrixBlockPoset(labels, blocks, tuple(projections), self)
        if not np.array_equal(
            np.array([[P.le_blocks(i, j) for j in range(len(P))] for i in range(len(P))]), self.le
        ):
            raise AssertionError("block inclusion disagrees with context refinement")
        return P

    def projection_of(self, element: int) -> MatProjection:
        return self.block_poset.projections[element]

    def section_projections(self, S: MonotoneSection) -> list[MatProjection]:
        if S.base is not self.block_poset:
            from ..errors import MixedBase
            raise MixedBase("section is not over this context poset")
        return [self.projection_of(v) for v in S.values]

    def to_document(self) -> dict:
        return {
            "dim": self.dim,
            "contexts": [
                {"name": c.name, "atoms": c.k, "ranks": [a.rank for a in c.atoms]} for c in self.contexts
            ],
            "order": [
                [self.contexts[i].name, self.contexts[j].name]
                for i in range(len(self)) for j in bits(self.up[i]) if i != j
            ],
        }


def context_poset(contexts: Sequence[Context], close_under_meet: bool = False,
                  tol: Tolerances = DEFAULT_TOL, add_trivial: bool = True) -> ContextPoset:
    return ContextPoset(contexts, close_under_meet, tol, add_trivial)


def daseinise(p: MatProjection, P: ContextPoset) -> MonotoneSection:
    """S_p(C) = p if p is a projection of C, else 0."""
    B = P.block_poset
    vals = []
    for c, b in zip(P.contexts, B.blocks):
        code = c.code_of(p)
        vals.append(b.by_code[code] if code is not None else b.bottom)
    return MonotoneSection(B, vals)


def relative_rickart_check(x, C: Context, D: Context, tol: Tolerances = DEFAULT_TOL) -> dict:
    """RP[x] computed inside the larger context D, expressed in C's atoms."""
    if not D.refines(C):
        raise PreconditionViolated(f"{C.name} is not contained in {D.name}")
    if not C.contains(x):
        raise PreconditionViolated(f"element is not in context {C.name}", witness=(C.distance(x),))
    x = np.asarray(x, dtype=complex)
    coeff = D.coefficients(x)
    code_d = mask_of(i for i, c in enumerate(coeff) if abs(c) > tol.proj)
    rp = D.projection(code_d)
    direct = rickart_projections(x, tol=tol).RP
    code_c = C.code_of(rp)
    return {
        "in_D": sorted(bits(code_d)),
        "in_C": None if code_c is None else sorted(bits(code_c)),
        "lies_in_C": code_c is not None,
        "matches_svd": rp.close(direct, tol.proj),
    }


def not_in_context(C: Context, x) -> NotInContext:
    return NotInContext(f"element is {C.distance(x):.3g} away from context {C.name}", witness=(C.name,))
