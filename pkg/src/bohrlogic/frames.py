"""Frames of downsets: ideal completion, distributive ideals, frame points.

Every frame here is a family of downsets of a finite base poset, ordered by
inclusion and stored as bitmasks.  ``lattice()`` materializes the family as
a :class:`FiniteOrtholattice` (without perp) for law checks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .catalog import WORKED_EXAMPLE_DI_GENERATORS, worked_example
from .errors import NotALattice
from .lattice import (
    DEFAULT_BUDGET,
    FiniteOrtholattice,
    FinitePoset,
    bits,
    classify,
    downsets,
    find_isomorphism,
    mask_of,
)


@dataclass(frozen=True, eq=False)
class DownsetFrame:
    """Inclusion-ordered family of downsets of ``base``.

    ``join_is_union`` records whether the constructing operation promises
    closure under union (Alexandrov-style frames) as opposed to some other
    join (ideals, where the join of two ideals is the ideal they generate).
    """

    base: FinitePoset
    members: tuple[int, ...]
    kind: str = "downsets"
    join_is_union: bool = False

    def __post_init__(self):
        ms = tuple(sorted(set(self.members)))
        bad = next((m for m in ms if not self.base.is_downset(m)), None)
        if bad is not None:
            from .errors import DocumentError
            raise DocumentError(
                f"{self.kind}: member {self.base.label_set(bad)} is not a downset",
                witness=tuple(self.base.label_set(bad)),
            )
        object.__setattr__(self, "members", ms)

    def __len__(self):
        return len(self.members)

    def __contains__(self, m: int) -> bool:
        return m in self._pos

    @cached_property
    def _pos(self) -> dict:
        return {m: k for k, m in enumerate(self.members)}

    def index(self, m: int) -> int:
        return self._pos[m]

    def label(self, m: int) -> str:
        return "{" + ",".join(self.base.label_set(m)) + "}"

    @cached_property
    def order(self) -> np.ndarray:
        ms = self.members
        return np.array([[a & ~b == 0 for b in ms] for a in ms], dtype=bool).reshape(len(ms), len(ms))

    def lattice(self) -> FiniteOrtholattice:
        return FiniteOrtholattice([self.label(m) for m in self.members], self.order)

    def to_document(self) -> dict:
        return {
            "kind": self.kind,
            "count": len(self),
            "members": [self.base.label_set(m) for m in self.members],
        }


# ------------------------------------------------------------- completions


def ideal_completion(L: FiniteOrtholattice, budget: int = DEFAULT_BUDGET):
    """Ideals: nonempty downsets closed under binary join.

    Returns ``(frame, principal)`` where ``principal[x]`` is the index of the
    member ``down(x)``; for a finite lattice this is an order isomorphism.
    """
    members = []
    for m in downsets(L, budget):
        if m == 0:
            continue
        els = list(bits(m))
        if all(L.join(x, y) in els for x in els for y in els):
            members.append(m)
    F = DownsetFrame(L, tuple(members), "ideals")
    principal = [F.index(L.down[x]) for x in range(L.n)]
    if sorted(principal) != list(range(len(F))):
        raise AssertionError("a non-principal ideal in a finite lattice")
    for x in range(L.n):
        for y in range(L.n):
            if bool(F.order[principal[x], principal[y]]) != L.le(x, y):
                raise AssertionError("principal map does not preserve order")
    return F, principal


def _is_distributive_downset(L: FiniteOrtholattice, m: int) -> bool:
    """(V M) ^ l = V (m ^ l) for every l; the join always exists here."""
    els = list(bits(m))
    if not els:
        return False
    top = L.join_all(els)
    M = L.meet_table[np.array(els)]  # rows m, columns l
    for l in range(L.n):
        if L.meet(top, l) != L.join_all(M[:, l].tolist()):
            return False
    return True


def union_family(L: FinitePoset, generators: Sequence[int]) -> list[int]:
    """All unions of principal downsets of generator subsets, minus the
    empty union, plus the whole base."""
    out = {mask_of(range(L.n))}
    gens = [L.down[g] for g in generators]
    for s in range(1, 1 << len(gens)):
        m = 0
        for k in bits(s):
            m |= gens[k]
        out.add(m)
    return sorted(out)


def worked_example_generators(L: FiniteOrtholattice) -> list[int] | None:
    """Generators of the printed family, when ``L`` is the worked example."""
    X = worked_example()
    iso = find_isomorphism(X, L, respect_perp=True)
    if iso is None:
        return None
    return [iso[X.index(g)] for g in WORKED_EXAMPLE_DI_GENERATORS]


@dataclass(frozen=True)
class BrunsLakserReport:
    definitional: DownsetFrame
    closed: DownsetFrame
    family: DownsetFrame | None
    only_family: tuple[int, ...] = ()
    only_definitional: tuple[int, ...] = ()
    notes: tuple[str, ...] = field(default=())

    def to_document(self) -> dict:
        F = self.definitional
        lab = lambda ms: [F.base.label_set(m) for m in ms]
        doc = {
            "definitional": {"count": len(F), "members": lab(F.members)},
            "closed_under_distributive_joins": {"count": len(self.closed), "members": lab(self.closed.members)},
        }
        if self.family is not None:
            doc["family"] = {"count": len(self.family), "members": lab(self.family.members)}
            doc["only_in_family"] = lab(self.only_family)
            doc["only_in_definitional"] = lab(self.only_definitional)
        doc["notes"] = list(self.notes)
        return doc


def bruns_lakser(
    L: FiniteOrtholattice,
    generators: Sequence[int] | None = None,
    budget: int = DEFAULT_BUDGET,
) -> BrunsLakserReport:
    """Distributive ideals of ``L`` computed three ways, side by side.

    * definitional: nonempty downsets M with (V M) ^ l = V (m ^ l) for all l,
      plus the whole lattice;
    * closed: downsets containing V M for every definitional M inside them
      (closure under distributive joins);
    * family: unions of principal downsets of ``generators`` with the empty
      union removed and the whole lattice added.  Without explicit
      generators the family is built only when ``L`` is the worked example.
    """
    all_down = downsets(L, budget)
    full = mask_of(range(L.n))
    dist = [m for m in all_down if _is_distributive_downset(L, m)]
    definitional = DownsetFrame(L, tuple(set(dist) | {full}), "distributive ideals (definition)")
    tops = [(m, L.down[L.join_all(bits(m))]) for m in dist]
    # every distributive M inside d must have its join in d
    closed = [d for d in all_down if all((m & ~d) != 0 or (t & ~d) == 0 for m, t in tops)]
    closed_frame = DownsetFrame(L, tuple(closed), "downsets closed under distributive joins", True)
    if generators is None:
        generators = worked_example_generators(L)
    if generators is None:
        return BrunsLakserReport(definitional, closed_frame, None)
    fam = DownsetFrame(L, tuple(union_family(L, generators)), "union family")
    dset, fset = set(definitional.members), set(fam.members)
    notes = []
    for m in sorted(fset - dset):
        els = list(bits(m))
        top = L.join_all(els)
        for l in range(L.n):
            rhs = L.join_all(L.meet(x, l) for x in els)
            if L.meet(top, l) != rhs:
                notes.append(
                    f"{fam.label(m)}: join {L.labels[top]}, meet with {L.labels[l]} is "
                    f"{L.labels[L.meet(top, l)]} but the join of meets is {L.labels[rhs]}"
                )
                break
    return BrunsLakserReport(
        definitional, closed_frame, fam,
        tuple(sorted(fset - dset)), tuple(sorted(dset - fset)), tuple(notes),
    )


def alexandrov(P: FinitePoset, budget: int = DEFAULT_BUDGET) -> DownsetFrame:
    """All downsets of ``P`` (the Alexandrov frame)."""
    return DownsetFrame(P, tuple(downsets(P, budget)), "downsets", True)


# ------------------------------------------------------------- frame points


@dataclass(frozen=True)
class FramePoint:
    """0/1 assignment on members; ``generator`` is the least member sent to 1."""

    assignment: tuple[int, ...]
    generator: int

    def to_document(self, F: DownsetFrame) -> dict:
        return {
            "generator": F.base.label_set(F.members[self.generator]),
            "true_on": [F.base.label_set(F.members[k]) for k, v in enumerate(self.assignment) if v],
        }


def frame_points(F: DownsetFrame, budget: int = DEFAULT_BUDGET) -> list[FramePoint]:
    """All frame homomorphisms to {0,1}.

    In a finite frame the members sent to 1 form a filter closed under all
    meets, hence a principal filter up(p); it is a point exactly when
    phi(bottom) = 0 and phi(x v y) = phi(x) or phi(y), which is checked
    against the join table for every candidate p.
    """
    if len(F) > budget:
        from .errors import BudgetExceeded
        raise BudgetExceeded(f"{len(F)} members exceed budget {budget}")
    L = F.lattice()
    J = L.join_table
    pts = []
    for p in range(L.n):
        phi = L.order[p]  # phi(x) = [p <= x]
        if phi[L.bottom] or not phi[L.top]:
            continue
        if np.array_equal(phi[J], phi[:, None] | phi[None, :]):
            pts.append(FramePoint(tuple(int(v) for v in phi), p))
    return pts


@dataclass(frozen=True)
class FrameReport:
    is_lattice: bool
    meets_are_intersections: bool
    joins_are_unions: bool | None
    is_distributive: bool
    witness: tuple = ()

    @property
    def passed(self) -> bool:
        return (
            self.is_lattice and self.meets_are_intersections and self.is_distributive
            and self.joins_are_unions is not False
        )

    def to_document(self) -> dict:
        return {
            "passed": self.passed,
            "is_lattice": self.is_lattice,
            "meets_are_intersections": self.meets_are_intersections,
            "joins_are_unions": self.joins_are_unions,
            "is_distributive": self.is_distributive,
            "witness": list(self.witness),
        }


def check_frame(F: DownsetFrame) -> FrameReport:
    """Bounded-lattice axioms, declared closure and distributivity.

    Finite frames only need binary distributivity, since every join of
    members is a finite join.
    """
    try:
        L = F.lattice()
    except NotALattice as e:
        return FrameReport(False, False, None, False, tuple(e.witness or ()))
    ms = F.members
    witness = ()
    inter_ok = True
    for a in range(L.n):
        for b in range(a + 1, L.n):
            if ms[L.meet(a, b)] != ms[a] & ms[b]:
                inter_ok = False
                witness = witness or (F.label(ms[a]), F.label(ms[b]), "intersection")
    union_ok = None
    if F.join_is_union:
        union_ok = True
        for a in range(L.n):
            for b in range(a + 1, L.n):
                if ms[L.join(a, b)] != ms[a] | ms[b]:
                    union_ok = False
                    witness = witness or (F.label(ms[a]), F.label(ms[b]), "union")
    rep = classify(L)
    if not rep.is_distributive:
        w = rep.witnesses["distributive"]
        witness = witness or tuple(L.labels[i] for i in w.elements)
    return FrameReport(True, inter_ok, union_ok, rep.is_distributive, witness)


# ---------------------------------------------------- finite distributive


def join_irreducibles(L: FiniteOrtholattice) -> list[int]:
    """Elements with exactly one lower cover."""
    lower = [0] * L.n
    for lo, hi in L.covers():
        lower[hi] += 1
    return [x for x in range(L.n) if lower[x] == 1]


def downset_form(L: FiniteOrtholattice) -> tuple[DownsetFrame, list[int]]:
    """Represent a finite distributive lattice as downsets of its
    join-irreducibles; returns the frame and the index of each element."""
    J = join_irreducibles(L)
    sub = np.array(J, dtype=int).reshape(-1)
    P = FinitePoset([L.labels[j] for j in J], L.order[np.ix_(sub, sub)])
    images = [mask_of(k for k, j in enumerate(J) if L.le(j, x)) for x in range(L.n)]
    F = DownsetFrame(P, tuple(images), "downsets of join-irreducibles", True)
    return F, [F.index(m) for m in images]
