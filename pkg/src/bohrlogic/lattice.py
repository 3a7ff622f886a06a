"""Finite posets and ortholattices with dense integer ids.

Elements are ``0..n-1``; labels are only for display and documents.  The
order is kept twice: as a boolean numpy matrix (``order[x, y]`` iff
``x <= y``) for vectorised law checks, and as per-element Python int
bitmasks (``down[x]``, ``up[x]``) for set manipulation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from .errors import BadPerp, BudgetExceeded, DocumentError, NotALattice, NotAPoset

DEFAULT_BUDGET = 10**7


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(ids: Iterable[int]) -> int:
    m = 0
    for i in ids:
        m |= 1 << int(i)
    return m


def transitive_closure(rel: np.ndarray) -> np.ndarray:
    """Reflexive-transitive closure of a square boolean relation (Warshall)."""
    r = np.array(rel, dtype=bool, copy=True)
    np.fill_diagonal(r, True)
    for k in range(len(r)):
        r |= r[:, k : k + 1] & r[k : k + 1, :]
    return r


class FinitePoset:
    """A validated finite partial order."""

    def __init__(self, labels: Sequence[str], order):
        labels = tuple(str(s) for s in labels)
        if not labels:
            raise NotAPoset("a poset needs at least one element")
        if len(set(labels)) != len(labels):
            dup = next(s for s in labels if labels.count(s) > 1)
            raise DocumentError(f"duplicate element label {dup!r}", witness=(dup,))
        order = np.array(order, dtype=bool)
        n = len(labels)
        if order.shape != (n, n):
            raise DocumentError(f"order matrix has shape {order.shape}, expected {(n, n)}")
        if not order.diagonal().all():
            x = int(np.flatnonzero(~order.diagonal())[0])
            raise NotAPoset(f"order is not reflexive at {labels[x]}", witness=(labels[x],))
        both = order & order.T
        np.fill_diagonal(both, False)
        if both.any():
            x, y = (int(v) for v in np.argwhere(both)[0])
            raise NotAPoset(
                f"antisymmetry fails (cycle): {labels[x]} <= {labels[y]} <= {labels[x]}",
                witness=(labels[x], labels[y]),
            )
        two_step = (order.astype(np.int64) @ order.astype(np.int64)) > 0
        if (two_step & ~order).any():
            x, z = (int(v) for v in np.argwhere(two_step & ~order)[0])
            raise NotAPoset(
                f"order is not transitive: {labels[x]} <= ... <= {labels[z]}",
                witness=(labels[x], labels[z]),
            )
        order.setflags(write=False)
        self.labels = labels
        self.order = order
        self.down = tuple(mask_of(np.flatnonzero(order[:, x])) for x in range(n))
        self.up = tuple(mask_of(np.flatnonzero(order[x, :])) for x in range(n))
        self._index = {s: i for i, s in enumerate(labels)}

    @classmethod
    def from_covers(cls, labels, covers: Iterable[tuple[int, int]], **kw):
        n = len(labels)
        rel = np.zeros((n, n), dtype=bool)
        for lo, hi in covers:
            rel[lo, hi] = True
        return cls(labels, transitive_closure(rel), **kw)

    @property
    def n(self) -> int:
        return len(self.labels)

    def __len__(self):
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise DocumentError(f"unknown element label {label!r}", witness=(label,)) from None

    def le(self, x: int, y: int) -> bool:
        return bool(self.order[x, y])

    def covers(self) -> list[tuple[int, int]]:
        """Cover pairs ``(x, y)`` with ``x < y`` and nothing strictly between."""
        strict = self.order.copy()
        np.fill_diagonal(strict, False)
        s = strict.astype(np.int64)
        cov = strict & ~((s @ s) > 0)
        return sorted((int(x), int(y)) for x, y in np.argwhere(cov))

    def linear_extension(self) -> list[int]:
        return sorted(range(self.n), key=lambda x: (self.down[x].bit_count(), x))

    def label_set(self, mask: int) -> list[str]:
        return [self.labels[i] for i in bits(mask)]

    def is_downset(self, mask: int) -> bool:
        return all(self.down[x] & ~mask == 0 for x in bits(mask))

    def __repr__(self):
        return f"<{type(self).__name__} with {self.n} elements>"


def _glb_table(order: np.ndarray, labels, what="meet") -> np.ndarray:
    """Greatest-lower-bound table of a poset, or NotALattice with a witness pair."""
    n = len(order)
    size = order.sum(axis=0)  # size[z] = |down(z)|
    table = np.empty((n, n), dtype=np.int64)
    cols = np.arange(n)
    for x in range(n):
        lb = order[:, x][:, None] & order  # lb[z, y]: z <= x and z <= y
        cand = np.where(lb, size[:, None], -1).argmax(axis=0)
        ok = lb[cand, cols] & ~(lb & ~order[:, cand]).any(axis=0)
        if not ok.all():
            y = int(np.flatnonzero(~ok)[0])
            raise NotALattice(
                f"{labels[x]} and {labels[y]} have no {what}",
                witness=(labels[x], labels[y]),
            )
        table[x] = cand
    table.setflags(write=False)
    return table


class FiniteOrtholattice(FinitePoset):
    """A finite bounded lattice, optionally with an orthocomplement ``perp``.

    Construction validates everything: a pair without glb/lub raises
    NotALattice, a ``perp`` that is not an involutive antitone complement
    raises BadPerp.
    """

    def __init__(self, labels, order, perp: Sequence[int] | None = None):
        super().__init__(labels, order)
        self.meet_table = _glb_table(self.order, self.labels, "meet")
        self.join_table = _glb_table(self.order.T, self.labels, "join")
        bottoms = [x for x in range(self.n) if self.up[x] == (1 << self.n) - 1]
        tops = [x for x in range(self.n) if self.down[x] == (1 << self.n) - 1]
        self.bottom, self.top = bottoms[0], tops[0]
        self.perp = None if perp is None else tuple(int(p) for p in perp)
        if self.perp is not None:
            self._check_perp()

    def _check_perp(self):
        lab, p = self.labels, self.perp
        if len(p) != self.n or any(not 0 <= v < self.n for v in p):
            raise BadPerp("perp must map every element to an element")
        for x in range(self.n):
            if p[p[x]] != x:
                raise BadPerp(f"perp is not involutive at {lab[x]}", witness=(lab[x],))
            if self.meet(x, p[x]) != self.bottom or self.join(x, p[x]) != self.top:
                raise BadPerp(f"{lab[p[x]]} is not a complement of {lab[x]}", witness=(lab[x],))
        for x, y in np.argwhere(self.order):
            if not self.order[p[y], p[x]]:
                raise BadPerp(
                    f"perp is not antitone on {lab[x]} <= {lab[y]}", witness=(lab[x], lab[y])
                )

    def meet(self, x: int, y: int) -> int:
        return int(self.meet_table[x, y])

    def join(self, x: int, y: int) -> int:
        return int(self.join_table[x, y])

    def join_all(self, ids: Iterable[int]) -> int:
        out = self.bottom
        for i in ids:
            out = self.join(out, i)
        return out

    def meet_all(self, ids: Iterable[int]) -> int:
        out = self.top
        for i in ids:
            out = self.meet(out, i)
        return out

    def to_document(self) -> dict:
        doc = {
            "elements": list(self.labels),
            "covers": [[self.labels[x], self.labels[y]] for x, y in self.covers()],
        }
        if self.perp is not None:
            doc["perp"] = {self.labels[x]: self.labels[self.perp[x]] for x in range(self.n)}
        return doc


# ---------------------------------------------------------------- documents


def load_json(text: str):
    """``json.loads`` that refuses NaN/Infinity."""

    def reject(token):
        raise DocumentError(f"non-finite number {token!r} in document")

    try:
        return json.loads(text, parse_constant=reject)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed JSON: {exc}") from None


def dump_json(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def parse_lattice(doc) -> FiniteOrtholattice:
    """Build a lattice from a document (dict or JSON text).

    Fields: ``elements`` (labels), then ``covers`` or ``leq`` (label pairs),
    optional ``perp`` (label -> label).  Both relations are closed
    reflexively and transitively.
    """
    if isinstance(doc, (str, bytes)):
        doc = load_json(doc)
    if not isinstance(doc, dict) or "elements" not in doc:
        raise DocumentError("lattice document needs an 'elements' list")
    labels = [str(s) for s in doc["elements"]]
    if len(set(labels)) != len(labels):
        raise DocumentError("duplicate element labels")
    index = {s: i for i, s in enumerate(labels)}

    def ids(pair):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise DocumentError(f"expected a label pair, got {pair!r}")
        try:
            return index[str(pair[0])], index[str(pair[1])]
        except KeyError as exc:
            raise DocumentError(f"unknown label {exc.args[0]!r}") from None

    if ("covers" in doc) == ("leq" in doc):
        raise DocumentError("give exactly one of 'covers' or 'leq'")
    pairs = [ids(p) for p in doc.get("covers", doc.get("leq"))]
    n = len(labels)
    rel = np.zeros((n, n), dtype=bool)
    for lo, hi in pairs:
        rel[lo, hi] = True
    perp = None
    if doc.get("perp") is not None:
        pm = doc["perp"]
        if not isinstance(pm, dict):
            raise DocumentError("'perp' must be a label map")
        missing = [s for s in labels if s not in pm]
        if missing:
            raise BadPerp(f"perp undefined on {missing[0]!r}", witness=(missing[0],))
        try:
            perp = [index[str(pm[s])] for s in labels]
        except KeyError as exc:
            raise DocumentError(f"unknown label {exc.args[0]!r} in perp") from None
    return FiniteOrtholattice(labels, transitive_closure(rel), perp)


# ------------------------------------------------------------- classification


def _distributive(L, x, y, z) -> bool:
    return L.meet(L.join(x, y), z) == L.join(L.meet(x, z), L.meet(y, z))


def _orthomodular(L, x, y) -> bool:
    return not L.le(x, y) or L.join(x, L.meet(L.perp[x], y)) == y


def _orthocomplemented(L) -> bool:
    return L.perp is not None


LAWS: dict[str, Callable[..., bool]] = {
    "distributive": _distributive,
    "orthomodular": _orthomodular,
    "orthocomplemented": _orthocomplemented,
}


@dataclass(frozen=True)
class Witness:
    """A substitution instance of ``law`` that fails."""

    law: str
    elements: tuple[int, ...]

    def holds(self, L) -> bool:
        if self.law == "orthomodular" and L.perp is None:
            return False
        return LAWS[self.law](L, *self.elements)

    def describe(self, L) -> str:
        lab = [L.labels[i] for i in self.elements]
        if self.law == "distributive":
            x, y, z = self.elements
            lhs = L.meet(L.join(x, y), z)
            rhs = L.join(L.meet(x, z), L.meet(y, z))
            return (
                f"({lab[0]} v {lab[1]}) ^ {lab[2]} = {L.labels[lhs]} != "
                f"{L.labels[rhs]} = ({lab[0]} ^ {lab[2]}) v ({lab[1]} ^ {lab[2]})"
            )
        if self.law == "orthomodular":
            x, y = self.elements
            got = L.join(x, L.meet(L.perp[x], y))
            return f"{lab[0]} <= {lab[1]} but {lab[0]} v ({lab[0]}' ^ {lab[1]}) = {L.labels[got]}"
        return "no orthocomplement given"

    def to_document(self, L) -> dict:
        return {
            "law": self.law,
            "elements": [L.labels[i] for i in self.elements],
            "detail": self.describe(L),
        }


@dataclass(frozen=True)
class StructureReport:
    is_lattice: bool
    is_orthocomplemented: bool
    is_orthomodular: bool
    is_distributive: bool
    is_boolean: bool
    witnesses: dict = field(default_factory=dict)

    def to_document(self, L) -> dict:
        return {
            "is_lattice": self.is_lattice,
            "is_orthocomplemented": self.is_orthocomplemented,
            "is_orthomodular": self.is_orthomodular,
            "is_distributive": self.is_distributive,
            "is_boolean": self.is_boolean,
            "witnesses": {k: w.to_document(L) for k, w in self.witnesses.items()},
        }


def distributivity_witness(L: FiniteOrtholattice) -> Witness | None:
    J, M = L.join_table, L.meet_table
    cols = np.arange(L.n)
    for x in range(L.n):
        lhs = M[J[x][:, None], cols[None, :]]  # (x v y) ^ z, indexed [y, z]
        rhs = J[M[x][None, :], M]  # (x ^ z) v (y ^ z)
        bad = lhs != rhs
        if bad.any():
            y, z = (int(v) for v in np.argwhere(bad)[0])
            return Witness("distributive", (x, y, z))
    return None


def orthomodularity_witness(L: FiniteOrtholattice) -> Witness | None:
    if L.perp is None:
        return Witness("orthocomplemented", ())
    J, M = L.join_table, L.meet_table
    perp = np.asarray(L.perp)
    for x in range(L.n):
        ys = np.flatnonzero(L.order[x])
        got = J[x, M[perp[x], ys]]
        if (got != ys).any():
            return Witness("orthomodular", (x, int(ys[np.flatnonzero(got != ys)[0]])))
    return None


def classify(L: FiniteOrtholattice) -> StructureReport:
    """Exhaustively decide the structural laws of ``L``."""
    witnesses = {}
    ortho = L.perp is not None
    if not ortho:
        witnesses["orthocomplemented"] = Witness("orthocomplemented", ())
    om = orthomodularity_witness(L)
    if om is not None:
        witnesses["orthomodular"] = om
    dist = distributivity_witness(L)
    if dist is not None:
        witnesses["distributive"] = dist
    if not (dist is None and ortho):
        witnesses["boolean"] = dist if dist is not None else witnesses["orthocomplemented"]
    return StructureReport(
        is_lattice=True,
        is_orthocomplemented=ortho,
        is_orthomodular=om is None,
        is_distributive=dist is None,
        is_boolean=dist is None and ortho,
        witnesses=witnesses,
    )


# ---------------------------------------------------------------- downsets


def downsets(P: FinitePoset, budget: int = DEFAULT_BUDGET) -> list[int]:
    """All downsets of ``P`` as bitmasks, sorted, without duplicates."""
    order = P.linear_extension()
    strict_down = [P.down[x] & ~(1 << x) for x in range(P.n)]
    out: list[int] = []
    stack = [(0, 0)]
    while stack:
        k, mask = stack.pop()
        if k == len(order):
            out.append(mask)
            if len(out) > budget:
                raise BudgetExceeded(f"more than {budget} downsets")
            continue
        x = order[k]
        stack.append((k + 1, mask))
        if strict_down[x] & ~mask == 0:
            stack.append((k + 1, mask | (1 << x)))
    out.sort()
    return out


def hasse_dot(P: FinitePoset, name: str = "lattice") -> str:
    """Cover relation as a DOT digraph, edges pointing upward."""
    quote = lambda s: '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    lines += [f"  {quote(s)};" for s in P.labels]
    lines += [f"  {quote(P.labels[x])} -> {quote(P.labels[y])};" for x, y in P.covers()]
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- isomorphism


def find_isomorphism(A: FinitePoset, B: FinitePoset, respect_perp: bool = True):
    """An order isomorphism ``A -> B`` as a list, or None.

    Exhaustive backtracking with degree pruning; meant for instances of a
    few dozen elements.  With ``respect_perp`` both sides must carry a perp
    (or neither) and it must be preserved.
    """
    if A.n != B.n:
        return None
    pa, pb = getattr(A, "perp", None), getattr(B, "perp", None)
    if respect_perp and (pa is None) != (pb is None):
        return None
    use_perp = respect_perp and pa is not None
    sig = lambda P, x: (P.down[x].bit_count(), P.up[x].bit_count())
    if sorted(sig(A, x) for x in range(A.n)) != sorted(sig(B, x) for x in range(B.n)):
        return None
    order = A.linear_extension()
    image = [-1] * A.n
    used = [False] * B.n

    def consistent(x, y):
        for u in range(A.n):
            v = image[u]
            if v < 0:
                continue
            if A.order[u, x] != B.order[v, y] or A.order[x, u] != B.order[y, v]:
                return False
            if use_perp and ((pa[u] == x) != (pb[v] == y)):
                return False
        if use_perp and pa[x] == x and pb[y] != y:
            return False
        return True

    def extend(k):
        if k == A.n:
            return True
        x = order[k]
        for y in range(B.n):
            if used[y] or sig(A, x) != sig(B, y) or not consistent(x, y):
                continue
            image[x], used[y] = y, True
            if extend(k + 1):
                return True
            image[x], used[y] = -1, False
        return False

    return list(image) if extend(0) else None
