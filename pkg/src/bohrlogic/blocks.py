"""Boolean blocks and block posets (partial Boolean algebras).

A block is stored intrinsically through its atoms: each carrier element has
a ``code``, the bitmask of atoms below it, so block-local meet, join and
complement are bit operations on codes.  Element ids are global, shared by
every block of a :class:`BlockPoset`, which is what makes ``x in B_i`` and
``B_i <= B_j`` meaningful.  A host lattice is optional; the matrix layer
builds block posets without one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    AmalgamationConflict,
    BudgetExceeded,
    DocumentError,
    NotABooleanBlock,
    NotOrthomodular,
)
from .lattice import (
    DEFAULT_BUDGET,
    FiniteOrtholattice,
    bits,
    classify,
    load_json,
    mask_of,
    parse_lattice,
    transitive_closure,
)


@dataclass(frozen=True, eq=False)
class BooleanBlock:
    """A finite Boolean algebra whose elements are global ids.

    ``by_code[c]`` is the element whose atom set is ``c``; ``code`` is the
    inverse map.  ``atoms`` lists the atom element ids in code-bit order.
    """

    name: str
    atoms: tuple[int, ...]
    by_code: tuple[int, ...]

    def __post_init__(self):
        if len(self.by_code) != 1 << len(self.atoms):
            raise NotABooleanBlock(f"block {self.name}: need 2^k elements for k atoms")
        if len(set(self.by_code)) != len(self.by_code):
            raise NotABooleanBlock(f"block {self.name}: two atom sets name the same element")
        object.__setattr__(self, "code", {e: c for c, e in enumerate(self.by_code)})
        object.__setattr__(self, "carrier", mask_of(self.by_code))

    @property
    def full(self) -> int:
        return (1 << len(self.atoms)) - 1

    @property
    def bottom(self) -> int:
        return self.by_code[0]

    @property
    def top(self) -> int:
        return self.by_code[self.full]

    def __contains__(self, x: int) -> bool:
        return x in self.code

    def __len__(self):
        return len(self.by_code)

    def le(self, x: int, y: int) -> bool:
        return self.code[x] & ~self.code[y] == 0

    def meet(self, x: int, y: int) -> int:
        return self.by_code[self.code[x] & self.code[y]]

    def join(self, x: int, y: int) -> int:
        return self.by_code[self.code[x] | self.code[y]]

    def neg(self, x: int) -> int:
        return self.by_code[self.full ^ self.code[x]]

    def sasaki(self, x: int, y: int) -> int:
        """Boolean implication x' v y inside the block."""
        return self.by_code[(self.full ^ self.code[x]) | self.code[y]]

    def glb_below(self, bounds: Sequence[tuple["BooleanBlock", int]]) -> int:
        """Greatest element of this block lying below every ``(block_j, y_j)``.

        Each ``block_j`` must contain this block, so ``x <= y_j`` is decided
        inside ``block_j``.  The answer is the join of all qualifying atoms.
        """
        code = 0
        for bit, atom in enumerate(self.atoms):
            if all(bj.le(atom, y) for bj, y in bounds):
                code |= 1 << bit
        return self.by_code[code]


def block_from_host(L: FiniteOrtholattice, carrier: int, name: str = "") -> BooleanBlock:
    """Read a Boolean subalgebra of ``L`` off its carrier, validating it."""
    elems = list(bits(carrier))
    S = set(elems)
    lab = L.labels
    if L.bottom not in S or L.top not in S:
        raise NotABooleanBlock(f"block {name} must contain 0 and 1", witness=(name,))
    for x in elems:
        if L.perp is None or L.perp[x] not in S:
            raise NotABooleanBlock(f"block {name} not closed under perp at {lab[x]}", witness=(lab[x],))
        for y in elems:
            if L.meet(x, y) not in S or L.join(x, y) not in S:
                raise NotABooleanBlock(
                    f"block {name} not closed under meet/join at {lab[x]}, {lab[y]}",
                    witness=(lab[x], lab[y]),
                )
    sub = np.array(elems)
    M = L.meet_table[np.ix_(sub, sub)]
    J = L.join_table[np.ix_(sub, sub)]
    pos = {e: i for i, e in enumerate(elems)}
    remap = np.vectorize(pos.__getitem__)
    Mi, Ji = remap(M), remap(J)
    k = len(elems)
    cols = np.arange(k)
    for x in range(k):
        if (Mi[Ji[x][:, None], cols[None, :]] != Ji[Mi[x][None, :], Mi]).any():
            raise NotABooleanBlock(f"block {name} is not distributive", witness=(name,))
    atoms = [x for x in elems if x != L.bottom and all(
        y == L.bottom or y == x or not L.le(y, x) for y in elems)]
    by_code = []
    for c in range(1 << len(atoms)):
        by_code.append(L.join_all(a for i, a in enumerate(atoms) if c >> i & 1))
    if sorted(by_code) != sorted(elems):
        raise NotABooleanBlock(f"block {name}: atoms do not generate the carrier", witness=(name,))
    return BooleanBlock(name or _default_name(L, atoms), tuple(atoms), tuple(by_code))


def _default_name(L, atoms) -> str:
    return "B(" + ",".join(L.labels[a] for a in atoms) + ")"


class BlockPoset:
    """Inclusion-ordered family of Boolean blocks over shared element ids.

    ``up[i]`` is the bitmask of blocks containing block ``i`` (itself
    included).  ``host`` is the lattice the blocks were cut from, if any.
    """

    def __init__(
        self,
        labels: Sequence[str],
        blocks: Sequence[BooleanBlock],
        host: FiniteOrtholattice | None = None,
    ):
        self.labels = tuple(labels)
        self.blocks = tuple(blocks)
        self.host = host
        if not self.blocks:
            raise NotABooleanBlock("a block poset needs at least one block")
        bots = {b.bottom for b in self.blocks}
        tops = {b.top for b in self.blocks}
        if len(bots) != 1 or len(tops) != 1:
            raise NotABooleanBlock("blocks disagree on 0 or 1", witness=(sorted(bots), sorted(tops)))
        self.bottom, self.top = bots.pop(), tops.pop()
        carriers = [b.carrier for b in self.blocks]
        if len(set(carriers)) != len(carriers):
            i = next(i for i, c in enumerate(carriers) if carriers.count(c) > 1)
            raise NotABooleanBlock(f"duplicate carrier for block {self.blocks[i].name}")
        k = len(self.blocks)
        self.up = tuple(
            mask_of(j for j in range(k) if carriers[i] & ~carriers[j] == 0) for i in range(k)
        )
        self.down = tuple(mask_of(j for j in range(k) if self.up[j] >> i & 1) for i in range(k))
        bottoms = [i for i in range(k) if self.up[i] == (1 << k) - 1]
        if not bottoms:
            raise NotABooleanBlock("no block is contained in all others (missing {0,1} block?)")
        self.bottom_block = bottoms[0]
        # blocks ordered so that every block comes after the blocks it contains
        self.topo = sorted(range(k), key=lambda i: (len(self.blocks[i]), i))
        self.containing = tuple(
            mask_of(i for i in range(k) if x in self.blocks[i]) for x in range(len(self.labels))
        )

    def __len__(self):
        return len(self.blocks)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(b.name for b in self.blocks)

    def block_index(self, name: str) -> int:
        for i, b in enumerate(self.blocks):
            if b.name == name:
                return i
        raise DocumentError(f"unknown block {name!r}", witness=(name,))

    def element(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise DocumentError(f"unknown element label {label!r}", witness=(label,)) from None

    def le_blocks(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def above(self, i: int) -> list[int]:
        return list(bits(self.up[i]))

    def elements(self) -> int:
        m = 0
        for b in self.blocks:
            m |= b.carrier
        return m

    def to_document(self) -> dict:
        doc = {
            "blocks": [
                {"name": b.name, "carrier": [self.labels[e] for e in sorted(b.by_code)]}
                for b in self.blocks
            ],
            "order": [
                [self.blocks[i].name, self.blocks[j].name]
                for i in range(len(self)) for j in bits(self.up[i]) if i != j
            ],
        }
        if self.host is not None:
            doc["host"] = self.host.to_document()
        return doc

    @classmethod
    def from_carriers(
        cls,
        host: FiniteOrtholattice,
        carriers: Mapping[str, Sequence[str]] | Sequence[Sequence[str]],
        add_bottom: bool = True,
    ) -> "BlockPoset":
        """Blocks given by label lists, validated against ``host``."""
        if not isinstance(carriers, Mapping):
            carriers = {f"#{i}": c for i, c in enumerate(carriers)}
        blocks = []
        for name, labels in carriers.items():
            m = mask_of(host.index(s) for s in labels)
            blocks.append(block_from_host(host, m, "" if name.startswith("#") or not name else name))
        trivial = (1 << host.bottom) | (1 << host.top)
        if add_bottom and all(b.carrier != trivial for b in blocks):
            blocks.insert(0, block_from_host(host, trivial))
        return cls(host.labels, blocks, host)


def parse_block_poset(doc) -> BlockPoset:
    """Block-poset document: ``host`` lattice document plus named carriers."""
    if isinstance(doc, (str, bytes)):
        doc = load_json(doc)
    if not isinstance(doc, dict) or "host" not in doc or "blocks" not in doc:
        raise DocumentError("block document needs 'host' and 'blocks'")
    host = parse_lattice(doc["host"])
    carriers = {}
    for entry in doc["blocks"]:
        try:
            carriers[str(entry["name"])] = [str(s) for s in entry["carrier"]]
        except (KeyError, TypeError):
            raise DocumentError("each block needs 'name' and 'carrier'") from None
    return BlockPoset.from_carriers(host, carriers, add_bottom=False)


# ------------------------------------------------------------ enumeration


def enumerate_blocks(
    X: FiniteOrtholattice, mode: str = "all", budget: int = DEFAULT_BUDGET
) -> BlockPoset:
    """All Boolean subalgebras of an orthomodular ``X``, ordered by carrier mask.

    A finite Boolean subalgebra is fixed by its atoms, which are pairwise
    orthogonal nonzero elements joining to 1.  The search grows such
    orthogonal families (each new element must lie below the perp of the
    current join) and closes each complete family under joins.
    """
    if mode not in ("all", "maximal"):
        raise ValueError(f"mode must be 'all' or 'maximal', not {mode!r}")
    report = classify(X)
    if not report.is_orthomodular:
        w = report.witnesses["orthomodular"]
        raise NotOrthomodular(
            f"blocks need an orthomodular lattice: {w.describe(X)}",
            witness=tuple(X.labels[i] for i in w.elements),
        )
    candidates = [x for x in range(X.n) if x != X.bottom]
    carriers = set()
    nodes = 0
    stack = [((), X.bottom, 0)]
    while stack:
        fam, joined, start = stack.pop()
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(f"orthogonal-family search exceeded {budget} nodes")
        if joined == X.top:
            carriers.add(
                mask_of(X.join_all(a for i, a in enumerate(fam) if c >> i & 1)
                        for c in range(1 << len(fam)))
            )
            continue
        room = X.perp[joined]
        for idx in range(start, len(candidates)):
            z = candidates[idx]
            if X.le(z, room):
                stack.append((fam + (z,), X.join(joined, z), idx + 1))
    blocks = sorted(carriers)
    if mode == "maximal":
        trivial = (1 << X.bottom) | (1 << X.top)
        blocks = [c for c in blocks if c == trivial or not any(
            d != c and c & ~d == 0 for d in blocks)]
    return BlockPoset(X.labels, [block_from_host(X, c) for c in blocks], X)


# ----------------------------------------------------------- verification


@dataclass(frozen=True)
class Bullet:
    name: str
    passed: bool
    witness: tuple = ()


@dataclass(frozen=True)
class PartialBooleanReport:
    bullets: tuple[Bullet, ...]

    @property
    def passed(self) -> bool:
        return all(b.passed for b in self.bullets)

    def __getitem__(self, name: str) -> Bullet:
        return next(b for b in self.bullets if b.name == name)

    def to_document(self) -> dict:
        return {
            "passed": self.passed,
            "bullets": [
                {"name": b.name, "passed": b.passed, "witness": list(b.witness)}
                for b in self.bullets
            ],
        }


def _local_order(P: BlockPoset) -> np.ndarray:
    """R[x, y] iff x <=_i y for some block i."""
    n = len(P.labels)
    R = np.zeros((n, n), dtype=bool)
    for b in P.blocks:
        for x in b.by_code:
            for y in b.by_code:
                if b.le(x, y):
                    R[x, y] = True
    return R


def verify_partial_boolean(P: BlockPoset) -> PartialBooleanReport:
    """Check the six coherence conditions of a partial Boolean algebra.

    Block-local operations are used throughout, so disagreement between
    blocks on an overlap is detectable even without a host lattice.
    """
    lab = P.labels
    out = []

    bots = {b.bottom for b in P.blocks}
    out.append(Bullet("shared-zero", len(bots) == 1, tuple(lab[x] for x in sorted(bots)) if len(bots) > 1 else ()))

    def overlap_check(name, op):
        for i, bi in enumerate(P.blocks):
            for j in range(i + 1, len(P.blocks)):
                bj = P.blocks[j]
                common = [x for x in bi.by_code if x in bj]
                for x in common:
                    for y in common:
                        if op(bi, x, y) != op(bj, x, y):
                            return Bullet(name, False, (bi.name, bj.name, lab[x], lab[y]))
        return Bullet(name, True)

    out.append(overlap_check("order-agreement", lambda b, x, y: b.le(x, y)))

    R = _local_order(P)
    Ri = R.astype(np.int64)
    comp = (Ri @ Ri) > 0
    bad = comp & ~R
    if bad.any():
        x, z = (int(v) for v in np.argwhere(bad)[0])
        y = int(np.flatnonzero(R[x] & R[:, z])[0])
        out.append(Bullet("order-composition", False, (lab[x], lab[y], lab[z])))
    else:
        out.append(Bullet("order-composition", True))

    out.append(overlap_check("negation-agreement", lambda b, x, y: b.neg(x)))
    out.append(overlap_check("join-agreement", lambda b, x, y: b.join(x, y)))

    witness = ()
    seen = set()
    for b in P.blocks:
        for x in b.by_code:
            for y in b.by_code:
                if (x, y) in seen or not b.le(y, b.neg(x)):
                    continue
                seen.add((x, y))
                for z in np.flatnonzero(R[x] & R[y]):
                    z = int(z)
                    if P.containing[x] & P.containing[y] & P.containing[z] == 0:
                        witness = (lab[x], lab[y], lab[z])
                        break
                if witness:
                    break
            if witness:
                break
        if witness:
            break
    out.append(Bullet("orthogonal-triple", not witness, witness))
    return PartialBooleanReport(tuple(out))


# ------------------------------------------------------------ amalgamation


def amalgamate(P: BlockPoset) -> FiniteOrtholattice:
    """Glue the blocks into one orthomodular lattice on the union of carriers.

    The order is the transitive closure of the block orders and perp is the
    block complement.  Raises AmalgamationConflict when blocks disagree on an
    overlap, or when the glued structure does not inherit the block
    operations.
    """
    report = verify_partial_boolean(P)
    for name in ("order-agreement", "negation-agreement", "join-agreement"):
        if not report[name].passed:
            raise AmalgamationConflict(f"blocks disagree ({name})", witness=report[name].witness)
    ids = list(bits(P.elements()))
    pos = {e: i for i, e in enumerate(ids)}
    R = _local_order(P)[np.ix_(ids, ids)]
    perp = [0] * len(ids)
    for b in P.blocks:
        for x in b.by_code:
            perp[pos[x]] = pos[b.neg(x)]
    L = FiniteOrtholattice([P.labels[e] for e in ids], transitive_closure(R), perp)
    for b in P.blocks:
        for x in b.by_code:
            for y in b.by_code:
                if L.join(pos[x], pos[y]) != pos[b.join(x, y)] or L.meet(pos[x], pos[y]) != pos[b.meet(x, y)]:
                    raise AmalgamationConflict(
                        f"glued lattice does not inherit the operations of {b.name}",
                        witness=(b.name, P.labels[x], P.labels[y]),
                    )
    rep = classify(L)
    if not rep.is_orthomodular:
        w = rep.witnesses["orthomodular"]
        raise AmalgamationConflict(
            "glued lattice is not orthomodular", witness=tuple(L.labels[i] for i in w.elements)
        )
    return L


def is_compatible(L: FiniteOrtholattice, x: int, y: int) -> bool:
    """x and y are compatible iff y = (y ^ x') v (y ^ x)."""
    return L.join(L.meet(y, L.perp[x]), L.meet(y, x)) == y
