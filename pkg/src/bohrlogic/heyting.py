"""The Heyting algebra Y of monotone sections over a block poset.

A section picks ``f(i)`` in block ``B_i`` for every block, monotonically in
block inclusion.  Meet and join are blockwise; implication and negation are
nonlocal: the value at ``i`` looks at every block above ``i``.  All
comparisons happen inside blocks, so a host lattice is only needed for the
Sasaki hook.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Mapping, Sequence

import numpy as np

from .blocks import BlockPoset
from .errors import BudgetExceeded, DocumentError, MissingHost, MixedBase, NotASection
from .lattice import DEFAULT_BUDGET, FiniteOrtholattice, bits, find_isomorphism


class MonotoneSection:
    """Immutable section; ``values[i]`` is a global element id in block ``i``."""

    __slots__ = ("base", "values")

    def __init__(self, base: BlockPoset, values: Sequence[int], check: bool = True):
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "values", tuple(int(v) for v in values))
        if check:
            self._validate()

    def __setattr__(self, *_):
        raise AttributeError("MonotoneSection is immutable")

    def _validate(self):
        P, vals = self.base, self.values
        if len(vals) != len(P):
            raise NotASection(f"expected {len(P)} values, got {len(vals)}")
        for i, (b, v) in enumerate(zip(P.blocks, vals)):
            if v not in b:
                raise NotASection(
                    f"value {P.labels[v]} is not in block {b.name}", witness=(b.name, P.labels[v])
                )
        for i in range(len(P)):
            for j in bits(P.up[i]):
                if j != i and not P.blocks[j].le(vals[i], vals[j]):
                    raise NotASection(
                        f"not monotone: {P.blocks[i].name} -> {P.labels[vals[i]]} but "
                        f"{P.blocks[j].name} -> {P.labels[vals[j]]}",
                        witness=(P.blocks[i].name, P.blocks[j].name),
                    )

    def __getitem__(self, i: int) -> int:
        return self.values[i]

    def __eq__(self, other):
        return (
            isinstance(other, MonotoneSection)
            and other.base is self.base
            and other.values == self.values
        )

    def __hash__(self):
        return hash((id(self.base), self.values))

    def __le__(self, other: "MonotoneSection") -> bool:
        _same_base(self, other)
        return all(
            b.le(x, y) for b, x, y in zip(self.base.blocks, self.values, other.values)
        )

    def codes(self) -> tuple[int, ...]:
        return tuple(b.code[v] for b, v in zip(self.base.blocks, self.values))

    def to_document(self) -> dict:
        P = self.base
        return {b.name: P.labels[v] for b, v in zip(P.blocks, self.values)}

    def label(self) -> str:
        return "[" + ", ".join(f"{k}->{v}" for k, v in self.to_document().items()) + "]"

    def __repr__(self):
        return f"MonotoneSection{self.label()}"


def _same_base(*sections: MonotoneSection) -> BlockPoset:
    base = sections[0].base
    for s in sections[1:]:
        if s.base is not base:
            raise MixedBase("sections live over different block posets")
    return base


def top(P: BlockPoset) -> MonotoneSection:
    return MonotoneSection(P, [b.top for b in P.blocks], check=False)


def bottom(P: BlockPoset) -> MonotoneSection:
    return MonotoneSection(P, [b.bottom for b in P.blocks], check=False)


def from_codes(P: BlockPoset, codes: Sequence[int]) -> MonotoneSection:
    return MonotoneSection(P, [b.by_code[c] for b, c in zip(P.blocks, codes)], check=False)


# ---------------------------------------------------------------- operations


def sec_meet(f: MonotoneSection, g: MonotoneSection) -> MonotoneSection:
    P = _same_base(f, g)
    return MonotoneSection(P, [b.meet(x, y) for b, x, y in zip(P.blocks, f.values, g.values)], check=False)


def sec_join(f: MonotoneSection, g: MonotoneSection) -> MonotoneSection:
    P = _same_base(f, g)
    return MonotoneSection(P, [b.join(x, y) for b, x, y in zip(P.blocks, f.values, g.values)], check=False)


def implies(g: MonotoneSection, h: MonotoneSection) -> MonotoneSection:
    """(g => h)(i): join of x in B_i with x <= g(j)' v h(j) for all j >= i."""
    P = _same_base(g, h)
    B = P.blocks
    local = [b.sasaki(x, y) for b, x, y in zip(B, g.values, h.values)]
    vals = [B[i].glb_below([(B[j], local[j]) for j in bits(P.up[i])]) for i in range(len(P))]
    return MonotoneSection(P, vals, check=False)


def negate(f: MonotoneSection, cross_check: bool = False) -> MonotoneSection:
    """(not f)(i): greatest element of B_i below f(j)' for every j >= i."""
    P = f.base
    B = P.blocks
    vals = [
        B[i].glb_below([(B[j], B[j].neg(f.values[j])) for j in bits(P.up[i])])
        for i in range(len(P))
    ]
    out = MonotoneSection(P, vals, check=False)
    if cross_check and out != implies(f, bottom(P)):
        raise AssertionError(f"negation formula disagrees with f => bottom at {f.label()}")
    return out


def embed_D(P: BlockPoset, x: int) -> MonotoneSection:
    """D(x)(i) = x if x is in B_i, else 0."""
    return MonotoneSection(P, [x if x in b else b.bottom for b in P.blocks], check=False)


def parse_section(P: BlockPoset, spec) -> MonotoneSection:
    """Accepts ``top``, ``bottom``, ``D(label)`` or a {block: element} map."""
    if isinstance(spec, str):
        s = spec.strip()
        if s == "top":
            return top(P)
        if s == "bottom":
            return bottom(P)
        if s.startswith("D(") and s.endswith(")"):
            return embed_D(P, P.element(s[2:-1].strip()))
        raise DocumentError(f"cannot read section {spec!r}")
    if isinstance(spec, Mapping):
        vals = [None] * len(P)
        for name, label in spec.items():
            vals[P.block_index(str(name))] = P.element(str(label))
        missing = [P.blocks[i].name for i, v in enumerate(vals) if v is None]
        if missing:
            raise DocumentError(f"section misses blocks {missing}", witness=tuple(missing))
        return MonotoneSection(P, vals)
    raise DocumentError("a section is a string or a block->element map")


# ----------------------------------------------------------------- algebra


class BohrAlgebra:
    """Handle on Y over ``base``; enumerates sections lazily under a budget."""

    def __init__(self, base: BlockPoset, budget: int = DEFAULT_BUDGET):
        self.base = base
        self.budget = budget
        self.top = top(base)
        self.bottom = bottom(base)

    def _walk(self) -> Iterator[tuple[int, ...]]:
        """Code vectors of all sections, blocks filled in topological order."""
        P = self.base
        B = P.blocks
        order = P.topo
        codes = [0] * len(P)

        def rec(k):
            if k == len(order):
                yield tuple(codes)
                return
            i = order[k]
            lb = 0
            for j in bits(P.down[i]):
                if j != i:
                    lb |= B[i].code[B[j].by_code[codes[j]]]
            free = B[i].full & ~lb
            sub = free
            while True:
                codes[i] = lb | sub
                yield from rec(k + 1)
                if sub == 0:
                    break
                sub = (sub - 1) & free

        return rec(0)

    def count(self) -> int:
        n = 0
        for _ in self._walk():
            n += 1
            if n > self.budget:
                raise BudgetExceeded(f"more than {self.budget} sections")
        return n

    @cached_property
    def code_matrix(self) -> np.ndarray:
        """Row per section, column per block, entries are atom codes; rows sorted."""
        rows = []
        for c in self._walk():
            rows.append(c)
            if len(rows) > self.budget:
                raise BudgetExceeded(f"more than {self.budget} sections")
        rows.sort()
        return np.array(rows, dtype=np.int64).reshape(len(rows), len(self.base))

    @cached_property
    def sections(self) -> tuple[MonotoneSection, ...]:
        return tuple(from_codes(self.base, r) for r in self.code_matrix.tolist())

    def __len__(self):
        return len(self.sections)

    def index(self, f: MonotoneSection) -> int:
        return self._index[f.values]

    @cached_property
    def _index(self) -> dict:
        return {s.values: k for k, s in enumerate(self.sections)}

    @cached_property
    def order_matrix(self) -> np.ndarray:
        """order[u, v] iff section u <= section v."""
        C = self.code_matrix
        le = np.ones((len(C), len(C)), dtype=bool)
        for i in range(C.shape[1]):
            col = C[:, i]
            le &= (col[:, None] & ~col[None, :]) == 0
        return le

    def as_lattice(self) -> FiniteOrtholattice:
        return FiniteOrtholattice([s.label() for s in self.sections], self.order_matrix)

    def to_document(self, enumerate_sections: bool = False) -> dict:
        doc = {"blocks": list(self.base.names), "count": len(self)}
        if enumerate_sections:
            doc["sections"] = [s.to_document() for s in self.sections]
        return doc


def bohrify(P: BlockPoset, budget: int = DEFAULT_BUDGET) -> BohrAlgebra:
    return BohrAlgebra(P, budget)


# ------------------------------------------------------ star decomposition


def star_isomorphism(Y: BohrAlgebra) -> dict | None:
    """Exhibit Y = (product of the non-bottom blocks) + {top}, if it holds.

    This holds when every non-bottom block sits directly above a trivial
    bottom block and no two of them are comparable.  The candidate map sends
    a section with f(bottom) = 0 to its tuple of values and the section with
    f(bottom) = 1 to the adjoined top; it is returned only if it is an order
    isomorphism.
    """
    P = Y.base
    b0 = P.bottom_block
    if len(P.blocks[b0]) != 2:
        return None
    rest = [i for i in range(len(P)) if i != b0]
    if any(P.up[i] != 1 << i for i in rest):
        return None
    C = Y.code_matrix
    # product order plus a top: compare codes on the rest, top above all
    is_top = C[:, b0] == 1
    prod = np.ones((len(C), len(C)), dtype=bool)
    for i in rest:
        col = C[:, i]
        prod &= (col[:, None] & ~col[None, :]) == 0
    expected = (prod & ~is_top[:, None] & ~is_top[None, :]) | is_top[None, :]
    size = 1
    for i in rest:
        size *= len(P.blocks[i])
    if len(C) != size + 1 or is_top.sum() != 1 or not np.array_equal(expected, Y.order_matrix):
        return None
    names = [P.blocks[i].name for i in rest]
    return {
        "factors": names,
        "product_size": size,
        "map": [
            "top" if t else [P.labels[P.blocks[i].by_code[c]] for i, c in zip(rest, row[rest])]
            for t, row in zip(is_top.tolist(), C)
        ],
    }


def isomorphic_to(Y: BohrAlgebra, L: FiniteOrtholattice):
    """Generic order-isomorphism search between Y and a small lattice."""
    return find_isomorphism(Y.as_lattice(), L, respect_perp=False)


# ------------------------------------------------------------ Sasaki hook


def sasaki_hook(L: FiniteOrtholattice, x: int, y: int) -> int:
    return L.join(L.perp[x], L.meet(x, y))


@dataclass(frozen=True)
class SasakiRow:
    block: str
    case: str
    hook: str          # D(x =>_S y)(i)
    hook_display: str  # three-case display value
    heyting: str       # (D(x) => D(y))(i)
    heyting_display: str

    @property
    def agree(self) -> bool:
        return self.hook == self.heyting


@dataclass(frozen=True)
class SasakiReport:
    x: str
    y: str
    hook: MonotoneSection
    heyting: MonotoneSection
    rows: tuple[SasakiRow, ...]

    @property
    def agreement(self) -> list[str]:
        return [r.block for r in self.rows if r.agree]

    @property
    def displays_match(self) -> bool:
        return all(r.hook == r.hook_display and r.heyting == r.heyting_display for r in self.rows)

    def to_document(self) -> dict:
        return {
            "x": self.x,
            "y": self.y,
            "displays_match": self.displays_match,
            "agreement": self.agreement,
            "rows": [
                {
                    "block": r.block,
                    "case": r.case,
                    "D(x=>_S y)": r.hook,
                    "display": r.hook_display,
                    "D(x)=>D(y)": r.heyting,
                    "display_heyting": r.heyting_display,
                    "agree": r.agree,
                }
                for r in self.rows
            ],
        }


def sasaki_report(P: BlockPoset, x: int, y: int) -> SasakiReport:
    """Compare D(x =>_S y) with D(x) => D(y) block by block.

    Each side is also recomputed from its three-case display (by whether x
    and y lie in the block) and compared with the direct computation.
    """
    L = P.host
    if L is None:
        raise MissingHost("the Sasaki hook needs the host lattice of the blocks")
    lab = P.labels
    B = P.blocks
    hook = embed_D(P, sasaki_hook(L, x, y))
    heyting = implies(embed_D(P, x), embed_D(P, y))

    def case_value(b, for_hook):
        if x not in b:
            return b.bottom if for_hook else b.top
        if y not in b:
            return b.neg(x)
        return b.join(b.neg(x), b.meet(x, y)) if for_hook else b.join(b.neg(x), y)

    rows = []
    for i, b in enumerate(B):
        case = "x not in B_i" if x not in b else ("y not in B_i" if y not in b else "x, y in B_i")
        disp_h = B[i].glb_below([(B[j], case_value(B[j], False)) for j in bits(P.up[i])])
        rows.append(SasakiRow(
            b.name, case, lab[hook[i]], lab[case_value(b, True)], lab[heyting[i]], lab[disp_h]
        ))
    return SasakiReport(lab[x], lab[y], hook, heyting, tuple(rows))


def negation_report(P: BlockPoset, x: int) -> list[dict]:
    """Blockwise D(x') against not D(x)."""
    L = P.host
    if L is None:
        raise MissingHost("negation comparison needs the host lattice")
    lab = P.labels
    a = embed_D(P, L.perp[x])
    n = negate(embed_D(P, x))
    return [
        {"block": b.name, "D(x')": lab[a[i]], "not D(x)": lab[n[i]], "agree": a[i] == n[i]}
        for i, b in enumerate(P.blocks)
    ]
