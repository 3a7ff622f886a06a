import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bohrlogic.blocks import BlockPoset, enumerate_blocks
from bohrlogic.catalog import horizontal_sum, powerset
from bohrlogic.errors import BudgetExceeded, DocumentError, MissingHost, NotASection
from bohrlogic.heyting import (
    BohrAlgebra,
    MonotoneSection,
    bohrify,
    bottom,
    embed_D,
    from_codes,
    implies,
    negate,
    parse_section,
    sasaki_report,
    negation_report,
    sec_join,
    sec_meet,
    star_isomorphism,
    top,
)
from bohrlogic.lattice import classify
from conftest import orthomodular_corpus
from oracles import implication_oracle, sections_oracle


def _small_bases():
    out = []
    for name, L in orthomodular_corpus():
        if name in ("worked", "pow3"):
            continue
        out.append((name, enumerate_blocks(L)))
    L = powerset(2)
    out.append(("chain-in-pow2", BlockPoset.from_carriers(L, [L.labels])))
    return out


@pytest.mark.parametrize("name,P", _small_bases())
def test_sections_match_product_filter(name, P):
    Y = bohrify(P)
    assert {s.values for s in Y.sections} == sections_oracle(P)
    assert Y.count() == len(Y)


def test_index_set_section_count(Y, index_blocks):
    assert len(Y) == 257
    assert len(sections_oracle(index_blocks)) == 257


def test_single_block_gives_the_block():
    L = powerset(2)
    P = BlockPoset.from_carriers(L, [L.labels], add_bottom=False)
    assert len(bohrify(P)) == 4


def test_trivial_below_four_element_block():
    L = powerset(2)
    assert len(bohrify(BlockPoset.from_carriers(L, [L.labels]))) == 5


def test_budget_enforced(index_blocks):
    with pytest.raises(BudgetExceeded):
        BohrAlgebra(index_blocks, budget=100).count()


def test_star_decomposition(Y):
    star = star_isomorphism(Y)
    assert star is not None
    assert star["product_size"] == 256 and star["factors"] == ["Ba", "Bb", "Bc", "Bd"]


def test_star_absent_for_full_enumeration(X):
    assert star_isomorphism(bohrify(enumerate_blocks(X))) is None


@pytest.mark.parametrize("name,P", _small_bases())
def test_y_is_a_distributive_lattice(name, P):
    rep = classify(bohrify(P).as_lattice())
    assert rep.is_distributive


@pytest.mark.parametrize("name,P", _small_bases())
def test_implication_matches_oracle(name, P):
    Y = bohrify(P)
    T = implication_oracle(Y.code_matrix)
    S = Y.sections
    for g in range(len(S)):
        for h in range(len(S)):
            assert Y.index(implies(S[g], S[h])) == T[g, h]


@pytest.mark.parametrize("name,P", _small_bases())
def test_adjunction_exhaustive(name, P):
    S = bohrify(P).sections
    if len(S) > 30:
        pytest.skip("covered by sampling")
    for f in S:
        for g in S:
            fg = sec_meet(f, g)
            for h in S:
                assert (fg <= h) == (f <= implies(g, h))


def test_adjunction_sampled_on_index_set(Y, rng):
    S = Y.sections
    idx = rng.integers(0, len(S), size=(3000, 3))
    for a, b, c in idx:
        f, g, h = S[a], S[b], S[c]
        assert (sec_meet(f, g) <= h) == (f <= implies(g, h))


def test_frame_law_sampled(Y, rng):
    S = Y.sections
    for a, b, c in rng.integers(0, len(S), size=(2000, 3)):
        f, g, h = S[a], S[b], S[c]
        assert sec_meet(f, sec_join(g, h)) == sec_join(sec_meet(f, g), sec_meet(f, h))


def test_negation_is_implication_into_bottom(Y):
    for f in Y.sections:
        assert negate(f, cross_check=True) == implies(f, bottom(Y.base))


def test_negation_is_pseudocomplement(Y):
    S = Y.sections
    bot = bottom(Y.base)
    for f in S[::7]:
        disjoint = [u for u in S if sec_meet(u, f) == bot]
        n = negate(f)
        assert n in disjoint and all(u <= n for u in disjoint)


def test_embedding_properties(X, index_blocks):
    P = index_blocks
    assert embed_D(P, X.bottom) == bottom(P)
    assert embed_D(P, X.top) == top(P)
    for x in range(X.n):
        d = embed_D(P, x)
        MonotoneSection(P, d.values)  # validates
        for y in range(X.n):
            if X.le(x, y) and any(x in b and y in b for b in P.blocks if x != X.bottom):
                assert d <= embed_D(P, y)


def test_non_monotone_rejected(X, index_blocks):
    P = index_blocks
    vals = list(bottom(P).values)
    vals[P.block_index("B0")] = X.top
    with pytest.raises(NotASection):
        MonotoneSection(P, vals)
    with pytest.raises(NotASection):
        MonotoneSection(P, vals[:-1])
    with pytest.raises(AttributeError):
        top(P).values = ()


def test_parse_section(X, index_blocks):
    P = index_blocks
    assert parse_section(P, "top") == top(P)
    assert parse_section(P, "bottom") == bottom(P)
    d = parse_section(P, "D(a)")
    assert d == embed_D(P, X.index("a"))
    assert parse_section(P, d.to_document()) == d
    with pytest.raises(DocumentError):
        parse_section(P, "E(a)")
    with pytest.raises(DocumentError):
        parse_section(P, {"B0": "0"})


def test_sasaki_against_heyting(X, index_blocks):
    a, b = X.index("a"), X.index("b")
    rep = sasaki_report(index_blocks, a, b)
    assert rep.displays_match
    heyting = dict(zip(index_blocks.names, (X.labels[v] for v in rep.heyting.values)))
    assert heyting == {"B0": "0", "Ba": "a'", "Bb": "1", "Bc": "1", "Bd": "1"}
    assert rep.agreement == ["B0", "Ba"]


@settings(max_examples=30, deadline=None)
@given(st.sampled_from("abcd"), st.sampled_from("abcd"))
def test_sasaki_displays_match_for_distinct_atoms(x, y):
    # the three-case display assumes x, y are distinct atoms; for x <= y the
    # hook is 1, which lies in every block
    if x == y:
        return
    from bohrlogic.catalog import WORKED_EXAMPLE_BLOCKS, worked_example

    L = worked_example()
    P = BlockPoset.from_carriers(L, WORKED_EXAMPLE_BLOCKS, add_bottom=False)
    assert sasaki_report(P, L.index(x), L.index(y)).displays_match


def test_sasaki_needs_host(index_blocks):
    bare = BlockPoset(index_blocks.labels, index_blocks.blocks)
    with pytest.raises(MissingHost):
        sasaki_report(bare, 1, 2)


def test_negation_report_shape(X, index_blocks):
    rows = negation_report(index_blocks, X.index("a"))
    assert [r["block"] for r in rows] == list(index_blocks.names)
    agree = [r["block"] for r in rows if r["agree"]]
    assert "Ba" in agree and "B0" in agree


def test_horizontal_sum_y_size():
    # bottom block {0,1} under k four-element blocks: 4^k + 1 sections
    for k in (2, 3):
        assert len(bohrify(enumerate_blocks(horizontal_sum(k)))) == 4 ** k + 1


def test_codes_round_trip(Y):
    C = Y.code_matrix
    for row in C[::13].tolist():
        assert from_codes(Y.base, row).codes() == tuple(row)
    assert np.array_equal(np.sort(C, axis=0)[:, 0], np.sort(C[:, 0]))
