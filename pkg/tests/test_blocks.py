import pytest

from bohrlogic.blocks import (
    BlockPoset,
    BooleanBlock,
    amalgamate,
    enumerate_blocks,
    is_compatible,
    parse_block_poset,
    verify_partial_boolean,
)
from bohrlogic.catalog import WORKED_EXAMPLE, WORKED_EXAMPLE_BLOCKS, chain, horizontal_sum, powerset
from bohrlogic.errors import AmalgamationConflict, BudgetExceeded, NotABooleanBlock, NotOrthomodular
from bohrlogic.lattice import classify, find_isomorphism, parse_lattice
from conftest import orthomodular_corpus
from oracles import boolean_subsets_oracle


@pytest.mark.parametrize("name,L", orthomodular_corpus())
def test_enumeration_matches_subset_scan(name, L):
    P = enumerate_blocks(L)
    assert [b.carrier for b in P.blocks] == boolean_subsets_oracle(L)


def test_small_counts():
    assert len(enumerate_blocks(chain(2))) == 1
    assert len(enumerate_blocks(powerset(2))) == 2
    assert len(enumerate_blocks(horizontal_sum(4))) == 5


def test_worked_example_blocks(X):
    P = enumerate_blocks(X)
    carriers = {frozenset(X.labels[e] for e in b.by_code) for b in P.blocks}
    # a, b, c are pairwise orthogonal, so {0,a,b,c,a',b',c',1} is a block too
    assert carriers == {
        frozenset({"0", "1"}),
        *(frozenset({"0", "1", i, i + "'"}) for i in "abcd"),
        frozenset({"0", "1", "a", "b", "c", "a'", "b'", "c'"}),
    }


def test_maximal_mode(X):
    P = enumerate_blocks(X, "maximal")
    assert sorted(len(b) for b in P.blocks) == [2, 4, 8]


def test_enumeration_rejects_non_orthomodular():
    doc = {
        "elements": ["0", "a", "b", "a'", "b'", "1"],
        "covers": [["0", "a"], ["a", "b'"], ["b'", "1"], ["0", "b"], ["b", "a'"], ["a'", "1"]],
        "perp": {"0": "1", "a": "a'", "b": "b'", "a'": "a", "b'": "b", "1": "0"},
    }
    with pytest.raises(NotOrthomodular):
        enumerate_blocks(parse_lattice(doc))


def test_enumeration_budget(X):
    with pytest.raises(BudgetExceeded):
        enumerate_blocks(X, budget=3)


def test_block_poset_order(X, index_blocks):
    P = index_blocks
    b0 = P.block_index("B0")
    assert P.bottom_block == b0
    for i in range(len(P)):
        assert P.le_blocks(b0, i)
    assert not P.le_blocks(P.block_index("Ba"), P.block_index("Bb"))


def test_block_atoms_and_codes(X):
    P = enumerate_blocks(X)
    big = max(P.blocks, key=len)
    assert sorted(X.labels[a] for a in big.atoms) == ["a", "b", "c"]
    for e in big.by_code:
        assert X.join_all(a for a in big.atoms if X.le(a, e)) == e
    a, b = X.index("a"), X.index("b")
    assert big.join(a, b) == X.join(a, b) == X.index("c'")
    assert big.neg(a) == X.index("a'")


def test_invalid_carrier_rejected(X):
    with pytest.raises(NotABooleanBlock):
        BlockPoset.from_carriers(X, {"bad": ["0", "a", "1"]})
    with pytest.raises(NotABooleanBlock):
        BooleanBlock("x", (1, 2), (0, 1, 2))


def test_all_bullets_pass_on_enumerated_blocks(X):
    assert verify_partial_boolean(enumerate_blocks(X)).passed


def test_index_blocks_pass_every_bullet(X, index_blocks):
    # no listed block holds two distinct atoms, so orthogonality never
    # appears locally and the triple bullet holds vacuously
    rep = verify_partial_boolean(index_blocks)
    assert [b.name for b in rep.bullets] == [
        "shared-zero", "order-agreement", "order-composition",
        "negation-agreement", "join-agreement", "orthogonal-triple",
    ]
    assert rep.passed


def test_dropping_a_block_keeps_bullets(X):
    carriers = {k: v for k, v in WORKED_EXAMPLE_BLOCKS.items() if k != "Bd"}
    assert verify_partial_boolean(BlockPoset.from_carriers(X, carriers)).passed


def test_single_block_vacuous():
    L = powerset(2)
    assert verify_partial_boolean(enumerate_blocks(L)).passed


@pytest.mark.parametrize("name,L", orthomodular_corpus())
def test_round_trip(name, L):
    back = amalgamate(enumerate_blocks(L))
    assert classify(back).is_orthomodular
    assert find_isomorphism(back, L) is not None


def test_amalgamate_single_block():
    L = powerset(3)
    back = amalgamate(BlockPoset.from_carriers(L, [L.labels]))
    assert find_isomorphism(back, L) is not None


def test_two_blocks_give_horizontal_sum():
    L = horizontal_sum(2)
    P = BlockPoset.from_carriers(L, {"A": ["0", "a", "a'", "1"], "B": ["0", "b", "b'", "1"]})
    back = amalgamate(P)
    assert back.n == 6 and classify(back).is_orthomodular
    assert find_isomorphism(back, L) is not None


def test_index_blocks_amalgamate_to_horizontal_sum(X, index_blocks):
    back = amalgamate(index_blocks)
    assert back.n == 10
    assert find_isomorphism(back, horizontal_sum(4)) is not None
    assert find_isomorphism(back, X) is None


def test_bad_blocks_rejected():
    L = powerset(2)
    good = enumerate_blocks(L)
    a, b = L.index("{1}"), L.index("{2}")
    same = BooleanBlock("same", (a, b), (0, a, b, 3))
    with pytest.raises(NotABooleanBlock):
        BlockPoset(L.labels, [good.blocks[0], same, good.blocks[1]])
    weird = BooleanBlock("weird", (L.index("{1,2}"),), (a, L.index("{1,2}")))
    with pytest.raises((AmalgamationConflict, NotABooleanBlock)):
        amalgamate(BlockPoset(L.labels, [good.blocks[0], weird]))


@pytest.mark.parametrize("name,L", orthomodular_corpus())
def test_pairs_in_a_block_are_compatible(name, L):
    for b in enumerate_blocks(L).blocks:
        for x in b.by_code:
            for y in b.by_code:
                assert is_compatible(L, x, y)


def test_block_document_round_trip(X, index_blocks):
    doc = index_blocks.to_document()
    again = parse_block_poset(doc)
    assert again.names == index_blocks.names
    assert [b.carrier for b in again.blocks] == [b.carrier for b in index_blocks.blocks]
    assert WORKED_EXAMPLE["elements"] == list(again.labels)
