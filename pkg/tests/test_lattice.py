import numpy as np
import pytest
from hypothesis import given, settings

from bohrlogic.catalog import WORKED_EXAMPLE, chain, horizontal_sum, powerset
from bohrlogic.errors import BadPerp, BudgetExceeded, DocumentError, NotALattice, NotAPoset
from bohrlogic.lattice import (
    FiniteOrtholattice,
    classify,
    downsets,
    dump_json,
    find_isomorphism,
    hasse_dot,
    load_json,
    parse_lattice,
)
from conftest import moore_lattices, orthomodular_corpus
from oracles import downsets_oracle


def test_two_chain_meet_is_min_join_is_max():
    L = parse_lattice({"elements": ["0", "1"], "covers": [["0", "1"]]})
    assert L.meet(0, 1) == 0 and L.join(0, 1) == 1
    assert (L.bottom, L.top) == (0, 1)


def test_worked_example_parses_as_ortholattice(X):
    assert X.n == 10
    assert X.perp is not None
    a, bp = X.index("a"), X.index("b'")
    assert X.le(a, bp)


def test_n_shaped_poset_is_not_a_lattice():
    doc = {"elements": ["x", "y", "z", "w"], "covers": [["x", "z"], ["y", "z"], ["x", "w"], ["y", "w"]]}
    with pytest.raises(NotALattice) as e:
        parse_lattice(doc)
    assert set(e.value.witness) in ({"z", "w"}, {"x", "y"})


def test_cycle_rejected():
    with pytest.raises(NotAPoset):
        parse_lattice({"elements": ["a", "b"], "covers": [["a", "b"], ["b", "a"]]})


def test_bad_perp_rejected():
    doc = {"elements": ["0", "a", "1"], "covers": [["0", "a"], ["a", "1"]], "perp": {"0": "1", "a": "a", "1": "0"}}
    with pytest.raises(BadPerp):
        parse_lattice(doc)


def test_documents_reject_nan_and_both_relations():
    with pytest.raises(DocumentError):
        load_json('{"x": NaN}')
    with pytest.raises(DocumentError):
        parse_lattice({"elements": ["0"], "covers": [], "leq": []})


def test_leq_and_covers_give_same_lattice():
    L1 = powerset(2)
    doc = L1.to_document()
    leq = [[L1.labels[x], L1.labels[y]] for x in range(L1.n) for y in range(L1.n) if L1.le(x, y)]
    L2 = parse_lattice({"elements": doc["elements"], "leq": leq, "perp": doc["perp"]})
    assert np.array_equal(L1.order, L2.order)


def test_document_round_trip_is_bit_exact(X):
    text = dump_json(X.to_document())
    again = parse_lattice(text)
    assert dump_json(again.to_document()) == text
    assert find_isomorphism(X, again) == list(range(X.n))


def test_worked_example_classification(X):
    rep = classify(X)
    assert rep.is_orthomodular and not rep.is_distributive and not rep.is_boolean
    w = rep.witnesses["distributive"]
    assert not w.holds(X)


def test_powerset_is_boolean():
    assert classify(powerset(3)).is_boolean


def test_subspace_fragment_of_the_plane():
    # {0, span(e1), span(e1+e2), whole}; perp of span(e1) is span(e2), absent,
    # so the only involutive complement swaps the two lines.
    L = parse_lattice({
        "elements": ["0", "e1", "e1+e2", "1"],
        "covers": [["0", "e1"], ["0", "e1+e2"], ["e1", "1"], ["e1+e2", "1"]],
        "perp": {"0": "1", "e1": "e1+e2", "e1+e2": "e1", "1": "0"},
    })
    rep = classify(L)
    assert rep.is_orthomodular and rep.is_boolean


def test_mo2_not_distributive_but_orthomodular():
    rep = classify(horizontal_sum(2))
    assert rep.is_orthomodular and not rep.is_distributive


def test_non_orthomodular_benzene_ring():
    # O6: 0 < a < b' < 1, 0 < b < a' < 1 with the complement swap.
    doc = {
        "elements": ["0", "a", "b", "a'", "b'", "1"],
        "covers": [["0", "a"], ["a", "b'"], ["b'", "1"], ["0", "b"], ["b", "a'"], ["a'", "1"]],
        "perp": {"0": "1", "a": "a'", "b": "b'", "a'": "a", "b'": "b", "1": "0"},
    }
    L = parse_lattice(doc)
    rep = classify(L)
    assert not rep.is_orthomodular
    assert not rep.witnesses["orthomodular"].holds(L)


def test_downsets_small_cases():
    assert downsets(chain(2)) == [0b0, 0b1, 0b11]
    assert len(downsets(powerset(2))) == 6


def test_worked_example_downsets(X):
    ds = downsets(X)
    mask = lambda *ls: sum(1 << X.index(s) for s in ls)
    assert mask("0", "a", "b") in ds and mask("0", "a", "d") in ds
    assert ds == downsets_oracle(X)


def test_downsets_budget(X):
    with pytest.raises(BudgetExceeded):
        downsets(X, budget=10)


def test_hasse_dot_edges(X):
    assert hasse_dot(chain(2)).count("->") == 1
    assert hasse_dot(powerset(2)).count("->") == 4
    # the drawn diagram has sixteen edges: five out of 0, six in the middle
    # layer, five into 1
    assert hasse_dot(X).count("->") == 16
    assert len(X.covers()) == len(WORKED_EXAMPLE["covers"])


@settings(max_examples=60, deadline=None)
@given(moore_lattices())
def test_meet_join_are_glb_lub(L):
    O = L.order
    for x in range(L.n):
        for y in range(L.n):
            m, j = L.meet(x, y), L.join(x, y)
            assert O[m, x] and O[m, y] and O[x, j] and O[y, j]
            lower = O[:, x] & O[:, y]
            assert (O[:, m] >= lower).all()
            upper = O[x] & O[y]
            assert (O[j] >= upper).all()


@settings(max_examples=60, deadline=None)
@given(moore_lattices())
def test_downsets_match_oracle(L):
    assert downsets(L) == downsets_oracle(L)


@settings(max_examples=40, deadline=None)
@given(moore_lattices())
def test_classify_deterministic_and_witnesses_fail(L):
    r1, r2 = classify(L), classify(L)
    assert r1 == r2
    for w in r1.witnesses.values():
        if w.law != "orthocomplemented":
            assert not w.holds(L)


@pytest.mark.parametrize("name,L", orthomodular_corpus())
def test_de_morgan(name, L):
    if L.perp is None:
        pytest.skip("no perp")
    for x in range(L.n):
        for y in range(L.n):
            assert L.perp[L.join(x, y)] == L.meet(L.perp[x], L.perp[y])


def test_perp_on_three_chain_rejected():
    with pytest.raises(BadPerp):
        FiniteOrtholattice(["0", "m", "1"], np.triu(np.ones((3, 3), bool)), [2, 1, 0])
