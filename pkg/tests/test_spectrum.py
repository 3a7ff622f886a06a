import numpy as np
import pytest

from bohrlogic.catalog import powerset
from bohrlogic.errors import BudgetExceeded, MixedBase, NotInContext
from bohrlogic.heyting import bohrify, top
from bohrlogic.lattice import find_isomorphism
from bohrlogic.quantum.samples import (
    diagonal_context,
    qubit_contexts,
    qubit_poset,
    qutrit_poset,
    random_context,
    random_element,
    single_context_poset,
)
from bohrlogic.quantum.spectrum import (
    SpectralOpen,
    external_spectrum,
    multiplication_check,
    pseudocomplement_check,
    regularity_check,
    spectrum_basis,
    spectrum_relations,
    support_clauses,
)
from oracles import downsets_oracle


def test_basis_of_diagonal_element():
    C = diagonal_context(3)
    assert spectrum_basis(np.diag([2.0, -1.0, 0.0]), C).atoms() == [0]
    with pytest.raises(NotInContext):
        spectrum_basis(np.ones((3, 3)), C)


def test_open_order_and_negation():
    C = diagonal_context(3)
    a, b = SpectralOpen(C, 0b001), SpectralOpen(C, 0b011)
    assert a <= b and not b <= a
    assert a.neg().atom_set == 0b110


def test_relations_random(rng):
    for _ in range(60):
        C = random_context(int(rng.integers(1, 5)), rng)
        a, b = random_element(C, rng), random_element(C, rng)
        assert all(spectrum_relations(a, b, C).values())


def test_pseudocomplement_and_regularity(rng):
    for _ in range(60):
        C = random_context(int(rng.integers(1, 5)), rng)
        a = random_element(C, rng, positive=True)
        assert all(pseudocomplement_check(a, C).values())
        assert all(regularity_check(a, C).values())


def test_multiplication_lemma(rng):
    hits = 0
    for _ in range(80):
        C = random_context(3, rng, k=3)
        a = random_element(C, rng, positive=True)
        b = random_element(C, rng, positive=True) * 3
        r = multiplication_check(a, b, C)
        if r is not None:
            hits += 1
            assert r
    C = diagonal_context(2)
    assert multiplication_check(np.diag([1.0, 0.0]), np.diag([1.0, 0.0]), C) is True
    assert multiplication_check(np.diag([1.0, 0.0]), np.diag([0.0, 1.0]), C) is None


def test_support_clauses(rng):
    for _ in range(60):
        C = random_context(int(rng.integers(1, 5)), rng)
        rep = support_clauses(random_element(C, rng), C)
        assert all(rep.values()), rep


def test_single_context_spectrum_is_powerset():
    for n in range(1, 6):
        X = external_spectrum(single_context_poset(n))
        assert len(X.frame) == 2 ** n
        assert find_isomorphism(X.frame.lattice(), powerset(n), respect_perp=False) is not None


def test_trivial_context_adds_a_point():
    from bohrlogic.quantum.contexts import ContextPoset

    X = external_spectrum(ContextPoset([diagonal_context(2)]))
    assert len(X.points) == 3 and len(X.frame) == 5


def test_spectrum_opens_match_downset_oracle():
    X = external_spectrum(qubit_poset())
    assert list(X.frame.members) == downsets_oracle(X.base)


def test_qubit_spectrum_is_y():
    X = external_spectrum(qubit_poset())
    assert len(X.frame) == 17
    rep = X.density_report()
    assert rep["dense"] and rep["injective"] and rep["images_are_opens"]
    Y = bohrify(X.P.block_poset)
    assert find_isomorphism(Y.as_lattice(), X.frame.lattice(), respect_perp=False) is not None


def test_qutrit_density():
    X = external_spectrum(qutrit_poset())
    rep = X.density_report()
    assert rep["dense"] and rep["injective"] and rep["images_are_opens"]
    assert rep["failures"] == []


def test_basis_map_and_components():
    X = external_spectrum(qubit_poset())
    S = top(X.P.block_poset)
    U = X.basis(S)
    assert U == X.top
    for ci, c in enumerate(X.P.contexts):
        assert X.component(U, ci) == (1 << c.k) - 1
        assert X.projection(U, ci).close(X.P.contexts[ci].projection((1 << c.k) - 1))
    with pytest.raises(MixedBase):
        X.basis(top(qutrit_poset().block_poset))


def test_spectrum_budget():
    with pytest.raises(BudgetExceeded):
        external_spectrum(qutrit_poset(), budget=5)


def test_point_order_is_refinement():
    cz, _ = qubit_contexts()
    X = external_spectrum(qubit_poset())
    lab = X.base.labels
    triv = lab.index("C·1:0")
    for name in ("Cz:0", "Cz:1", "Cx:0", "Cx:1"):
        assert X.base.order[lab.index(name), triv]
        assert not X.base.order[triv, lab.index(name)]
