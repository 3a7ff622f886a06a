import numpy as np
import pytest

from bohrlogic.errors import (
    DimMismatch,
    MixedBase,
    NotCommuting,
    NotOrthogonal,
    PreconditionViolated,
    ToleranceViolated,
)
from bohrlogic.heyting import bohrify, top
from bohrlogic.quantum.contexts import (
    Context,
    ContextPoset,
    context_generate,
    daseinise,
    meet_context,
    relative_rickart_check,
    trivial_context,
)
from bohrlogic.quantum.projections import MatProjection, maxnorm, rickart_projections
from bohrlogic.quantum.samples import (
    diag_projection,
    diagonal_context,
    qubit_contexts,
    qubit_poset,
    qutrit_poset,
    random_context,
    random_element,
    single_context_poset,
)
from oracles import sections_oracle


def test_context_validation():
    with pytest.raises(NotOrthogonal):
        Context([diag_projection(1, 1), diag_projection(1, 0)])
    with pytest.raises(PreconditionViolated):
        Context([diag_projection(1, 0)])
    with pytest.raises(PreconditionViolated):
        Context([diag_projection(1, 1), diag_projection(0, 0)])
    with pytest.raises(DimMismatch):
        Context([diag_projection(1, 0), diag_projection(0, 1, 0)])


def test_canonical_atom_order():
    a = Context([diag_projection(1, 0, 0), diag_projection(0, 1, 1)], "A")
    b = Context([diag_projection(0, 1, 1), diag_projection(1, 0, 0)], "B")
    assert all(x.close(y) for x, y in zip(a.atoms, b.atoms))
    assert a.same_as(b)


def test_generate_from_commuting_projections():
    C = context_generate([diag_projection(1, 1, 0), diag_projection(1, 0, 0)], "C")
    assert C.same_as(diagonal_context(3))
    assert context_generate([], n=2).k == 1
    cz, cx = qubit_contexts()
    with pytest.raises(NotCommuting):
        context_generate([cz.atoms[0], cx.atoms[0]])


def test_meets():
    cz, cx = qubit_contexts()
    assert meet_context(cz, cx).same_as(trivial_context(2))
    P = qutrit_poset()
    coarse = P.contexts[P.index("Ccoarse")]
    diag = P.contexts[P.index("Cdiag")]
    rot = P.contexts[P.index("Crot")]
    assert meet_context(diag, rot).same_as(coarse)


def test_refinement_order():
    P = qutrit_poset()
    i = P.index
    assert P.le[i("C·1"), i("Crot")] and P.le[i("Ccoarse"), i("Cdiag")]
    assert not P.le[i("Cdiag"), i("Crot")] and not P.le[i("Crot"), i("Cdiag")]


def test_missing_least_context():
    with pytest.raises(PreconditionViolated):
        ContextPoset(list(qubit_contexts()), add_trivial=False)


def test_meet_closure_adds_contexts(rng):
    diag = diagonal_context(3)
    P = qutrit_poset()
    rot = P.contexts[P.index("Crot")]
    open_ = ContextPoset([diag, rot])
    closed = ContextPoset([diag, rot], close_under_meet=True)
    assert len(closed) == len(open_) + 1


def test_block_poset_matches_refinement():
    for P in (qubit_poset(), qutrit_poset(), single_context_poset(3)):
        B = P.block_poset
        assert len(B) == len(P)
        assert {s.values for s in bohrify(B).sections} == sections_oracle(B)


def test_qubit_y_size():
    # C·1 below two four-element blocks
    assert len(bohrify(qubit_poset().block_poset)) == 17


def test_shared_projections_are_identified():
    B = qutrit_poset().block_poset
    # 0, 1, P12, e3 from Ccoarse; Cdiag and Crot each add four more
    assert len(B.labels) == len(set(B.labels))
    assert len(B.projections) == 4 + 4 + 4


def test_daseinisation():
    P = qubit_poset()
    p = diag_projection(1, 0)
    S = daseinise(p, P)
    projs = P.section_projections(S)
    names = P.names
    assert projs[names.index("Cz")].close(p)
    assert projs[names.index("Cx")].is_zero() and projs[names.index("C·1")].is_zero()
    assert daseinise(MatProjection.one(2), P) == top(P.block_poset)
    with pytest.raises(MixedBase):
        P.section_projections(top(qutrit_poset().block_poset))


def test_element_must_lie_in_context():
    cz, cx = qubit_contexts()
    with pytest.raises(ToleranceViolated):
        rickart_projections(np.array([[0, 1], [1, 0]]), cz)
    assert rickart_projections(np.diag([2.0, 0.0]), cz).RP.close(diag_projection(1, 0))


def test_relative_support_lies_in_smaller_context(rng):
    for _ in range(40):
        D = random_context(4, rng, "D", k=4)
        cuts = sorted(rng.choice(np.arange(1, 4), size=int(rng.integers(0, 3)), replace=False).tolist())
        groups = np.split(np.arange(4), cuts)
        C = Context([D.projection(sum(1 << int(i) for i in g)) for g in groups], "C")
        x = random_element(C, rng)
        rep = relative_rickart_check(x, C, D)
        assert rep["lies_in_C"] and rep["matches_svd"]


def test_relative_check_preconditions():
    cz, cx = qubit_contexts()
    with pytest.raises(PreconditionViolated):
        relative_rickart_check(np.eye(2), cz, cx)
    with pytest.raises(PreconditionViolated):
        relative_rickart_check(np.array([[0, 1], [1, 0]]), trivial_context(2), cz)


def test_contains_and_coefficients(rng):
    C = random_context(3, rng, k=3)
    x = random_element(C, rng, zeros=False)
    assert C.contains(x)
    assert maxnorm(sum(c * e.m for c, e in zip(C.coefficients(x), C.atoms)) - x) <= 1e-9
