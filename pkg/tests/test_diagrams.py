import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tl_entangle.diagrams import (
    PlanarDiagram,
    TLElement,
    all_matchings,
    close_trace,
    glue_network,
    noncrossing_matchings,
    tl_basis,
)
from tl_entangle.scalars import EvalPoint, LaurentPoly, d_param, evaluate

D = d_param()


def test_matching_validation():
    with pytest.raises(ValueError):
        PlanarDiagram(2, 2, [(1, 2), (3, 3)])
    with pytest.raises(ValueError):
        PlanarDiagram(1, 2, [(1, 2)])


def test_catalan_counts():
    assert [len(tl_basis(n, n)) for n in range(1, 5)] == [1, 2, 5, 14]
    assert len(all_matchings(range(1, 5))) == 3
    assert len(all_matchings(range(1, 7))) == 15
    assert len(noncrossing_matchings([1, 3, 5, 7])) == 2


def test_identity_and_generators():
    i2 = PlanarDiagram.identity(2)
    assert i2.pairs == ((1, 4), (2, 3))
    e1 = PlanarDiagram.generator(2, 1)
    assert e1.pairs == ((1, 2), (3, 4))
    dg, loops = i2.compose_with(i2)
    assert dg == i2 and loops == 0
    dg, loops = e1.compose_with(e1)
    assert dg == e1 and loops == 1
    with pytest.raises(ValueError):
        PlanarDiagram.generator(2, 2)


def test_tl_relations():
    n = 3
    d_el = {i: TLElement.from_diagram(PlanarDiagram.generator(n, i)) for i in (1, 2)}
    e1, e2 = d_el[1], d_el[2]
    assert e1.compose(e2, D).compose(e1, D) == e1
    assert e2.compose(e1, D).compose(e2, D) == e2
    assert e1.compose(e1, D) == D * e1
    n = 4
    a = TLElement.from_diagram(PlanarDiagram.generator(n, 1))
    b = TLElement.from_diagram(PlanarDiagram.generator(n, 3))
    assert a.compose(b, D) == b.compose(a, D)


def test_cup_cap_closure():
    cups = TLElement.from_diagram(PlanarDiagram.cups(2))
    caps = TLElement.from_diagram(PlanarDiagram.caps(2))
    val = cups.compose(caps, D).scalar()
    assert val == D
    # snake move: a strand bent through a cup and a cap straightens to identity
    idg = PlanarDiagram.identity(1)
    upper = idg.tensor(PlanarDiagram.cups(2))
    lower = PlanarDiagram.caps(2).tensor(idg)
    dg, loops = upper.compose_with(lower)
    assert dg == idg and loops == 0


def test_adjoint_involution_and_labels():
    dg = PlanarDiagram(2, 4, [(1, 6), (2, 3), (4, 5)])
    assert dg.adjoint().adjoint() == dg
    assert dg.adjoint().n_top == 4
    assert PlanarDiagram.identity(3).adjoint() == PlanarDiagram.identity(3)
    assert PlanarDiagram.caps(4) == PlanarDiagram(4, 0, [(1, 2), (3, 4)])


def test_state_gram_entries():
    # two-qubit pair basis on 4 points
    e1 = TLElement.from_diagram(PlanarDiagram(0, 4, [(1, 2), (3, 4)]))
    e2 = TLElement.from_diagram(PlanarDiagram(0, 4, [(1, 4), (2, 3)]))
    assert e1.inner(e1, D) == D * D
    assert e1.inner(e2, D) == D
    assert e2.inner(e2, D) == D * D
    # crossed matching in the connectivity-only model: all overlaps give d
    e3 = TLElement.from_diagram(PlanarDiagram(0, 4, [(1, 3), (2, 4)]))
    two = Fraction(-2)
    assert e3.inner(e3, two) == 4
    assert e1.inner(e3, two) == -2


def test_trace_closure():
    for n in (1, 2, 3):
        idn = TLElement.from_diagram(PlanarDiagram.identity(n))
        assert close_trace(idn, D) == D ** n
    e1 = TLElement.from_diagram(PlanarDiagram.generator(3, 1))
    assert close_trace(e1, D) == D * D


def test_compose_associative_with_loops():
    pt = EvalPoint.from_level(5)
    basis = tl_basis(3, 3)
    for a in basis[:3]:
        for b in basis:
            for c in basis[-3:]:
                ea, eb, ec = (TLElement.from_diagram(x) for x in (a, b, c))
                lhs = ea.compose(eb, D).compose(ec, D)
                rhs = ea.compose(eb.compose(ec, D), D)
                assert lhs == rhs


@given(st.data())
@settings(max_examples=40, deadline=None)
def test_tensor_compose_interchange(data):
    basis2 = tl_basis(2, 2)
    a = data.draw(st.sampled_from(basis2))
    b = data.draw(st.sampled_from(basis2))
    c = data.draw(st.sampled_from(basis2))
    e = data.draw(st.sampled_from(basis2))
    ea, eb, ec, ee = (TLElement.from_diagram(x) for x in (a, b, c, e))
    lhs = ea.tensor(eb).compose(ec.tensor(ee), D)
    rhs = ea.compose(ec, D).tensor(eb.compose(ee, D))
    assert lhs == rhs


def test_glue_network_matches_inner_product():
    x = TLElement.from_diagram(PlanarDiagram(0, 4, [(1, 2), (3, 4)]))
    y = TLElement.from_diagram(PlanarDiagram(0, 4, [(1, 4), (2, 3)]))
    bonds = [((0, p), (1, p)) for p in range(1, 5)]
    assert glue_network([x, x], bonds, D) == D * D
    assert glue_network([x, y], bonds, D) == D
    # numeric mode agrees
    pt = EvalPoint(0.3)
    dv = complex(pt.d)
    xn, yn = x.evaluate(pt), y.evaluate(pt)
    got = glue_network([xn, yn], bonds, dv)
    assert abs(got - evaluate(D, pt)) < 1e-12


def test_glue_network_three_tiles_ring():
    # three cup states glued in a ring pairing (1,2),(3,4) across neighbors
    x = TLElement.from_diagram(PlanarDiagram(0, 4, [(1, 2), (3, 4)]))
    bonds = [((0, 3), (1, 2)), ((0, 4), (1, 1)),
             ((1, 3), (2, 2)), ((1, 4), (2, 1)),
             ((2, 3), (0, 2)), ((2, 4), (0, 1))]
    # each tile's two cups chain into one big loop plus two small ones
    val = glue_network([x, x, x], bonds, D)
    assert val == D ** 3


def test_glue_network_rejects_bad_wiring():
    x = TLElement.from_diagram(PlanarDiagram(0, 4, [(1, 2), (3, 4)]))
    with pytest.raises(ValueError):
        glue_network([x, x], [((0, 1), (1, 1))], D)
    with pytest.raises(ValueError):
        glue_network([x], [((0, 1), (0, 1)), ((0, 2), (0, 3))], D)
