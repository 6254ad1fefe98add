from fractions import Fraction

import pytest

from tl_entangle.diagrams import PlanarDiagram, TLElement
from tl_entangle.scalars import LaurentPoly, d_param
from tl_entangle.skein import SliceWord, bracket, cap_slice, crossing_element, cup_slice

D = d_param()
A = LaurentPoly.A_power


def test_slice_shapes():
    c = cup_slice(2, 2)
    assert (c.n_top, c.n_bottom) == (2, 4)
    k = cap_slice(4, 3)
    assert (k.n_top, k.n_bottom) == (4, 2)
    with pytest.raises(ValueError):
        cup_slice(2, 4)
    with pytest.raises(ValueError):
        cap_slice(2, 2)


def test_crossing_resolution():
    x = crossing_element(2, 1, "over")
    assert x.terms[PlanarDiagram.identity(2)] == A(1)
    assert x.terms[PlanarDiagram.generator(2, 1)] == A(-1)
    y = crossing_element(2, 1, "under")
    # over on top of under cancels to the identity
    assert x.compose(y, D) == TLElement.from_diagram(PlanarDiagram.identity(2))
    p = crossing_element(2, 1, "over", mode="permutation")
    assert p.terms[PlanarDiagram.identity(2)] == 1
    assert p.compose(p, Fraction(-2)) == TLElement.from_diagram(PlanarDiagram.identity(2))


def test_word_validation():
    with pytest.raises(ValueError):
        SliceWord(0, [("cap", 1)])
    with pytest.raises(ValueError):
        SliceWord(2, [("over", 2)])
    with pytest.raises(ValueError):
        SliceWord(1, [("jw", 1, 2)])
    w = SliceWord(0, [("cup", 1), ("cup", 3), ("cap", 3), ("cap", 1)])
    assert w.is_closed() and w.final_width == 0


def test_unknot_and_split_rings():
    unknot = SliceWord(0, [("cup", 1), ("cap", 1)])
    assert bracket(unknot) == D
    two_rings = SliceWord(0, [("cup", 1), ("cup", 3), ("cap", 3), ("cap", 1)])
    assert bracket(two_rings) == D * D
    nested = SliceWord(0, [("cup", 1), ("cup", 2), ("cap", 2), ("cap", 1)])
    assert bracket(nested) == D * D


def test_kink_values():
    # positive curl: the loop sits on the A-smoothing side
    pos = SliceWord(1, [("cup", 2), ("over", 1), ("cap", 2)])
    assert pos.to_element() == (-1 * A(3)) * TLElement.from_diagram(PlanarDiagram.identity(1))
    neg = SliceWord(1, [("cup", 2), ("over", 1), ("cap", 1)])
    assert neg.to_element() == (-1 * A(-3)) * TLElement.from_diagram(PlanarDiagram.identity(1))
    # under-crossing curls mirror the over values
    pos_u = SliceWord(1, [("cup", 2), ("under", 1), ("cap", 2)])
    assert pos_u.to_element() == (-1 * A(-3)) * TLElement.from_diagram(PlanarDiagram.identity(1))


def test_hopf_link_bracket():
    word = SliceWord(0, [("cup", 1), ("cup", 3),
                         ("over", 2), ("over", 2),
                         ("cap", 3), ("cap", 1)])
    want = (-1 * D) * (A(4) + A(-4))
    assert bracket(word) == want


def test_trefoil_bracket():
    word = SliceWord(0, [("cup", 1), ("cup", 3),
                         ("over", 2), ("over", 2), ("over", 2),
                         ("cap", 3), ("cap", 1)])
    want = D * (-1 * A(5) - A(-3) + A(-7))
    assert bracket(word) == want


def test_permutation_mode_ignores_over_under():
    word_o = SliceWord(0, [("cup", 1), ("cup", 3), ("over", 2), ("over", 2),
                           ("cap", 3), ("cap", 1)])
    word_u = SliceWord(0, [("cup", 1), ("cup", 3), ("under", 2), ("under", 2),
                           ("cap", 3), ("cap", 1)])
    vo = bracket(word_o, mode="permutation")
    vu = bracket(word_u, mode="permutation")
    assert vo == vu
    # (id + e)^2 = id at d = -2, and the plat closure of id has two loops
    assert vo == 4


def test_jw_slice_matches_projector():
    from tl_entangle.jones_wenzl import jones_wenzl
    w = SliceWord(2, [("jw", 1, 2)])
    assert w.to_element() == jones_wenzl(2)
    w3 = SliceWord(4, [("jw", 2, 2)])
    el = w3.to_element()
    assert el.shape() == (4, 4)
    # projector slice in the middle is killed by a hook under it
    hook = TLElement.from_diagram(PlanarDiagram.generator(4, 2))
    assert el.compose(hook, D).is_zero()
