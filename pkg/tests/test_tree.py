"""Vertices, ends, meets and the boundary ultrametric."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from affinetree.errors import IndistinguishableAtPrecision, MalformedSyntax
from affinetree.padic import PAdic
from affinetree.tree import (
    OMEGA,
    LampEnd,
    LampVertex,
    PadicEnd,
    PadicVertex,
    busemann,
    graph_distance,
    meet,
    origin_lamp,
    origin_padic,
    parse_vertex,
    theta,
)


def pend(num, den=1, p=2):
    return PadicEnd(PAdic.from_rational(num, den, p))


def test_vertex_canonicalizes_center():
    # D(11/4, 2) keeps only digits below exponent 1
    assert PadicVertex(2, 1, Fraction(11, 4)) == PadicVertex(2, 1, Fraction(3, 4))
    assert PadicVertex(2, 0, 5) == PadicVertex(2, 0, 1)


def test_father_son_round_trip():
    o = origin_padic(2)
    for b in range(2):
        assert o.son(b).father() == o
    assert o.son(1).height == 1
    ol = origin_lamp(3)
    for b in range(3):
        assert ol.son(b).father() == ol


def test_sons_are_distinct():
    o = origin_padic(3)
    sons = {o.son(b) for b in range(3)}
    assert len(sons) == 3
    with pytest.raises(Exception):
        o.son(3)


def test_busemann_is_height():
    assert busemann(origin_padic(2)) == 0
    assert busemann(PadicVertex(2, -3, 0)) == -3


def test_meet_vertices():
    o = origin_padic(2)
    x = o.son(0).son(0)
    y = o.son(1)
    assert meet(x, y) == o
    assert meet(x, x) == x
    # meet of nested vertices is the shallower one
    assert meet(x, o.son(0)) == o.son(0)


def test_meet_with_omega_is_undefined():
    from affinetree.errors import OmegaOperand
    with pytest.raises(OmegaOperand):
        meet(origin_padic(2), OMEGA)


def test_graph_distance():
    o = origin_padic(2)
    assert graph_distance(o, o) == 0
    assert graph_distance(o, o.son(0)) == 1
    assert graph_distance(o.son(0), o.son(1)) == 2
    x = o.son(0).son(1)
    assert graph_distance(x, o.son(1)) == 3


def test_theta_is_padic_norm_of_difference():
    a, b = pend(0), pend(1)
    assert theta(a, b) == 1            # |0-1| = 1
    assert theta(a, pend(4)) == Fraction(1, 4)
    assert theta(a, pend(1, 3)) == 1   # 1/3 is a unit
    assert theta(a, pend(1, 2)) == 2
    assert theta(a, a) == 0


def test_theta_vertex_end_mix():
    # theta between an end and a vertex through their meet height
    o = origin_padic(2)
    assert theta(pend(0), o) == 1
    assert theta(pend(4), PadicVertex(2, 2, 4)) == Fraction(1, 4)


def test_end_agreement_beyond_window_raises():
    # distinct windows, same values: cannot be separated at this precision
    a = LampEnd(2, 3, ((0, 1),))
    b = LampEnd(2, 5, ((0, 1),))
    with pytest.raises(IndistinguishableAtPrecision) as exc:
        theta(a, b)
    assert exc.value.upper_bound <= Fraction(2) ** -3


def test_lamp_meet():
    a = LampEnd(2, 10, ((0, 1),))
    b = LampEnd(2, 10, ((0, 1), (2, 1)))
    # first disagreement at position 2: meet at height 1, theta = 2^-1
    assert theta(a, b) == Fraction(1, 2)


def test_lamp_end_window_query():
    e = LampEnd(2, 5, ((1, 1),))
    assert e.lamp(1) == 1 and e.lamp(0) == 0
    with pytest.raises(IndistinguishableAtPrecision):
        e.lamp(6)


def test_parse_vertex_round_trip():
    for text in ("p:0:0", "p:2:1.1@-1", "p:-3:0", "lamp:1:[0=1]", "lamp:0:[]"):
        v = parse_vertex(text, prime=2, q=2)
        assert parse_vertex(v.render(), prime=2, q=2) == v
    with pytest.raises(MalformedSyntax):
        parse_vertex("p:zero:0", prime=2)


@settings(max_examples=150, deadline=None)
@given(st.fractions(min_value=-100, max_value=100, max_denominator=64),
       st.fractions(min_value=-100, max_value=100, max_denominator=64),
       st.fractions(min_value=-100, max_value=100, max_denominator=64))
def test_theta_ultrametric_inequality(a, b, c):
    ea, eb, ec = pend(a.numerator, a.denominator), \
        pend(b.numerator, b.denominator), pend(c.numerator, c.denominator)
    assert theta(ea, ec) <= max(theta(ea, eb), theta(eb, ec))


@settings(max_examples=150, deadline=None)
@given(st.integers(-8, 8), st.integers(0, 2 ** 12))
def test_meet_height_bounds_both_heights(h, k):
    x = PadicVertex(2, h, Fraction(k, 2 ** 4))
    y = origin_padic(2)
    m = meet(x, y)
    assert m.height <= min(x.height, y.height)
    assert m == meet(y, x)
