"""Affine tree isometries: composition, action, decomposition, fixed ends."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from affinetree.group import (
    FIXES_ALL,
    LampAffine,
    PadicAffine,
    act_end,
    act_vertex,
    compose,
    decompose,
    default_homothety_lamp,
    default_homothety_padic,
    elements_agree,
    ends_agree,
    fixed_end,
    identity_lamp,
    identity_padic,
    invert,
    is_identity,
    norm,
    phi,
    power,
    validate_non_exceptional,
)
from affinetree.padic import PAdic
from affinetree.tree import OMEGA, PadicEnd, origin_lamp, origin_padic


def aff(t, a, p=2):
    return PadicAffine(PAdic.from_fraction(Fraction(t), p),
                       PAdic.from_fraction(Fraction(a), p))


small = st.fractions(min_value=-50, max_value=50, max_denominator=16)
scales = st.sampled_from([Fraction(1), Fraction(2), Fraction(1, 2),
                          Fraction(3), Fraction(4), Fraction(3, 4)])


@st.composite
def padic_elements(draw):
    return aff(draw(small), draw(scales))


@st.composite
def lamp_elements(draw):
    lamps = tuple((pos, draw(st.integers(0, 1)))
                  for pos in draw(st.sets(st.integers(-5, 5), max_size=4)))
    return LampAffine(2, lamps, draw(st.integers(-3, 3)))


@settings(max_examples=150, deadline=None)
@given(padic_elements(), padic_elements(), padic_elements())
def test_padic_group_axioms(g, h, k):
    assert elements_agree(compose(compose(g, h), k), compose(g, compose(h, k)))
    assert is_identity(compose(g, invert(g)))
    assert elements_agree(compose(identity_padic(2), g), g)
    assert phi(compose(g, h)) == phi(g) + phi(h)


@settings(max_examples=150, deadline=None)
@given(lamp_elements(), lamp_elements(), lamp_elements())
def test_lamp_group_axioms(g, h, k):
    assert elements_agree(compose(compose(g, h), k), compose(g, compose(h, k)))
    assert is_identity(compose(g, invert(g)))
    assert elements_agree(compose(g, identity_lamp(2)), g)
    assert phi(compose(g, h)) == phi(g) + phi(h)


@settings(max_examples=100, deadline=None)
@given(padic_elements(), st.integers(-6, 6))
def test_power_matches_repeated_composition(g, n):
    direct = identity_padic(2)
    step = g if n >= 0 else invert(g)
    for _ in range(abs(n)):
        direct = compose(direct, step)
    assert elements_agree(power(g, n), direct)


def test_phi_is_scale_valuation():
    assert phi(aff(0, 2)) == 1
    assert phi(aff(5, Fraction(1, 4))) == -2
    assert phi(LampAffine(2, (), 3)) == 3


def test_act_vertex_on_origin():
    o = origin_padic(2)
    assert act_vertex(aff(0, 2), o).height == 1
    assert act_vertex(aff(1, 1), o) == o          # 1 is in Z_2
    assert act_vertex(aff(Fraction(1, 2), 1), o).height == 0
    assert act_vertex(aff(Fraction(1, 2), 1), o) != o


def test_act_end_fixes_omega():
    assert act_end(aff(3, 2), OMEGA) is OMEGA


def test_action_is_homomorphism_on_vertices():
    g, h = aff(Fraction(1, 2), 2), aff(3, Fraction(1, 4))
    x = origin_padic(2).son(1).son(0)
    assert act_vertex(compose(g, h), x) == act_vertex(g, act_vertex(h, x))


def test_norm_is_displacement_of_origin():
    from affinetree.tree import graph_distance
    o = origin_padic(2)
    for g in (aff(0, 2), aff(1, 1), aff(Fraction(3, 4), Fraction(1, 2))):
        assert norm(g) == graph_distance(act_vertex(g, o), o)
    assert norm(identity_padic(2)) == 0


def test_decompose_round_trip():
    s = default_homothety_padic(2)
    for g in (aff(0, 4), aff(Fraction(5, 8), Fraction(1, 2)), aff(7, 1)):
        b, n = decompose(g, s)
        assert phi(b) == 0 and n == phi(g)
        assert elements_agree(compose(b, power(s.element, n)), g)


def test_decompose_lamp():
    s = default_homothety_lamp(2)
    g = LampAffine(2, ((0, 1), (2, 1)), -2)
    b, n = decompose(g, s)
    assert phi(b) == 0 and n == -2
    assert elements_agree(compose(b, power(s.element, n)), g)


def test_fixed_end_homothety():
    # t = 0: fixes the end 0 for any scaling
    e = fixed_end(aff(0, 2))
    assert isinstance(e, PadicEnd) and e.value.is_zero
    # identity fixes everything
    assert fixed_end(aff(0, 1)) is FIXES_ALL
    # pure translation fixes no bottom end
    assert fixed_end(aff(1, 1)) is None
    # solve 2y + 1 = y
    e = fixed_end(aff(1, 2))
    assert e.value.exact == -1


def test_fixed_end_is_fixed():
    g = aff(3, Fraction(1, 4))
    e = fixed_end(g)
    assert ends_agree(act_end(g, e), e)


def test_fixed_end_lamp():
    s = LampAffine(2, (), 1)
    e = fixed_end(s)
    assert e is not None and e is not FIXES_ALL
    assert ends_agree(act_end(s, e), e)
    assert fixed_end(LampAffine(2, (), 0)) is FIXES_ALL


def test_validate_non_exceptional():
    ok = validate_non_exceptional([aff(0, 2), aff(1, Fraction(1, 2))])
    assert ok.passed and ok.phi_gcd == 1
    # everything fixes the end 0
    rep = validate_non_exceptional([aff(0, 2), aff(0, Fraction(1, 2))])
    assert not rep.passed and rep.common_fixed_end
    # horocyclic only
    rep = validate_non_exceptional([aff(1, 1)])
    assert not rep.passed and rep.in_horocyclic
    # gcd 2 fails unless overridden
    rep = validate_non_exceptional([aff(0, 4), aff(1, Fraction(1, 4))])
    assert not rep.passed
    rep = validate_non_exceptional([aff(0, 4), aff(1, Fraction(1, 4))],
                                   allow_non_surjective=True)
    assert rep.passed and rep.phi_gcd == 2


@settings(max_examples=100, deadline=None)
@given(padic_elements())
def test_norm_symmetry(g):
    assert norm(g) == norm(invert(g))
