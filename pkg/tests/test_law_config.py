"""Step laws and the experiment config format."""

from fractions import Fraction

import numpy as np
import pytest

from affinetree.config import parse_config, parse_element
from affinetree.errors import (
    EmptySupport,
    InvalidPrime,
    MalformedSyntax,
    NonExceptionalityFailed,
    WeightsNotNormalized,
)
from affinetree.group import LampAffine, PadicAffine, phi
from affinetree.law import StepLaw
from affinetree.padic import PAdic
from affinetree.rng import stream

POS = """
[realization]
kind = padic
prime = 2

[law]
atom1 = affine(t = 0, a = 2) weight 3/4
atom2 = affine(t = 1, a = 1/2) weight 1/4

[experiment]
seed = 5
trajectories = 100
horizon = 500

[cylinders]
home = p:0:0 -> p:0:0
"""


def aff(t, a, p=2):
    return PadicAffine(PAdic.from_fraction(Fraction(t), p),
                       PAdic.from_fraction(Fraction(a), p))


def law_pos():
    return StepLaw((aff(0, 2), aff(1, Fraction(1, 2))),
                   (Fraction(3, 4), Fraction(1, 4)))


def test_exact_drift():
    assert law_pos().drift() == Fraction(1, 2)
    assert law_pos().inverse().drift() == -Fraction(1, 2)
    assert law_pos().phi_gcd() == 1


def test_weights_must_normalize():
    with pytest.raises(WeightsNotNormalized):
        StepLaw((aff(0, 2),), (Fraction(1, 2),))
    with pytest.raises(WeightsNotNormalized):
        StepLaw((aff(0, 2), aff(1, 1)), (Fraction(3, 2), Fraction(-1, 2)))
    with pytest.raises(EmptySupport):
        StepLaw((), ())


def test_sampling_frequencies():
    law = law_pos()
    idx = law.sample_indices(stream(1, 0), 20000)
    assert abs((idx == 0).mean() - 0.75) < 0.02


def test_scalar_and_vector_sampling_agree():
    law = law_pos()
    scalar = [law.sample_index(stream(3, 7)) for _ in range(1)]
    # same stream, same first uniform
    vec = law.sample_indices(stream(3, 7), 1)
    assert scalar[0] == vec[0]


def test_phi_paths_match_atom_phis():
    law = law_pos()
    paths = law.sample_phi_paths(stream(2, 0), 50, 100)
    steps = np.diff(np.concatenate([np.zeros((50, 1), dtype=np.int64), paths],
                                   axis=1), axis=1)
    assert set(np.unique(steps)) <= {-1, 1}


def test_inverse_atoms():
    law = law_pos()
    inv = law.inverse()
    assert [phi(a) for a in inv.atoms] == [-1, 1]
    assert inv.weights == law.weights


def test_moment_report_exact_strings():
    rep = law_pos().moment_report()
    assert rep["drift"] == "1/2"
    assert rep["phi_abs_mean"] == "1"
    assert rep["phi_gcd"] == 1


# -- config parsing -------------------------------------------------------------


def test_parse_minimal_config():
    cfg = parse_config(POS)
    assert cfg.kind == "padic" and cfg.prime == 2
    assert cfg.law.drift() == Fraction(1, 2)
    assert cfg.seed == 5 and cfg.trajectories == 100
    assert len(cfg.cylinders) == 1
    name, ev = cfg.cylinders[0]
    assert name == "home" and ev.level == 0


def test_parse_element_literals():
    e = parse_element("affine(t = 3/4, a = 2)", prime=2)
    assert isinstance(e, PadicAffine) and phi(e) == 1
    e = parse_element("lamp(shift = -1, lamps = [0:1, 2:1])", q=2)
    assert isinstance(e, LampAffine) and phi(e) == -1
    with pytest.raises(MalformedSyntax):
        parse_element("affine(t = 1, a = 2)", q=2)   # wrong realization
    with pytest.raises(MalformedSyntax):
        parse_element("gibberish", prime=2)


def test_located_errors():
    bad = POS.replace("weight 3/4", "weight 2/4")
    with pytest.raises(WeightsNotNormalized):
        parse_config(bad)
    with pytest.raises(InvalidPrime) as exc:
        parse_config(POS.replace("prime = 2", "prime = 4"))
    assert "realization.prime" in str(exc.value)
    with pytest.raises(MalformedSyntax):
        parse_config(POS.replace("atom1 = affine(t = 0, a = 2) weight 3/4",
                                 "atom1 = affine(t = 0, a = 2)"))


def test_exceptional_law_rejected():
    hor = POS.replace("affine(t = 0, a = 2)", "affine(t = 2, a = 1)") \
             .replace("affine(t = 1, a = 1/2)", "affine(t = 1, a = 1)")
    with pytest.raises(NonExceptionalityFailed):
        parse_config(hor)
    cfg = parse_config(hor, allow_exceptional=True)
    assert not cfg.law.validate().passed


def test_config_hash_tracks_semantics():
    cfg = parse_config(POS)
    assert cfg.config_hash() == parse_config(POS + "\n# comment").config_hash()
    assert cfg.config_hash() != \
        parse_config(POS.replace("seed = 5", "seed = 6")).config_hash()


def test_empty_cylinder_rejected():
    bad = POS.replace("home = p:0:0 -> p:0:0",
                      "home = p:0:0 -> p:0:0 ; p:0:0 -> p:1:0")
    with pytest.raises(MalformedSyntax) as exc:
        parse_config(bad)
    assert "cylinders.home" in str(exc.value)
