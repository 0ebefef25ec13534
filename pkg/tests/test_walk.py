"""Walk engine: products, ladder epochs, boundary limits."""

from fractions import Fraction

import numpy as np
import pytest

from affinetree.errors import NonPositiveDrift, StepBudgetExceeded
from affinetree.group import PadicAffine, phi
from affinetree.law import StepLaw
from affinetree.padic import PAdic
from affinetree.rng import stream
from affinetree.walk import (
    disc_key,
    end_of_product,
    ladder_excursion,
    ladder_heights,
    regime_summary,
    run_product,
    sample_boundary_limit,
)


def aff(t, a, p=2):
    return PadicAffine(PAdic.from_fraction(Fraction(t), p),
                       PAdic.from_fraction(Fraction(a), p))


LAW_POS = StepLaw((aff(0, 2), aff(1, Fraction(1, 2))),
                  (Fraction(3, 4), Fraction(1, 4)))
LAW_NEG = StepLaw((aff(0, Fraction(1, 2)), aff(1, 2)),
                  (Fraction(3, 4), Fraction(1, 4)))


def test_run_product_height_matches_phi_path():
    g = run_product(LAW_POS, stream(4, 0), 200)
    heights = LAW_POS.sample_phi_paths(stream(4, 0), 1, 200)
    assert phi(g) == heights[0, -1]


def test_run_product_sides_differ():
    right = run_product(LAW_POS, stream(4, 1), 50, side="right")
    left = run_product(LAW_POS, stream(4, 1), 50, side="left")
    assert phi(right) == phi(left)   # same steps, same total height


def test_ladder_excursion_stops_at_first_record():
    for i in range(50):
        exc = ladder_excursion(LAW_POS, stream(9, i), track_prefix=True)
        assert exc.height >= 1
        assert phi(exc.element) == exc.height
        assert len(exc.prefix) == exc.length
        # every proper prefix stays at or below zero
        for g in exc.prefix:
            assert phi(g) <= 0


def test_ladder_heights_vectorized_moments():
    lengths, heights = ladder_heights(LAW_POS, stream(10, 0), 20000)
    assert lengths.shape == heights.shape == (20000,)
    assert heights.min() >= 1
    # E[S_l] = E[l] * drift (optional stopping)
    ratio = lengths.mean() / heights.mean()
    assert abs(ratio - 2.0) < 0.1


def test_ladder_budget_negative_drift():
    with pytest.raises(StepBudgetExceeded):
        ladder_heights(LAW_NEG, stream(11, 0), 100, max_steps=5000)


def test_regime_summary_signs():
    up = regime_summary(LAW_POS, stream(12, 0), 100, 2000)
    down = regime_summary(LAW_NEG, stream(12, 1), 100, 2000)
    assert up["fraction_final_positive"] > 0.99
    assert down["fraction_final_negative"] > 0.99
    assert abs(up["mean_final_over_n"] - 0.5) < 0.05


def test_boundary_limit_certified_and_stable():
    bl = sample_boundary_limit(LAW_POS, stream(13, 0), depth=4)
    assert bl.certified
    # a longer window over the same stream lands in the same depth-4 disc
    again = sample_boundary_limit(LAW_POS, stream(13, 0), depth=4,
                                  end_window=20)
    assert disc_key(bl.end, 4) == disc_key(again.end, 4)


def test_boundary_limit_needs_positive_drift():
    with pytest.raises(NonPositiveDrift):
        sample_boundary_limit(LAW_NEG, stream(13, 1), depth=4)


def test_end_of_product_window_is_honest():
    g = run_product(LAW_POS, stream(14, 0), 400)
    e = end_of_product(g, known_exponent=6)
    assert e.value.known_exponent == 6


def test_disc_key_depth_monotone():
    bl1 = sample_boundary_limit(LAW_POS, stream(15, 0), depth=6)
    bl2 = sample_boundary_limit(LAW_POS, stream(15, 1), depth=6)
    # agreeing at depth 6 implies agreeing at any shallower depth
    if disc_key(bl1.end, 6) == disc_key(bl2.end, 6):
        assert disc_key(bl1.end, 3) == disc_key(bl2.end, 3)
