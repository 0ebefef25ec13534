"""Finitely supported step laws on the affine group.

A law is a list of atoms (group elements) with exact Fraction weights.
Sampling uses inverse-CDF lookup against cumulative float thresholds;
the scalar and vectorized paths consume uniforms identically, so a
height-only simulation and a full group simulation with the same stream
visit the same atoms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import EmptySupport, WeightsNotNormalized
from .group import (
    LampAffine,
    PadicAffine,
    decompose,
    default_homothety_lamp,
    default_homothety_padic,
    invert,
    norm,
    phi,
    validate_non_exceptional,
)


@dataclass(frozen=True)
class StepLaw:
    atoms: tuple
    weights: tuple  # Fractions, positive, summing to 1
    thresholds: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.atoms:
            raise EmptySupport("a step law needs at least one atom")
        weights = tuple(Fraction(w) for w in self.weights)
        if len(weights) != len(self.atoms):
            raise WeightsNotNormalized("one weight per atom required")
        if any(w <= 0 for w in weights):
            raise WeightsNotNormalized("weights must be positive")
        total = sum(weights)
        if total != 1:
            raise WeightsNotNormalized(f"weights sum to {total}, not 1")
        object.__setattr__(self, "weights", weights)
        cum = np.cumsum([float(w) for w in weights])
        cum[-1] = 1.0
        object.__setattr__(self, "thresholds", cum)

    @property
    def is_padic(self) -> bool:
        return isinstance(self.atoms[0], PadicAffine)

    @property
    def degree(self) -> int:
        """Branching number q of the tree the law acts on."""
        a = self.atoms[0]
        return a.prime if isinstance(a, PadicAffine) else a.q

    @property
    def phis(self) -> tuple:
        return tuple(phi(a) for a in self.atoms)

    def drift(self) -> Fraction:
        """Mean height displacement of one step, exact."""
        return sum((w * phi(a) for a, w in zip(self.atoms, self.weights)),
                   Fraction(0))

    def phi_second_moment(self) -> Fraction:
        return sum((w * phi(a) ** 2 for a, w in zip(self.atoms, self.weights)),
                   Fraction(0))

    def phi_gcd(self) -> int:
        nonzero = [abs(v) for v in self.phis if v]
        return math.gcd(*nonzero) if nonzero else 0

    def inverse(self) -> "StepLaw":
        """Law of the inverted step: same weights on the inverse atoms."""
        return StepLaw(tuple(invert(a) for a in self.atoms), self.weights)

    def validate(self, *, allow_non_surjective=False):
        return validate_non_exceptional(
            self.atoms, allow_non_surjective=allow_non_surjective)

    # -- sampling ------------------------------------------------------------

    def sample_index(self, rng) -> int:
        u = rng.random()
        return min(int(np.searchsorted(self.thresholds, u, side="right")),
                   len(self.atoms) - 1)

    def sample_step(self, rng):
        return self.atoms[self.sample_index(rng)]

    def sample_indices(self, rng, size) -> np.ndarray:
        u = rng.random(size)
        idx = np.searchsorted(self.thresholds, u, side="right")
        return np.minimum(idx, len(self.atoms) - 1)

    def sample_phi_paths(self, rng, n_traj: int, horizon: int) -> np.ndarray:
        """Cumulative heights S_1..S_horizon for n_traj trajectories."""
        idx = self.sample_indices(rng, (n_traj, horizon))
        steps = np.array(self.phis, dtype=np.int64)[idx]
        return np.cumsum(steps, axis=1)

    def moment_report(self, eps=1) -> dict:
        """Exact moment summary; all quantities are finite (finite support).

        Includes the mean absolute height step, the mean vertex norm of a
        step, and the (2+eps)-moment of the horocyclic parts against the
        default reference homothety.
        """
        drift = self.drift()
        s = default_homothety_padic(self.degree, self.atoms[0].a.budget) \
            if self.is_padic else default_homothety_lamp(self.degree)
        norms = [norm(a) for a in self.atoms]
        b_norms = [norm(decompose(a, s)[0]) for a in self.atoms]
        wsum = lambda vals: sum((w * v for w, v in zip(self.weights, vals)),
                                Fraction(0))
        return {
            "atoms": [a.render() for a in self.atoms],
            "weights": [str(w) for w in self.weights],
            "phis": list(self.phis),
            "drift": str(drift),
            "drift_float": float(drift),
            "phi_abs_mean": str(wsum([abs(v) for v in self.phis])),
            "phi_second_moment": str(self.phi_second_moment()),
            "norm_mean": str(wsum(norms)),
            "b_norm_moment_exponent": 2 + eps,
            "b_norm_moment": float(wsum([Fraction(v) ** (2 + eps)
                                         for v in b_norms])),
            "phi_gcd": self.phi_gcd(),
        }
