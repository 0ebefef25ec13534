"""Random walk trajectories, ladder epochs and boundary limits.

Height-only questions (drift, Wald identity, regime classification) use
vectorized numpy paths.  Questions about where the walk lands on the
boundary track full group elements: the right products R_n = X_1...X_n
converge to a boundary point when the height drift is positive, and the
sampler certifies a disc of requested depth around the limit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonPositiveDrift, StepBudgetExceeded
from .group import PadicAffine, compose, identity_like, phi
from .tree import LampEnd, PadicEnd

DEFAULT_STEP_BUDGET = 10 ** 7


def run_product(law, rng, horizon: int, *, side="right", visitor=None):
    """Product of ``horizon`` sampled steps; new steps multiply on ``side``.

    ``visitor(n, g)`` is called after each step with the running product.
    """
    g = identity_like(law.atoms[0])
    for n in range(1, horizon + 1):
        x = law.sample_step(rng)
        g = compose(g, x) if side == "right" else compose(x, g)
        if visitor is not None:
            visitor(n, g)
    return g


@dataclass
class LadderExcursion:
    """One excursion of the left walk to its first strictly positive height.

    ``element`` is L_l = X_l ... X_1 at the first epoch l with S_l > 0.
    ``prefix`` (when tracked) lists L_0 = e, L_1, ..., L_{l-1}, whose
    heights are all <= 0.
    """

    length: int
    element: object
    height: int
    prefix: "list | None" = None


def ladder_excursion(law, rng, *, track_prefix=False,
                     max_steps=DEFAULT_STEP_BUDGET) -> LadderExcursion:
    g = identity_like(law.atoms[0])
    prefix = [g] if track_prefix else None
    for n in range(1, max_steps + 1):
        g = compose(law.sample_step(rng), g)
        h = phi(g)
        if h > 0:
            return LadderExcursion(n, g, h, prefix)
        if track_prefix:
            prefix.append(g)
    raise StepBudgetExceeded(
        f"no ascending ladder epoch within {max_steps} steps",
        partial=LadderExcursion(max_steps, g, phi(g), prefix))


def ladder_heights(law, rng, count: int, *, chunk=512,
                   max_steps=DEFAULT_STEP_BUDGET):
    """Vectorized (lengths, heights) at the first ascending ladder epoch.

    Simulates ``count`` height paths in blocks of ``chunk`` steps and
    extends the unfinished ones until every path has crossed above 0.
    """
    lengths = np.zeros(count, dtype=np.int64)
    heights = np.zeros(count, dtype=np.int64)
    active = np.arange(count)
    carried = np.zeros(count, dtype=np.int64)  # S at the end of prior blocks
    offset = 0
    while active.size:
        if offset >= max_steps:
            raise StepBudgetExceeded(
                f"{active.size} paths without a ladder epoch after {offset} steps")
        paths = carried[active, None] + law.sample_phi_paths(rng, active.size, chunk)
        hit = paths > 0
        any_hit = hit.any(axis=1)
        first = np.argmax(hit, axis=1)
        done = active[any_hit]
        lengths[done] = offset + first[any_hit] + 1
        heights[done] = paths[any_hit, first[any_hit]]
        carried[active] = paths[:, -1]
        active = active[~any_hit]
        offset += chunk
    return lengths, heights


def regime_summary(law, rng, n_traj: int, horizon: int) -> dict:
    """Height statistics of n_traj paths: terminal law, extremes, sign counts."""
    paths = law.sample_phi_paths(rng, n_traj, horizon)
    final = paths[:, -1]
    half = paths[:, horizon // 2:]
    return {
        "drift": float(law.drift()),
        "n_trajectories": n_traj,
        "horizon": horizon,
        "mean_final_height": float(final.mean()),
        "mean_final_over_n": float(final.mean()) / horizon,
        "std_final_height": float(final.std()),
        "fraction_final_positive": float((final > 0).mean()),
        "fraction_final_negative": float((final < 0).mean()),
        "min_late_height": int(half.min()),
        "max_late_height": int(half.max()),
        "fraction_late_all_positive": float((half > 0).all(axis=1).mean()),
        "fraction_late_all_negative": float((half < 0).all(axis=1).mean()),
    }


def _prefix_key(g, depth: int):
    """Hashable id of the depth-``depth`` disc below the element's position."""
    if isinstance(g, PadicAffine):
        return g.t.residue(depth)
    return tuple((p, v) for p, v in g.lamps if p <= depth)


def end_of_product(g, known_exponent: int):
    """Boundary point the right product is converging to, with honest window."""
    if isinstance(g, PadicAffine):
        return PadicEnd(g.t.with_known_exponent(known_exponent))
    return LampEnd(g.q, known_exponent,
                   tuple((p, v) for p, v in g.lamps if p <= known_exponent))


def disc_key(end, depth: int):
    """Hashable id of the depth-``depth`` disc containing a boundary point."""
    if isinstance(end, PadicEnd):
        return end.value.residue(depth)
    return tuple((p, v) for p, v in end.values if p <= depth)


@dataclass
class BoundaryLimit:
    end: object
    key: object       # disc id at the requested depth
    steps: int
    max_height: int
    certified: bool


def sample_boundary_limit(law, rng, *, depth: int, step_sampler=None,
                          stable_epochs=3, height_guard=15, end_window=None,
                          max_steps=DEFAULT_STEP_BUDGET) -> BoundaryLimit:
    """Limit disc of depth ``depth`` around lim R_n for a positive-drift walk.

    The depth-d disc is certified once its id is unchanged across
    ``stable_epochs`` successive running-maximum records of the height
    and the height has climbed ``height_guard`` levels past the end
    window, so a later return below the window has probability at most
    about q**-height_guard.  The returned end is known to ``end_window``
    digits (default depth + 8, leaving headroom for later arithmetic).

    ``step_sampler(rng)`` overrides the law's own step draw; pass a
    ladder-excursion sampler to walk with ladder increments.
    """
    if step_sampler is None:
        if law.drift() <= 0:
            raise NonPositiveDrift(
                "right products only converge to the boundary under positive drift")
        step_sampler = law.sample_step
    if end_window is None:
        end_window = depth + 8
    g = identity_like(law.atoms[0])
    top = 0
    stable = 0
    key = None
    for n in range(1, max_steps + 1):
        g = compose(g, step_sampler(rng))
        h = phi(g)
        if h <= top:
            continue
        top = h
        if h < depth:
            continue
        k = _prefix_key(g, depth)
        stable = stable + 1 if k == key else 1
        key = k
        if stable >= stable_epochs and top >= end_window + height_guard:
            end = end_of_product(g, end_window)
            return BoundaryLimit(end, key, n, top, True)
    end = end_of_product(g, max(depth, top - height_guard))
    raise StepBudgetExceeded(
        f"no certified depth-{depth} disc within {max_steps} steps",
        partial=BoundaryLimit(end, key, max_steps, top, False))
