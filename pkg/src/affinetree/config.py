"""Experiment configuration: INI-style files driving laws and experiments.

Sections: [realization] (which tree and at what precision), [law] (atoms
and weights), [experiment] (seed, sizes, output), [cylinders] (named
vertex-pair events).  Element literals::

    affine(t = <rational or digit literal>, a = <rational or digit literal>)
    lamp(shift = <int>, lamps = [pos:val, ...])

Atom lines append an exact weight: ``atom1 = affine(t = 0, a = 2) weight 3/4``.
Vertex literals follow the tree module: ``p:<height>:<center>`` and
``lamp:<height>:[pos=val,...]``.
"""

from __future__ import annotations

import configparser
import hashlib
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    ConfigError,
    InvalidPrime,
    MalformedSyntax,
    NonExceptionalityFailed,
    WeightsNotNormalized,
)
from .group import LampAffine, PadicAffine
from .law import StepLaw
from .padic import PrecisionBudget, is_prime, parse_padic
from .renewal import CylinderEvent
from .tree import parse_vertex

_AFFINE_RE = re.compile(
    r"^affine\(\s*t\s*=\s*(?P<t>[^,]+?)\s*,\s*a\s*=\s*(?P<a>[^)]+?)\s*\)$")
_LAMP_RE = re.compile(
    r"^lamp\(\s*shift\s*=\s*(?P<shift>[+-]?\d+)\s*,\s*"
    r"lamps\s*=\s*\[(?P<lamps>[^\]]*)\]\s*\)$")
_WEIGHT_RE = re.compile(r"^(?P<elem>.*\))\s+weight\s+(?P<w>\S+)$")


def parse_element(text, *, prime=None, q=None, budget=None, location=None):
    """One element literal, in the realization given by prime or q."""
    text = text.strip()
    m = _AFFINE_RE.match(text)
    if m:
        if prime is None:
            raise MalformedSyntax("affine(...) literal in a lamplighter config",
                                  location)
        budget = budget or PrecisionBudget()
        try:
            t = parse_padic(m.group("t"), prime, budget)
            a = parse_padic(m.group("a"), prime, budget)
        except MalformedSyntax as exc:
            raise MalformedSyntax(str(exc), location) from exc
        return PadicAffine(t, a)
    m = _LAMP_RE.match(text)
    if m:
        if q is None:
            raise MalformedSyntax("lamp(...) literal in a p-adic config",
                                  location)
        lamps = []
        inner = m.group("lamps").strip()
        if inner:
            for item in inner.split(","):
                try:
                    pos, val = item.split(":")
                    lamps.append((int(pos), int(val)))
                except ValueError as exc:
                    raise MalformedSyntax(f"bad lamp entry {item!r}",
                                          location) from exc
        return LampAffine(q, tuple(lamps), int(m.group("shift")))
    raise MalformedSyntax(f"cannot parse element literal {text!r}", location)


def _parse_fraction(text, location):
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedSyntax(f"bad rational {text!r}", location) from exc


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str                    # "padic" | "lamplighter"
    prime: "int | None"
    q: "int | None"
    budget: PrecisionBudget
    end_window: int
    law: StepLaw
    seed: int
    trajectories: int
    horizon: int
    tolerance_sigmas: float
    out_dir: str
    direction: object            # optional element b for limits toward b·alpha
    cylinders: tuple             # ((name, CylinderEvent), ...)
    source_text: str = field(repr=False, default="")

    @property
    def degree(self) -> int:
        return self.prime if self.kind == "padic" else self.q

    def config_hash(self) -> str:
        """Hash of the semantic fields (not the raw text)."""
        law_part = ";".join(f"{a.render()}@{w}" for a, w in
                            zip(self.law.atoms, self.law.weights))
        cyl_part = ";".join(f"{n}={ev.render()}" for n, ev in self.cylinders)
        blob = "|".join([
            self.kind, str(self.prime), str(self.q),
            f"{self.budget.working}/{self.budget.min_acceptable}",
            str(self.end_window), law_part, str(self.seed),
            str(self.trajectories), str(self.horizon),
            str(self.tolerance_sigmas), cyl_part,
            "" if self.direction is None else self.direction.render(),
        ])
        return hashlib.sha256(blob.encode()).hexdigest()


def parse_config(text: str, *, allow_exceptional=False) -> ExperimentConfig:
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise MalformedSyntax(f"INI syntax: {exc}") from exc

    if not cp.has_section("realization"):
        raise MalformedSyntax("missing [realization] section")
    real = cp["realization"]
    kind = real.get("kind", "padic").strip()
    if kind not in ("padic", "lamplighter"):
        raise MalformedSyntax(f"unknown realization kind {kind!r}",
                              "realization.kind")
    budget = PrecisionBudget(
        working=real.getint("working_precision", 48),
        min_acceptable=real.getint("min_precision", 6))
    prime = q = None
    if kind == "padic":
        prime = real.getint("prime", 2)
        if not is_prime(prime):
            raise InvalidPrime(f"{prime} is not prime", "realization.prime")
    else:
        q = real.getint("q", 2)
        if q < 2:
            raise MalformedSyntax("q must be at least 2", "realization.q")
    end_window = real.getint("end_window", 24)

    if not cp.has_section("law"):
        raise MalformedSyntax("missing [law] section")
    atoms, weights = [], []
    allow_flag = cp["law"].getboolean("allow_non_surjective", fallback=False)
    for key, value in cp["law"].items():
        if not key.startswith("atom"):
            continue
        loc = f"law.{key}"
        m = _WEIGHT_RE.match(value.strip())
        if not m:
            raise MalformedSyntax(
                f"expected '<element> weight <rational>', got {value!r}", loc)
        atoms.append(parse_element(m.group("elem"), prime=prime, q=q,
                                   budget=budget, location=loc))
        weights.append(_parse_fraction(m.group("w"), loc))
    if not atoms:
        raise MalformedSyntax("no atoms in [law]", "law")
    try:
        law = StepLaw(tuple(atoms), tuple(weights))
    except WeightsNotNormalized as exc:
        raise WeightsNotNormalized(str(exc), "law") from exc
    report = law.validate(allow_non_surjective=allow_flag)
    if not report.passed and not allow_exceptional:
        raise NonExceptionalityFailed(report.summary(), "law")

    exp = cp["experiment"] if cp.has_section("experiment") else {}
    getint = (lambda k, d: exp.getint(k, d)) if cp.has_section("experiment") \
        else (lambda k, d: d)
    seed = getint("seed", 0)
    trajectories = getint("trajectories", 1000)
    horizon = getint("horizon", 4000)
    if trajectories < 1:
        raise MalformedSyntax("trajectories must be >= 1",
                              "experiment.trajectories")
    if horizon < 1:
        raise MalformedSyntax("horizon must be >= 1", "experiment.horizon")
    tol = float(exp.get("tolerance_sigmas", "3")) \
        if cp.has_section("experiment") else 3.0
    out_dir = exp.get("out", "results") if cp.has_section("experiment") \
        else "results"
    direction = None
    if cp.has_section("experiment") and exp.get("direction"):
        direction = parse_element(exp["direction"], prime=prime, q=q,
                                  budget=budget, location="experiment.direction")

    cylinders = []
    if cp.has_section("cylinders"):
        for name, value in cp["cylinders"].items():
            loc = f"cylinders.{name}"
            sources, targets = [], []
            for pair in value.split(";"):
                if "->" not in pair:
                    raise MalformedSyntax(
                        f"expected '<vertex> -> <vertex>', got {pair!r}", loc)
                src, tgt = pair.split("->", 1)
                try:
                    sources.append(parse_vertex(src, prime=prime, q=q))
                    targets.append(parse_vertex(tgt, prime=prime, q=q))
                except MalformedSyntax as exc:
                    raise MalformedSyntax(str(exc), loc) from exc
            ev = CylinderEvent(tuple(sources), tuple(targets), name=name)
            if ev.is_empty:
                raise MalformedSyntax(
                    "pairs disagree on height displacement (empty event)", loc)
            cylinders.append((name, ev))

    return ExperimentConfig(kind, prime, q, budget, end_window, law, seed,
                            trajectories, horizon, tol, out_dir, direction,
                            tuple(cylinders), source_text=text)


def load_config(path, **kw) -> ExperimentConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read(), **kw)
