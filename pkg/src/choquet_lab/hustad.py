"""Transfer between phase-point measures on (phases x K) and scalar measures on K."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .core import (ChoquetLabError, FunctionSpace, Gaussian, Measure, abs2, jsonable, pushforward,
                   rational_modulus, total_variation)
from .polytope import phase_grid


class NormNotOne(ChoquetLabError):
    pass


class IrrationalModulus(ChoquetLabError):
    pass


@dataclass(frozen=True)
class Atom:
    phase: object
    point: str
    weight: Fraction


@dataclass(frozen=True)
class PhasePointMeasure:
    atoms: tuple

    def __post_init__(self):
        for a in self.atoms:
            if a.weight <= 0:
                raise ValueError("atom weights must be positive")
            if abs2(a.phase) != 1:
                raise ValueError(f"phase {a.phase} is not unimodular")

    @property
    def total_weight(self) -> Fraction:
        return sum((a.weight for a in self.atoms), Fraction(0))

    @property
    def is_probability(self) -> bool:
        return self.total_weight == 1

    def support(self) -> set:
        return {a.point for a in self.atoms}

    def to_json(self):
        return [{"phase": jsonable(a.phase), "point": a.point, "weight": jsonable(a.weight)}
                for a in self.atoms]


def hustad_forward(nt: PhasePointMeasure):
    """(mu, mu~): integrate the phase coordinate, and project to K."""
    mu, proj = {}, {}
    for a in nt.atoms:
        mu[a.point] = mu.get(a.point, 0) + a.phase * a.weight
        proj[a.point] = proj.get(a.point, 0) + a.weight
    mu, proj = Measure(mu), Measure(proj)
    tv = total_variation(mu)
    lower = tv.lo if hasattr(tv, "lo") else tv
    if lower > nt.total_weight:
        raise AssertionError("forward image has larger total variation than the input")
    return mu, proj


def absolutely_continuous(mu: Measure, nu: Measure) -> bool:
    return set(mu.support) <= set(nu.support)


def hustad_inverse(mu: Measure) -> PhasePointMeasure:
    """One atom (mu(x)/|mu(x)|, x, |mu(x)|) per support point."""
    atoms = []
    for x in sorted(mu.support):
        v = mu[x]
        mod = rational_modulus(v)
        if mod is None:
            raise IrrationalModulus(f"|mu({x})| is irrational")
        atoms.append(Atom(v / mod if isinstance(v, Gaussian) else (1 if v > 0 else -1), x, mod))
    nt = PhasePointMeasure(tuple(atoms))
    if nt.total_weight != 1:
        raise NormNotOne(f"total variation is {nt.total_weight}, not 1")
    return nt


def barycenter_check(nt: PhasePointMeasure, space: FunctionSpace, phi) -> bool:
    """The forward image integrates every basis function like phi."""
    mu, _ = hustad_forward(nt)
    if not set(mu.support) <= set(space.points):
        return False
    return tuple(pushforward(mu, space)) == tuple(phi)


def random_norm_one(points, rng: random.Random, complex_mode: bool = False, grid: int = 64) -> Measure:
    """Random measure with rational moduli and total variation exactly 1."""
    k = rng.randint(1, len(points))
    chosen = rng.sample(list(points), k)
    raw = [Fraction(rng.randint(1, 20)) for _ in chosen]
    total = sum(raw)
    phases = phase_grid(grid) if complex_mode else (1, -1)
    return Measure({x: rng.choice(phases) * (w / total) for x, w in zip(chosen, raw)})
