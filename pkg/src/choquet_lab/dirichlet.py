"""Dilation operators D and D~ of a simplicial space and their property checks."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .boundary import BoundaryReport, choquet_boundary, dual_norm, theta_injective
from .core import (ChoquetLabError, DimensionMismatch, FunctionSpace, Measure, Status,
                   total_variation)
from .representation import compute_Ac, is_simplicial, representing_vertices


class NotSimplicial(ChoquetLabError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ComplexUndecided(ChoquetLabError):
    pass


@dataclass(frozen=True)
class DilationPair:
    points: tuple
    boundary: tuple
    delta: dict
    D: tuple
    Dtilde: tuple

    def to_json(self):
        from .core import jsonable
        return {"points": list(self.points), "boundary": list(self.boundary),
                "delta": {x: m.to_json() for x, m in self.delta.items()},
                "D": jsonable(self.D), "Dtilde": jsonable(self.Dtilde)}


def dilation(space: FunctionSpace, report: BoundaryReport | None = None) -> DilationPair:
    """Rows delta_x: the unique boundary measure representing x."""
    if space.is_complex:
        raise ComplexUndecided("dilation operators are computed in real mode only")
    report = report or choquet_boundary(space)
    verdict, table = is_simplicial(space, report)
    if verdict.status is not Status.TRUE:
        raise NotSimplicial(f"{space.name} is not simplicial", verdict.witness)
    delta = {x: table[x]["member"] for x in space.points}
    D = tuple(tuple(Fraction(delta[x][y]) for y in space.points) for x in space.points)
    Dt = tuple(tuple(abs(v) for v in row) for row in D)
    return DilationPair(space.points, tuple(report.boundary), delta, D, Dt)


def _apply(matrix, f):
    if len(f) != len(matrix):
        raise DimensionMismatch(f"expected {len(matrix)} values, got {len(f)}")
    return tuple(linalg.dot(row, f) for row in matrix)


def apply_D(pair: DilationPair, f) -> tuple:
    return _apply(pair.D, f)


def apply_Dtilde(pair: DilationPair, f) -> tuple:
    return _apply(pair.Dtilde, f)


def _adjoint(pair, matrix, mu: Measure) -> Measure:
    out = {}
    for i, x in enumerate(pair.points):
        w = mu[x]
        if w == 0:
            continue
        for j, y in enumerate(pair.points):
            if matrix[i][j] != 0:
                out[y] = out.get(y, 0) + w * matrix[i][j]
    return Measure(out)


def adjoint_D(pair: DilationPair, mu: Measure) -> Measure:
    return _adjoint(pair, pair.D, mu)


def adjoint_Dtilde(pair: DilationPair, mu: Measure) -> Measure:
    return _adjoint(pair, pair.Dtilde, mu)


def _matmul(A, B):
    cols = linalg.transpose(B)
    return tuple(tuple(linalg.dot(r, c) for c in cols) for r in A)


def _random_rational(rng):
    q = rng.randint(1, 12)
    return Fraction(rng.randint(-q, q), q)


def dirichlet_property_suite(space: FunctionSpace, seed: int = 0, batch: int = 20) -> dict:
    """Exact checks of the dilation identities on a seeded batch of f and mu."""
    rng = random.Random(seed)
    report = choquet_boundary(space)
    pair = dilation(space, report)
    pts = space.points
    bnd = set(pair.boundary)
    vert = {x: representing_vertices(space, x) for x in pts}
    ac = compute_Ac(space)
    ac_funcs = linalg.transpose([list(r) for r in ac.basis])
    checks = {}

    def record(name, ok):
        checks[name] = checks.get(name, True) and bool(ok)

    def integral(fvals, mu):
        return sum((fvals[pts.index(x)] * w for x, w in mu.values.items()), Fraction(0))

    for matrix, tag in ((pair.D, "D"), (pair.Dtilde, "Dtilde")):
        record(f"operatorNorm{tag}", all(sum(abs(v) for v in row) <= 1 for row in matrix))
    for i, x in enumerate(pts):
        unit = tuple(Fraction(int(i == j)) for j in range(len(pts)))
        if x in bnd:
            record("boundaryRowsUnit", pair.D[i] == unit and pair.Dtilde[i] == unit)
        record("deltaNorm", total_variation(pair.delta[x]) == dual_norm(space, space.row(x)))
        record("deltaBoundary", set(pair.delta[x].support) <= bnd)
        record("diracImage", adjoint_D(pair, Measure({x: 1})) == pair.delta[x])
        for mu in vert[x]:
            record("representingImage", adjoint_D(pair, mu) == pair.delta[x])

    for _ in range(batch):
        f = tuple(_random_rational(rng) for _ in pts)
        Df, Dtf = apply_D(pair, f), apply_Dtilde(pair, f)
        sup = max(abs(v) for v in f)
        record("supNormD", max(abs(v) for v in Df) <= sup)
        record("supNormDtilde", max(abs(v) for v in Dtf) <= sup)
        fpos = tuple(abs(v) for v in f)
        record("positiveDomination", all(abs(a) <= b for a, b in
                                         zip(apply_D(pair, fpos), apply_Dtilde(pair, fpos))))
        for i, x in enumerate(pts):
            for mu in vert[x]:
                record("affinity", integral(Df, mu) == Df[i])

        support = rng.sample(list(pts), rng.randint(1, len(pts)))
        mu = Measure({x: _random_rational(rng) for x in support})
        Dmu, Dtmu = adjoint_D(pair, mu), adjoint_Dtilde(pair, mu)
        tv = total_variation(mu)
        record("measureNormD", total_variation(Dmu) <= tv)
        record("measureNormDtilde", total_variation(Dtmu) <= tv)
        absmu = Measure({x: abs(w) for x, w in mu.values.items()})
        Dt_abs = adjoint_Dtilde(pair, absmu)
        record("absDomination", all(abs(Dmu[x]) <= Dt_abs[x] for x in pts))
        record("positivity", all(w >= 0 for w in Dt_abs.values.values()))
        record("imagesBoundary", set(Dmu.support) <= bnd and set(Dtmu.support) <= bnd)
        diff = mu - Dmu
        record("annihilatesAc", all(integral(g, diff) == 0 for g in ac_funcs))
        on_bnd = set(mu.support) <= bnd
        record("fixedIffBoundary", (Dmu == mu) == on_bnd and (Dtmu == mu) == on_bnd)
        bmu = mu.restrict(bnd)
        record("boundaryFixed", adjoint_D(pair, bmu) == bmu and adjoint_Dtilde(pair, bmu) == bmu)

    theta = theta_injective(space, True, report)
    if theta.status is Status.TRUE:
        record("idempotentD", _matmul(pair.D, pair.D) == pair.D)
        record("idempotentDtilde", _matmul(pair.Dtilde, pair.Dtilde) == pair.Dtilde)
    if space.contains_constants:
        record("constantsGiveEqualOperators", pair.D == pair.Dtilde)
    return {"space": space.name, "seed": seed, "batch": batch, "checks": checks,
            "passed": all(checks.values()), "thetaInjective": theta.status.value}
