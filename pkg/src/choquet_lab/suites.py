"""Seeded property suites: implication lattice, transfer identities, inequalities."""
from __future__ import annotations

import random
import time
from fractions import Fraction

from .boundary import choquet_boundary, complex_norm_enclosures, dual_norm
from .core import Gaussian, InternalInconsistency, Measure, Status, rational_modulus, total_variation
from .dirichlet import dirichlet_property_suite
from .gallery import prubeh_check, pythagorean_points, random_space
from .hustad import Atom, PhasePointMeasure, hustad_forward, hustad_inverse, random_norm_one
from .polytope import phase_grid, sec_pi_over
from .representation import compute_Ac, condition_report, contains_space, is_simplicial, same_span

EQUIVALENT_WITH_CONSTANTS = ("V", "III", "IV", "VI")


def random_cases(count: int, seed: int, max_n: int = 6, max_m: int = 4, field: str = "real"):
    """Deterministic stream of random spaces of varying shape."""
    rng = random.Random(seed)
    for i in range(count):
        n = rng.randint(2, max_n)
        m = rng.randint(1, min(n, max_m))
        constants = m >= 2 and rng.random() < 0.5
        sub = rng.randrange(10 ** 9)
        yield random_space(n, m, sub, field, force_constants=constants), sub


def check_space(space, seed: int = 0, dirichlet: bool = False) -> list:
    """All lattice and transfer checks on one real space; returns failure names."""
    failures = []
    try:
        rep = condition_report(space, seed=seed)
    except InternalInconsistency as exc:
        return [f"lattice: {exc}"]
    st = rep.statuses()
    ac = compute_Ac(space)
    ac_boundary = choquet_boundary(ac)
    if set(ac_boundary.boundary) != set(rep.boundary.boundary):
        failures.append("boundary differs from the A_c boundary")
    if is_simplicial(ac, ac_boundary)[0].status != st["II"]:
        failures.append("simpliciality differs from A_c")
    if not same_span(compute_Ac(ac), ac):
        failures.append("A_c is not idempotent")
    if not contains_space(ac, space):
        failures.append("A_c does not contain H")
    for x in space.points:
        if dual_norm(ac, ac.row(x)) != dual_norm(space, space.row(x)):
            failures.append(f"norm of the evaluation at {x} changes under A_c")
            break
    if space.contains_constants and same_span(ac, space):
        group = [st[c] for c in EQUIVALENT_WITH_CONSTANTS]
        simplex = rep.extras.get("stateSpaceSimplex")
        if simplex is not None:
            group.append(simplex.status)
        decided = {s for s in group if s is not Status.UNKNOWN}
        if len(decided) > 1:
            failures.append("equivalent conditions disagree on a space with constants")
    if dirichlet and st["II"] is Status.TRUE:
        res = dirichlet_property_suite(space, seed=seed, batch=5)
        if not res["passed"]:
            failures.append("dirichlet: " + ", ".join(k for k, v in res["checks"].items() if not v))
    return failures


def random_implication_suite(count: int = 200, seed: int = 1, max_n: int = 6, max_m: int = 4,
                             dirichlet: bool = False) -> dict:
    start = time.perf_counter()
    cases, violations = 0, []
    for space, sub in random_cases(count, seed, max_n, max_m):
        cases += 1
        fails = check_space(space, sub, dirichlet)
        if fails:
            violations.append({"space": space.to_document(), "seed": sub, "failures": fails})
    return {"suite": "random", "count": cases, "seed": seed, "violations": violations,
            "seconds": time.perf_counter() - start}


# ---------------------------------------------------------------- inequality sweep

def prubeh_expected_strict(z, gamma, t) -> bool:
    """Closed-form strictness, including the real phases."""
    if z == 1:
        return gamma > 0 and t < gamma
    if z == -1:
        return gamma < 0 and t < -gamma
    return True


def prubeh_sweep(max_num: int = 20, max_den: int = 20,
                 gammas=(2, 1, Fraction(1, 2), -2, -1, Fraction(-1, 2)),
                 ts=(0, Fraction(1, 2), 1, 2, 10), limit: int | None = None) -> dict:
    start = time.perf_counter()
    cases, failures, non_strict_off_axis = 0, [], 0
    for z in pythagorean_points(max_num, max_den):
        for g in gammas:
            for t in ts:
                if limit is not None and cases >= limit:
                    break
                cases += 1
                holds, strict = prubeh_check(z, g, t)
                real_axis = z == 1 or z == -1
                if not real_axis and not strict:
                    non_strict_off_axis += 1
                if not holds or strict != prubeh_expected_strict(z, g, t):
                    failures.append({"z": z, "gamma": g, "t": t, "holds": holds, "strict": strict})
    return {"suite": "prubeh", "count": cases, "violations": failures,
            "nonStrictOffAxis": non_strict_off_axis, "seconds": time.perf_counter() - start}


# ---------------------------------------------------------------- phase-point transfer

def _abs_measure(mu: Measure) -> Measure:
    return Measure({x: rational_modulus(v) for x, v in mu.values.items()})


def hustad_suite(count: int = 500, seed: int = 0) -> dict:
    rng = random.Random(seed)
    start = time.perf_counter()
    failures = []
    for i in range(count):
        points = [f"x{k}" for k in range(rng.randint(1, 6))]
        complex_mode = i % 2 == 1
        mu = random_norm_one(points, rng, complex_mode)
        nt = hustad_inverse(mu)
        fwd, proj = hustad_forward(nt)
        ok = (fwd == mu and proj == _abs_measure(mu) and total_variation(fwd) <= nt.total_weight
              and set(fwd.support) <= set(proj.support) and hustad_inverse(fwd) == nt)
        # an arbitrary phase-point measure: several phases per point
        phases = phase_grid(16) if complex_mode else (1, -1)
        atoms = tuple(Atom(rng.choice(phases), rng.choice(points), Fraction(rng.randint(1, 9), 10))
                      for _ in range(rng.randint(1, 6)))
        general = PhasePointMeasure(atoms)
        gmu, gproj = hustad_forward(general)
        tv = total_variation(gmu)
        upper = tv.hi if hasattr(tv, "hi") else tv
        lower = tv.lo if hasattr(tv, "lo") else tv
        ok = ok and lower <= general.total_weight and set(gmu.support) <= set(gproj.support)
        if upper == general.total_weight and not hasattr(tv, "hi"):
            ok = ok and gproj == _abs_measure(gmu)
        if not ok:
            failures.append({"index": i, "measure": mu.to_json(), "atoms": general.to_json()})
    return {"suite": "hustad", "count": count, "seed": seed, "violations": failures,
            "seconds": time.perf_counter() - start}


# ---------------------------------------------------------------- complex enclosures

def _random_gaussian(rng):
    return Gaussian(Fraction(rng.randint(-4, 4), rng.choice((1, 2, 3))),
                    Fraction(rng.randint(-4, 4), rng.choice((1, 2, 3))))


def complex_sandwich(count: int = 50, seed: int = 0, N: int = 16) -> dict:
    """Nested enclosures at N and 2N with ratio bounded by sec(pi/N)."""
    rng = random.Random(seed)
    start = time.perf_counter()
    failures = []
    bound = sec_pi_over(N)
    for i in range(count):
        n = rng.randint(2, 4)
        m = rng.randint(1, min(n, 3))
        space = random_space(n, m, rng.randrange(10 ** 9), "complex")
        phi = tuple(_random_gaussian(rng) for _ in range(m))
        if all(v == 0 for v in phi):
            phi = (Gaussian(1),) + phi[1:]
        encs = complex_norm_enclosures(space, phi, N, max_grid=2 * N, target_width=Fraction(0))
        (_, coarse), (_, fine) = encs[0], encs[1]
        nested = coarse.lo <= fine.lo and fine.hi <= coarse.hi and fine.lo <= fine.hi
        ratio_ok = fine.lo > 0 and fine.hi / fine.lo <= bound
        coarse_b = choquet_boundary(space, N)
        fine_b = choquet_boundary(space, 2 * N)
        consistent = _boundary_consistent(coarse_b, fine_b)
        if not (nested and ratio_ok and consistent):
            failures.append({"index": i, "space": space.to_document(), "nested": nested,
                             "ratio": ratio_ok, "consistent": consistent})
    return {"suite": "complex-sandwich", "count": count, "seed": seed, "grid": N,
            "violations": failures, "seconds": time.perf_counter() - start}


def _boundary_consistent(coarse, fine) -> bool:
    for label in coarse.boundary:
        if label in fine.non_boundary:
            return False
    for label in coarse.non_boundary:
        if label in fine.boundary:
            return False
    return True
