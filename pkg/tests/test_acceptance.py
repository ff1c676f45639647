"""Acceptance criteria 1-11, one PASS/FAIL line each.

Run under pytest, or directly with ``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import sys
import time
from fractions import Fraction as F
from itertools import combinations

import pytest

from choquet_lab import suites
from choquet_lab.boundary import choquet_boundary, dual_norm, theta_injective
from choquet_lab.core import Measure, Status, total_variation
from choquet_lab.dirichlet import apply_D, dilation, dirichlet_property_suite
from choquet_lab.gallery import (hj_c14_decision, make_full_space, make_hj, make_interval_space,
                                 make_porcupine, make_square_affine, make_sum_relation_space,
                                 make_two_point, verify_c14_witness)
from choquet_lab.representation import (annihilator_boundary_basis, condition_report,
                                        is_functionally_simplicial, is_simplicial,
                                        verify_nonuniqueness_witness)

T, FA = Status.TRUE, Status.FALSE
HALF = F(1, 2)


def _timed(fn):
    start = time.perf_counter()
    ok, detail = fn()
    return ok, detail, time.perf_counter() - start


def _line(n, ok, detail, seconds):
    return f"ACCEPTANCE {n:>2}: {'PASS' if ok else 'FAIL'} ({seconds:.1f}s) {detail}"


# ---------------------------------------------------------------- criteria

def criterion_1():
    fails = []
    for build in (lambda: make_interval_space(1, 8), lambda: make_interval_space(2, 4, F(-1)),
                  lambda: make_interval_space(3, 4, HALF)):
        start = time.perf_counter()
        space = build()
        rep = choquet_boundary(space)
        theta = theta_injective(space, True, rep).status
        simp, table = is_simplicial(space, rep)
        name = space.name
        if name.startswith("interval1"):
            if set(rep.boundary) != set(space.points) - {"0"}:
                fails.append("interval1 boundary")
        elif name.startswith("interval2"):
            if theta is not FA or simp.status is not FA:
                fails.append("interval2 verdicts")
        else:
            if theta is not T or simp.status is not T:
                fails.append("interval3 verdicts")
            if table["1"]["member"] != Measure({"0": HALF}):
                fails.append("interval3 M_1")
        if time.perf_counter() - start >= 10:
            fails.append(f"{name} slow")
    return not fails, "; ".join(fails) or "interval variants 1-3 match"


def criterion_2():
    fails = []
    expected = {"I": T, "II": T, "III": T, "IV": FA, "V": T, "VI": FA}
    for g in (2, 4):
        start = time.perf_counter()
        space = make_hj(1, g, F(1, 4), HALF)
        rep = condition_report(space)
        if rep.statuses() != expected:
            fails.append(f"g={g} verdicts {rep.statuses()}")
        basis = annihilator_boundary_basis(space, rep.boundary)
        target = Measure({"a": F(1, 4), "b": HALF, "(0,1)": -HALF, "(0,-1)": -HALF})
        if len(basis) != 1 or basis[0] != target.scale(basis[0]["a"] / target["a"]):
            fails.append(f"g={g} annihilator")
        if dual_norm(space, space.row("(0,0)")) != F(3, 4):
            fails.append(f"g={g} norm")
        if g == 4 and time.perf_counter() - start >= 120:
            fails.append("g=4 slow")
    return not fails, "; ".join(fails) or "g=2,4 report, annihilator and norm 3/4 match"


def criterion_3():
    fails = []
    for g in (2, 4):
        space = make_hj(1, g, F(1, 3), F(1, 3))
        rep = condition_report(space)
        st = rep.statuses()
        if (st["I"], st["II"], st["III"], st["IV"], st["VI"]) != (T, T, FA, FA, FA):
            fails.append(f"g={g} verdicts")
        w = rep.verdicts["III"].witness
        if not verify_nonuniqueness_witness(space, w, rep.boundary):
            fails.append(f"g={g} witness")
        if not total_variation(w.mu) == total_variation(w.mu + w.nu) == F(5, 6):
            fails.append(f"g={g} variation {total_variation(w.mu)}")
    return not fails, "; ".join(fails) or "witness verified, both measures of variation 5/6"


C14_PAIRS = [(F(a), F(b)) for a, b in (
    ("1/10", "1/10"), ("1/5", "1/5"), ("1/4", "1/4"), ("3/10", "3/10"), ("1/3", "1/3"),
    ("2/5", "2/5"), ("1/4", "1/2"), ("1/10", "1/2"), ("1/5", "3/5"), ("1/3", "1/2"),
    ("1/2", "1/4"), ("2/5", "1/5"), ("1/6", "1/3"), ("3/10", "1/2"), ("-1/4", "1/2"),
    ("-1/3", "-1/3"), ("1/3", "-1/3"), ("-1/5", "-1/2"), ("1/4", "-1/4"), ("-1/10", "3/5"),
    ("-1/4", "-1/2"), ("1/2", "-1/5"))]


def criterion_4():
    fails, agree = [], 0
    for a, b in C14_PAIRS:
        c14, w = hj_c14_decision(a, b)
        for g in (2, 4):
            generic, _ = is_functionally_simplicial(make_hj(1, g, a, b))
            if c14.decided and generic.decided and c14.status is not generic.status:
                fails.append(f"({a},{b},g={g}) disagree")
            else:
                agree += 1
        if a == b and (c14.status is not FA or not verify_c14_witness(w)):
            fails.append(f"({a},{b}) lacks a witness")
        if a > 0 and b > 0 and a != b and c14.status is not T:
            fails.append(f"({a},{b}) not simplicial")
    return not fails, "; ".join(fails) or f"{len(C14_PAIRS)} pairs, {agree} agreeing decisions"


def criterion_5():
    fails, count, worst = [], 0, 0.0
    for k in range(2, 6):
        L = [f"t{i}" for i in range(1, k + 1)]
        for r in range(1, k + 1):
            for A in combinations(L, r):
                start = time.perf_counter()
                space = make_porcupine(L, A)
                rep = condition_report(space)
                expected = {f"({t},0)" for t in L if t not in A} | \
                    {f"({t},{s})" for t in A for s in (-1, 1)}
                st = rep.statuses()
                five = [st["V"], st["III"], st["IV"], st["VI"], rep.extras["stateSpaceSimplex"].status]
                if set(rep.boundary.boundary) != expected:
                    fails.append(f"{A} boundary")
                if st["II"] is not T or st["VI"] is not T or len(set(five)) != 1:
                    fails.append(f"{A} verdicts")
                elapsed = time.perf_counter() - start
                worst = max(worst, elapsed)
                if elapsed >= 60:
                    fails.append(f"{A} slow")
                count += 1
    return not fails, "; ".join(fails) or f"{count} porcupines, slowest {worst:.2f}s"


def criterion_6():
    fails = []
    st = condition_report(make_two_point()).statuses()
    if not (st["VI"] is T and st["I"] is FA):
        fails.append("two-point")
    st = condition_report(make_square_affine()).statuses()
    if not (st["I"] is T and st["II"] is FA and st["V"] is FA):
        fails.append("square-affine")
    st = condition_report(make_hj(1, 2, F(1, 4), HALF)).statuses()
    if not (st["III"] is T and st["IV"] is FA):
        fails.append("H1(1/4,1/2)")
    st = condition_report(make_hj(1, 2, F(1, 3), F(1, 3))).statuses()
    if not (st["II"] is T and st["III"] is FA):
        fails.append("H1(1/3,1/3)")
    return not fails, "; ".join(fails) or "all four non-implications exhibited"


def criterion_7():
    start = time.perf_counter()
    res = suites.random_implication_suite(200, seed=1, max_n=6, max_m=4)
    slow = time.perf_counter() - start >= 15 * 60
    ok = res["count"] == 200 and not res["violations"] and not slow
    return ok, f"{res['count']} spaces, {len(res['violations'])} violations"


def _dirichlet_spaces():
    gallery = [make_interval_space(1, 4), make_interval_space(3, 4, HALF),
               make_hj(1, 2, F(1, 4), HALF), make_hj(1, 2, F(1, 3), F(1, 3)),
               make_porcupine(["t1", "t2", "t3"], ["t1"]),
               make_porcupine(["t1", "t2", "t3"], ["t1", "t2"]), make_full_space(3),
               make_sum_relation_space(1)]
    randoms = [s for s, _ in suites.random_cases(60, seed=8)]
    return [s for s in gallery + randoms if is_simplicial(s)[0].status is T]


def criterion_8():
    start = time.perf_counter()
    fails, count = [], 0
    for i, space in enumerate(_dirichlet_spaces()):
        res = dirichlet_property_suite(space, seed=i, batch=6)
        count += 1
        if not res["passed"]:
            fails.append(f"{space.name}: " + ",".join(k for k, v in res["checks"].items() if not v))
        if res["thetaInjective"] == "true" and "idempotentD" not in res["checks"]:
            fails.append(f"{space.name}: idempotence unchecked")
    hj = make_hj(1, 2, F(1, 4), HALF)
    Df = dict(zip(hj.points, apply_D(dilation(hj), [F(1)] * hj.n)))
    if Df["(0,0)"] != F(1, 4) + HALF:
        fails.append("Df(0,0) differs from alpha + beta")
    if time.perf_counter() - start >= 300:
        fails.append("slow")
    return not fails, "; ".join(fails) or f"{count} simplicial spaces, Df(0,0) = 3/4"


def criterion_9():
    res = suites.hustad_suite(500, seed=0)
    return not res["violations"], f"{res['count']} measures, {len(res['violations'])} violations"


def criterion_10():
    res = suites.prubeh_sweep(20, 20)
    ok = not res["violations"] and res["nonStrictOffAxis"] == 0 and res["seconds"] < 30
    return ok, f"{res['count']} cases, {len(res['violations'])} violations"


def criterion_11():
    res = suites.complex_sandwich(50, seed=0, N=16)
    return not res["violations"], f"{res['count']} functionals, {len(res['violations'])} violations"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11]


@pytest.mark.parametrize("n", range(1, 12))
def test_acceptance(n, capsys):
    ok, detail, seconds = _timed(CRITERIA[n - 1])
    with capsys.disabled():
        print("\n" + _line(n, ok, detail, seconds))
    assert ok, detail


if __name__ == "__main__":
    results = []
    for n, fn in enumerate(CRITERIA, 1):
        ok, detail, seconds = _timed(fn)
        print(_line(n, ok, detail, seconds), flush=True)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
