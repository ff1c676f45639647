"""Example spaces, the four-coefficient decision for H_j, and random spaces."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import linalg
from .core import (ChoquetLabError, DependentBasis, FunctionSpace, Gaussian, NonSeparating,
                   Status, Verdict, abs2, conj, rational_modulus,
                   real_part, sqrt_enclosure)

HALF = Fraction(1, 2)


class BadParam(ChoquetLabError):
    pass


class EmptyA(ChoquetLabError):
    pass


class ResamplingExhausted(ChoquetLabError):
    pass


def _label(s, t=None) -> str:
    return str(Fraction(s)) if t is None else f"({s},{t})"


def _field_of(*values) -> str:
    return "complex" if any(isinstance(v, Gaussian) and v.im != 0 for v in values) else "real"


def _coerce(v, field):
    if field == "complex":
        return Gaussian.lift(v)
    return v.re if isinstance(v, Gaussian) else Fraction(v)


def space_from_constraints(name, points, constraints, field="real") -> FunctionSpace:
    """The subspace {f : C f = 0} of F^points, with a kernel basis."""
    n = len(points)
    one = Gaussian(1) if field == "complex" else Fraction(1)
    if constraints:
        rows = [[_coerce(v, field) for v in row] for row in constraints]
        kernel = linalg.nullspace(rows)
    else:
        kernel = [[one * int(i == j) for i in range(n)] for j in range(n)]
    basis = linalg.transpose(kernel)
    return FunctionSpace(name, field, tuple(points), tuple(map(tuple, basis)))


def _grid(g, lo=0, hi=1):
    if g < 1:
        raise BadParam("grid must be at least 1")
    steps = int((hi - lo) * g)
    return [Fraction(lo) + Fraction(k, g) for k in range(steps + 1)]


def make_interval_space(variant: int, g: int, param=None) -> FunctionSpace:
    """Grid on [0,1] with one linear constraint tying f(1) or f(0).

    variant 1: f(0) = 0; variant 2: f(1) = param f(0) with |param| = 1,
    param != 1; variant 3: f(1) = param f(0) with 0 < |param| < 1.
    """
    pts = _grid(g)
    labels = [_label(s) for s in pts]
    n = len(pts)
    field = "real"
    row = [Fraction(0)] * n
    if variant == 1:
        row[0] = Fraction(1)
    elif variant in (2, 3):
        if param is None:
            raise BadParam("variant needs a parameter")
        field = _field_of(param)
        r2 = abs2(param)
        if variant == 2 and (r2 != 1 or param == 1):
            raise BadParam("variant 2 needs |param| = 1 and param != 1")
        if variant == 3 and not (0 < r2 < 1):
            raise BadParam("variant 3 needs 0 < |param| < 1")
        row = [_coerce(0, field)] * n
        row[-1] = _coerce(1, field)
        row[0] = -_coerce(param, field)
    else:
        raise BadParam(f"unknown interval variant {variant}")
    return space_from_constraints(f"interval{variant}-g{g}", labels, [row], field)


def _check_hj_params(alpha, beta):
    if alpha == 0 or beta == 0:
        raise BadParam("alpha and beta must be nonzero")
    ma, mb = sqrt_enclosure(abs2(alpha)), sqrt_enclosure(abs2(beta))
    if ma.hi + mb.hi < 1:
        return
    if ma.lo + mb.lo >= 1:
        raise BadParam("need |alpha| + |beta| < 1")
    raise BadParam("|alpha| + |beta| < 1 could not be certified")


def make_hj(j: int, g: int, alpha, beta) -> FunctionSpace:
    """Three (variant 1) or 2g+1 (variant 2) rows over a grid of [0,1] plus a, b.

    Constraints: f(s,0) = (f(s,-1) + f(s,1))/2 for every grid s, and
    f(0,0) = alpha f(a) + beta f(b).
    """
    if j not in (1, 2):
        raise BadParam("variant must be 1 or 2")
    _check_hj_params(alpha, beta)
    field = _field_of(alpha, beta)
    xs = _grid(g)
    ts = [Fraction(-1), Fraction(0), Fraction(1)] if j == 1 else _grid(g, -1, 1)
    labels = [_label(s, t) for s in xs for t in ts] + ["a", "b"]
    idx = {p: i for i, p in enumerate(labels)}
    n = len(labels)
    rows = []
    for s in xs:
        row = [Fraction(0)] * n
        row[idx[_label(s, 0)]] = Fraction(1)
        row[idx[_label(s, -1)]] -= HALF
        row[idx[_label(s, 1)]] -= HALF
        rows.append(row)
    row = [Fraction(0)] * n
    row[idx[_label(0, 0)]] = 1
    row[idx["a"]] = -alpha
    row[idx["b"]] = -beta
    rows.append(row)
    return space_from_constraints(f"hj{j}-g{g}", labels, rows, field)


def make_porcupine(L, A) -> FunctionSpace:
    """Points L x {0} and A x {-1, 1}; f(t,0) is the mean of f(t,-1), f(t,1) on A."""
    L = list(L)
    A = [t for t in L if t in set(A)]
    if not A:
        raise EmptyA("A must be a nonempty subset of L")
    if len(L) < 2:
        raise BadParam("L needs at least two points")
    labels = []
    for t in L:
        labels.append(f"({t},0)")
        if t in A:
            labels += [f"({t},-1)", f"({t},1)"]
    idx = {p: i for i, p in enumerate(labels)}
    rows = []
    for t in A:
        row = [Fraction(0)] * len(labels)
        row[idx[f"({t},0)"]] = Fraction(1)
        row[idx[f"({t},-1)"]] = -HALF
        row[idx[f"({t},1)"]] = -HALF
        rows.append(row)
    return space_from_constraints("porcupine-" + "".join(map(str, A)), labels, rows)


def make_square_affine() -> FunctionSpace:
    corners = [(0, 0), (1, 0), (0, 1), (1, 1), (HALF, HALF)]
    labels = [f"({x},{y})" for x, y in corners]
    basis = [(Fraction(1), Fraction(x), Fraction(y)) for x, y in corners]
    return FunctionSpace("square-affine", "real", tuple(labels), tuple(basis))


def make_two_point() -> FunctionSpace:
    return FunctionSpace("two-point", "real", ("0", "1"), ((Fraction(1),), (Fraction(-1),)))


def make_full_space(n: int) -> FunctionSpace:
    labels = [f"x{i}" for i in range(n)]
    basis = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    return FunctionSpace(f"full-{n}", "real", tuple(labels), tuple(map(tuple, basis)))


def make_sum_relation_space(g: int = 1) -> FunctionSpace:
    """Grid on [0,3] with f(0) + f(1) = f(2) + f(3)."""
    pts = _grid(g, 0, 3)
    labels = [_label(s) for s in pts]
    idx = {p: i for i, p in enumerate(labels)}
    row = [Fraction(0)] * len(labels)
    row[idx["0"]] = row[idx["1"]] = Fraction(1)
    row[idx["2"]] = row[idx["3"]] = Fraction(-1)
    return space_from_constraints(f"sum-relation-g{g}", labels, [row])


# ---------------------------------------------------------------- four coefficients

@dataclass(frozen=True)
class C14Witness:
    alpha: object
    beta: object
    c: tuple
    x: tuple

    def to_json(self):
        from .core import format_scalar
        return {"c": [format_scalar(v) for v in self.c], "x": [format_scalar(v) for v in self.x]}


def _targets(alpha, beta):
    return (HALF, HALF, -alpha, -beta)


def verify_c14_witness(w: C14Witness) -> bool:
    """Both defining identities and |x_i| <= 1, checked exactly."""
    t = _targets(w.alpha, w.beta)
    if any(abs2(v) > 1 for v in w.x):
        return False
    lhs = [rational_modulus(v) for v in w.c]
    rhs = [rational_modulus(c - ti) for c, ti in zip(w.c, t)]
    if None in lhs or None in rhs or sum(lhs) != sum(rhs):
        return False
    x1, x2, x3, x4 = w.x
    if HALF * (x1 + x2) != w.alpha * x3 + w.beta * x4:
        return False
    return sum((c * x for c, x in zip(w.c, w.x)), Fraction(0)) == sum(lhs)


def _segment_witness(alpha, beta):
    """Witness with each c_i on the segment [0, t_i], if one exists exactly.

    On such segments the shift identity becomes sum_P |t_i| = half the
    total, and alignment fixes x_i = conj(t_i)/|t_i| on the nonzero set P.
    """
    t = _targets(alpha, beta)
    mods = [rational_modulus(v) for v in t]
    if None in mods:
        return None
    total = sum(mods)
    zero = Gaussian(0) if any(isinstance(v, Gaussian) for v in t) else Fraction(0)
    for size in range(1, 5):
        for P in combinations(range(4), size):
            sP = sum(mods[i] for i in P)
            if 2 * sP < total:
                continue
            lam = total / (2 * sP)
            fixed = sum((t[i] * conj(t[i]) / mods[i] for i in P), zero)
            free = [i for i in range(4) if i not in P]
            R = sum((mods[i] for i in free), Fraction(0))
            if abs2(fixed) > R * R:
                continue
            x = [zero] * 4
            for i in P:
                x[i] = conj(t[i]) / mods[i]
            for i in free:
                # sum of t_i x_i over the free set must cancel the fixed part
                x[i] = -fixed * conj(t[i]) / (mods[i] * R)
            c = [zero] * 4
            for i in P:
                c[i] = t[i] * lam
            w = C14Witness(alpha, beta, tuple(c), tuple(x))
            if verify_c14_witness(w):
                return w
    return None


def hj_c14_decision(alpha, beta, mode: str = "real"):
    """Decide functional simpliciality of H_j through the four-coefficient test.

    Returns (verdict, witness).  Status TRUE means H_j is functionally
    simplicial; FALSE comes with a C14Witness.
    """
    _check_hj_params(alpha, beta)
    real_params = _field_of(alpha, beta) == "real"
    if mode == "real":
        if not real_params:
            raise BadParam("real mode needs real alpha, beta")
        a, b = real_part(alpha), real_part(beta)
        w = _segment_witness(a, b)
        if w is not None:
            return Verdict(Status.FALSE, "c14-pattern-enumeration", w), w
        return Verdict(Status.TRUE, "c14-pattern-enumeration",
                       reason="no zero/nonzero pattern admits a solution"), None
    if mode != "complex":
        raise BadParam(f"unknown mode {mode!r}")
    w = _segment_witness(alpha, beta)
    if w is not None:
        return Verdict(Status.FALSE, "c14-phase-search", w), w
    if real_params:
        a, b = real_part(alpha), real_part(beta)
        if a > 0 and b > 0 and a != b:
            return Verdict(Status.TRUE, "positive-distinct-coefficients"), None
    return Verdict(Status.UNKNOWN, "c14-phase-search", reason="no exact witness found"), None


# ---------------------------------------------------------------- inequality

def prubeh_check(z, gamma, t):
    """Exact test of |tz| - |tz - gamma| <= gamma Re z for unimodular z.

    Returns (holds, holds_strictly).  With u = t - gamma Re z the claim is
    u <= |tz - gamma|, decided by comparing squares when u >= 0.
    """
    if abs2(z) != 1:
        raise BadParam("z must be unimodular")
    gamma, t = Fraction(gamma), Fraction(t)
    if gamma == 0 or t < 0:
        raise BadParam("need gamma != 0 and t >= 0")
    u = t - gamma * real_part(z)
    q = abs2(t * z - gamma) if isinstance(z, Gaussian) else (t * z - gamma) ** 2
    if u < 0:
        return True, True
    if u * u < q:
        return True, True
    if u * u == q:
        return True, False
    return False, False


def pythagorean_points(max_num: int = 20, max_den: int = 20):
    """Every ((1-q^2) + 2qi)/(1+q^2) with q = p/r, |p| <= max_num, r <= max_den, plus -1."""
    from .polytope import pythagorean
    seen = {}
    for r in range(1, max_den + 1):
        for p in range(-max_num, max_num + 1):
            z = pythagorean(Fraction(p, r))
            seen[(z.re, z.im)] = z
    seen[(Fraction(-1), Fraction(0))] = Gaussian(-1)
    return list(seen.values())


# ---------------------------------------------------------------- random spaces

def random_space(n: int, m: int, seed: int, field: str = "real",
                 force_constants: bool = False, max_tries: int = 1000) -> FunctionSpace:
    """Seeded random space with small rational entries."""
    if not 1 <= m <= n <= 10:
        raise BadParam("need 1 <= m <= n <= 10")
    rng = random.Random(f"{n}-{m}-{seed}-{field}-{int(force_constants)}")

    def draw():
        v = Fraction(rng.randint(-4, 4), rng.choice((1, 1, 1, 2, 3)))
        if field == "complex":
            return Gaussian(v, Fraction(rng.randint(-4, 4), rng.choice((1, 1, 2))))
        return v

    for _ in range(max_tries):
        rows = []
        for _ in range(n):
            row = [draw() for _ in range(m)]
            if force_constants:
                row[0] = Gaussian(1) if field == "complex" else Fraction(1)
            rows.append(tuple(row))
        try:
            return FunctionSpace(f"random-n{n}-m{m}-s{seed}", field,
                                 tuple(f"p{i}" for i in range(n)), tuple(rows))
        except (DependentBasis, NonSeparating):
            continue
    raise ResamplingExhausted(f"no valid space after {max_tries} draws")


EXAMPLE_NAMES = ("interval1", "interval2", "interval3", "hj1", "hj2", "porcupine",
                 "square-affine", "two-point", "random", "sum-relation")


def make_example(name: str, grid: int = 4, alpha=None, beta=None, seed: int = 0) -> FunctionSpace:
    if name == "interval1":
        return make_interval_space(1, grid)
    if name == "interval2":
        return make_interval_space(2, grid, alpha if alpha is not None else Fraction(-1))
    if name == "interval3":
        return make_interval_space(3, grid, alpha if alpha is not None else HALF)
    if name in ("hj1", "hj2"):
        a = alpha if alpha is not None else Fraction(1, 4)
        b = beta if beta is not None else HALF
        return make_hj(int(name[-1]), grid, a, b)
    if name == "porcupine":
        labels = [f"t{i}" for i in range(1, max(grid, 2) + 1)]
        return make_porcupine(labels, labels[:1])
    if name == "square-affine":
        return make_square_affine()
    if name == "two-point":
        return make_two_point()
    if name == "random":
        return random_space(5, 3, seed)
    if name == "sum-relation":
        return make_sum_relation_space(grid)
    raise BadParam(f"unknown example {name!r}")
