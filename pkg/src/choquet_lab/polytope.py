"""Exact rational convex geometry: simplex LP, double description, facets."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce

from . import linalg
from .core import (ChoquetLabError, Gaussian, Status, Verdict, sqrt_lower)


class UnboundedInput(ChoquetLabError):
    pass


# ---------------------------------------------------------------- LP

@dataclass(frozen=True)
class LinearProgram:
    """min/max c.x subject to eq rows (a.x = b) and ub rows (a.x <= b).

    Variables listed in ``free`` are unrestricted, all others are >= 0.
    """

    n_vars: int
    objective: tuple
    sense: str = "min"
    eq_rows: tuple = ()
    ub_rows: tuple = ()
    free: frozenset = frozenset()

    @staticmethod
    def build(n_vars, objective=None, sense="min", A_eq=(), b_eq=(), A_ub=(), b_ub=(), free=()):
        obj = tuple(Fraction(c) for c in objective) if objective is not None else (Fraction(0),) * n_vars
        eq = tuple((tuple(Fraction(v) for v in row), Fraction(b)) for row, b in zip(A_eq, b_eq))
        ub = tuple((tuple(Fraction(v) for v in row), Fraction(b)) for row, b in zip(A_ub, b_ub))
        if free == "all":
            free = range(n_vars)
        return LinearProgram(n_vars, obj, sense, eq, ub, frozenset(free))


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | None = None
    x: tuple | None = None
    y_eq: tuple | None = None
    y_ub: tuple | None = None
    ray: tuple | None = None
    farkas_eq: tuple | None = None
    farkas_ub: tuple | None = None

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


def lp_solve(lp: LinearProgram) -> LPResult:
    """Two-phase revised simplex in exact arithmetic, lowest-index rule.

    Optimal results carry dual values (``y_eq``, ``y_ub``) with
    objective = b.y; infeasible results carry a Farkas vector; unbounded
    results carry an improving ray of the original variables.
    """
    sign = -1 if lp.sense == "max" else 1
    rows = [r for r, _ in lp.eq_rows] + [r for r, _ in lp.ub_rows]
    rhs = [b for _, b in lp.eq_rows] + [b for _, b in lp.ub_rows]
    n_eq, n_ub = len(lp.eq_rows), len(lp.ub_rows)
    m = len(rows)

    # standard-form columns: (var index, sign) or slack
    col_map = []
    columns = []
    cost = []
    for j in range(lp.n_vars):
        entries = [(i, rows[i][j]) for i in range(m) if rows[i][j] != 0]
        columns.append(entries)
        col_map.append((j, 1))
        cost.append(sign * lp.objective[j])
        if j in lp.free:
            columns.append([(i, -v) for i, v in entries])
            col_map.append((j, -1))
            cost.append(-sign * lp.objective[j])
    for k in range(n_ub):
        columns.append([(n_eq + k, Fraction(1))])
        col_map.append(None)
        cost.append(Fraction(0))
    n_struct = len(columns)

    flip = [(-1 if b < 0 else 1) for b in rhs]
    b = [abs(v) for v in rhs]
    columns = [[(i, v * flip[i]) for i, v in col] for col in columns]

    if m == 0:
        # no constraints: optimal at 0 unless some cost is negative
        for j, c in enumerate(cost):
            if c < 0:
                return LPResult("unbounded", ray=_ray_to_x(lp, col_map, {j: Fraction(1)}))
        return LPResult("optimal", Fraction(0), (Fraction(0),) * lp.n_vars, (), ())

    for i in range(m):
        columns.append([(i, Fraction(1))])
    ncols = len(columns)
    basis = list(range(n_struct, ncols))
    binv = [[Fraction(int(i == k)) for k in range(m)] for i in range(m)]
    xb = list(b)

    phase1_cost = [Fraction(0)] * n_struct + [Fraction(1)] * m
    status, _ = _simplex(columns, phase1_cost, basis, binv, xb, range(ncols))
    w = sum(phase1_cost[j] * v for j, v in zip(basis, xb))
    if w > 0:
        y = _duals(phase1_cost, basis, binv)
        y_orig = [yi * f for yi, f in zip(y, flip)]
        return LPResult("infeasible", farkas_eq=tuple(y_orig[:n_eq]), farkas_ub=tuple(y_orig[n_eq:]))

    # push zero-level artificials out of the basis where possible
    for pos in range(m):
        if basis[pos] < n_struct:
            continue
        for j in range(n_struct):
            if j in basis:
                continue
            u_r = sum(binv[pos][i] * v for i, v in columns[j])
            if u_r != 0:
                u = [sum(binv[k][i] * v for i, v in columns[j]) for k in range(m)]
                _pivot(binv, xb, u, pos)
                basis[pos] = j
                break

    full_cost = cost + [Fraction(0)] * m
    status, entering = _simplex(columns, full_cost, basis, binv, xb, range(n_struct))
    if status == "unbounded":
        u = [sum(binv[k][i] * v for i, v in columns[entering]) for k in range(m)]
        z = {entering: Fraction(1)}
        for k, j in enumerate(basis):
            if u[k] != 0:
                z[j] = z.get(j, 0) - u[k]
        return LPResult("unbounded", ray=_ray_to_x(lp, col_map, z))

    z = {j: v for j, v in zip(basis, xb)}
    x = [Fraction(0)] * lp.n_vars
    for j, v in z.items():
        if j < n_struct and col_map[j] is not None:
            var, s = col_map[j]
            x[var] += s * v
    y = _duals(full_cost, basis, binv)
    y_orig = [sign * yi * f for yi, f in zip(y, flip)]
    value = sum(c * xi for c, xi in zip(lp.objective, x))
    return LPResult("optimal", value, tuple(x), tuple(y_orig[:n_eq]), tuple(y_orig[n_eq:]))


def _primal_feasible(lp: LinearProgram, x) -> bool:
    for row, b in lp.eq_rows:
        if linalg.dot(row, x) != b:
            return False
    for row, b in lp.ub_rows:
        if linalg.dot(row, x) > b:
            return False
    return all(x[j] >= 0 for j in range(lp.n_vars) if j not in lp.free)


def lp_solve_free(lp: LinearProgram) -> LPResult:
    """Solve an LP in free variables through its dual.

    Suited to few variables and many inequality rows: the dual has one
    equality row per variable, so its basis stays small.  The optimal dual
    multipliers form a vertex of the primal feasible region.  Falls back to
    ``lp_solve`` when the dual is infeasible (primal unbounded or empty).
    """
    if len(lp.free) != lp.n_vars:
        return lp_solve(lp)
    sign = 1 if lp.sense == "max" else -1
    n_eq, n_ub = len(lp.eq_rows), len(lp.ub_rows)
    rows = [r for r, _ in lp.eq_rows] + [r for r, _ in lp.ub_rows]
    A_eq = [[row[j] for row in rows] for j in range(lp.n_vars)]
    b_eq = [sign * c for c in lp.objective]
    cost = [b for _, b in lp.eq_rows] + [b for _, b in lp.ub_rows]
    dual = LinearProgram.build(n_eq + n_ub, cost, "min", A_eq, b_eq, free=range(n_eq))
    res = lp_solve(dual)
    if res.status == "unbounded":
        return LPResult("infeasible")
    if res.status != "optimal":
        return lp_solve(lp)
    for cand in (tuple(res.y_eq), tuple(-v for v in res.y_eq)):
        if _primal_feasible(lp, cand) and sign * linalg.dot(lp.objective, cand) == res.value:
            value = sum((c * v for c, v in zip(lp.objective, cand)), Fraction(0))
            return LPResult("optimal", value, cand, tuple(sign * v for v in res.x[:n_eq]),
                            tuple(sign * v for v in res.x[n_eq:]))
    return lp_solve(lp)


def _ray_to_x(lp, col_map, z):
    x = [Fraction(0)] * lp.n_vars
    for j, v in z.items():
        if j < len(col_map) and col_map[j] is not None:
            var, s = col_map[j]
            x[var] += s * v
    return tuple(x)


def _duals(cost, basis, binv):
    m = len(basis)
    cb = [cost[j] for j in basis]
    return [sum(cb[k] * binv[k][i] for k in range(m) if cb[k] != 0) for i in range(m)]


def _pivot(binv, xb, u, r):
    m = len(binv)
    ur = u[r]
    row_r = [v / ur for v in binv[r]]
    theta = xb[r] / ur
    for k in range(m):
        if k == r or u[k] == 0:
            continue
        uk = u[k]
        binv[k] = [a - uk * c for a, c in zip(binv[k], row_r)]
        xb[k] -= uk * theta
    binv[r] = row_r
    xb[r] = theta


def _simplex(columns, cost, basis, binv, xb, allowed):
    """Dantzig pricing; lowest-index (Bland) pricing during degenerate runs."""
    m = len(basis)
    y = _duals(cost, basis, binv)
    stall = 0
    while True:
        in_basis = set(basis)
        entering, best_d = None, 0
        for j in allowed:
            if j in in_basis:
                continue
            d = cost[j] - sum(y[i] * v for i, v in columns[j])
            if d < best_d:
                entering, best_d = j, d
                if stall > 20:
                    break
        if entering is None:
            return "optimal", None
        col = columns[entering]
        u = [sum(binv[k][i] * v for i, v in col) for k in range(m)]
        best = None
        for k in range(m):
            if u[k] > 0:
                ratio = xb[k] / u[k]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[k] < basis[best[1]]):
                    best = (ratio, k)
        if best is None:
            return "unbounded", entering
        r = best[1]
        stall = stall + 1 if best[0] == 0 else 0
        _pivot(binv, xb, u, r)
        basis[r] = entering
        row_r = binv[r]
        y = [yi + best_d * a for yi, a in zip(y, row_r)]


# ---------------------------------------------------------------- representations

@dataclass(frozen=True)
class PolytopeVRep:
    points: tuple

    @property
    def dim(self):
        return len(self.points[0]) if self.points else 0


@dataclass(frozen=True)
class PolytopeHRep:
    """{x : A x <= b, E x = e}."""

    A: tuple
    b: tuple
    E: tuple = ()
    e: tuple = ()
    dim: int = 0


@dataclass(frozen=True)
class Facet:
    normal: tuple
    offset: Fraction
    vertex_count: int
    dimension: int
    incident: tuple = field(default=(), compare=False)

    @property
    def is_simplex(self) -> bool:
        return self.vertex_count == self.dimension + 1


def _primitive(vec):
    """Scale a rational vector to a primitive integer vector."""
    dens = [Fraction(v).denominator for v in vec]
    lcm = reduce(lambda a, c: a * c // math.gcd(a, c), dens, 1)
    ints = [int(Fraction(v) * lcm) for v in vec]
    g = reduce(math.gcd, (abs(v) for v in ints), 0)
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints)


def _dd_extreme_rays(rows, dim):
    """Extreme rays of the pointed cone {z : row.z <= 0} (double description)."""
    rows = [_primitive(r) for r in rows]
    chosen, rest = [], []
    for r in rows:
        if len(chosen) < dim and linalg.rank([list(map(Fraction, c)) for c in chosen + [r]]) == len(chosen) + 1:
            chosen.append(r)
        else:
            rest.append(r)
    if len(chosen) < dim:
        raise UnboundedInput("cone has a lineality space")
    order = chosen + rest
    B = [[Fraction(v) for v in r] for r in chosen]
    rays, zsets = [], []
    for k in range(dim):
        rhs = [Fraction(-int(i == k)) for i in range(dim)]
        sol = linalg.solve(B, rhs)
        rays.append(_primitive(sol))
        zsets.append(((1 << dim) - 1) & ~(1 << k))
    for idx in range(dim, len(order)):
        h = order[idx]
        vals = [sum(a * c for a, c in zip(h, r)) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        bit = 1 << idx
        new_rays, new_z = [], []
        for i, v in enumerate(vals):
            if v <= 0:
                new_rays.append(rays[i])
                new_z.append(zsets[i] | (bit if v == 0 else 0))
        if pos and neg:
            need = dim - 2
            for p in pos:
                zp = zsets[p]
                for q in neg:
                    common = zp & zsets[q]
                    if bin(common).count("1") < need:
                        continue
                    if any(o != p and o != q and (zsets[o] & common) == common for o in range(len(rays))):
                        continue
                    vp, vq = vals[p], vals[q]
                    z = tuple(vp * a - vq * c for a, c in zip(rays[q], rays[p]))
                    new_rays.append(_primitive(z))
                    new_z.append(common | bit)
        rays, zsets = new_rays, new_z
    return rays


def _reduce_equalities(A, b, E, e, dim):
    """Parametrize {E x = e} as x0 + N w; returns (x0, N) or None if empty."""
    if not E:
        ident = [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
        return [Fraction(0)] * dim, ident
    x0 = linalg.solve([list(r) for r in E], list(e))
    if x0 is None:
        return None
    N = linalg.nullspace([list(r) for r in E])
    return x0, linalg.transpose(N) if N else [[] for _ in range(dim)]


def vertices(p: PolytopeHRep) -> PolytopeVRep:
    """Vertices of a bounded H-polytope; raises UnboundedInput otherwise."""
    dim = p.dim or (len(p.A[0]) if p.A else len(p.E[0]))
    A = [[Fraction(v) for v in r] for r in p.A]
    b = [Fraction(v) for v in p.b]
    red = _reduce_equalities(A, b, [list(map(Fraction, r)) for r in p.E], [Fraction(v) for v in p.e], dim)
    if red is None:
        return PolytopeVRep(())
    x0, N = red
    k = len(N[0]) if N and N[0] else 0
    if k == 0:
        if all(linalg.dot(r, x0) <= bi for r, bi in zip(A, b)):
            return PolytopeVRep((tuple(x0),))
        return PolytopeVRep(())
    # constraints in w: (A N) w <= b - A x0
    AN = [[sum((r[i] * N[i][j] for i in range(dim)), Fraction(0)) for j in range(k)] for r in A]
    bw = [bi - linalg.dot(r, x0) for r, bi in zip(A, b)]
    hom = [row + [-bi] for row, bi in zip(AN, bw)] + [[Fraction(0)] * k + [Fraction(-1)]]
    if linalg.rank(hom) < k + 1:
        if _feasible(AN, bw, k):
            raise UnboundedInput("polyhedron contains a line")
        return PolytopeVRep(())
    rays = _dd_extreme_rays(hom, k + 1)
    out = []
    seen = set()
    for r in rays:
        t = r[-1]
        if t == 0:
            raise UnboundedInput("polyhedron has a recession direction")
        w = [Fraction(v, t) for v in r[:-1]]
        x = tuple(x0[i] + sum((N[i][j] * w[j] for j in range(k)), Fraction(0)) for i in range(dim))
        if x not in seen:
            seen.add(x)
            out.append(x)
    out.sort()
    return PolytopeVRep(tuple(out))


def _feasible(A, b, k):
    lp = LinearProgram.build(k, A_ub=A, b_ub=b, free="all")
    return lp_solve(lp).status != "infeasible"


def _affine_chart(points):
    """Coordinates on which projection is injective on the affine hull."""
    base = points[0]
    diffs = [[a - c for a, c in zip(p, base)] for p in points[1:]]
    if not diffs:
        return []
    _, piv = linalg.rref(diffs)
    return piv


def extreme_subset(points) -> list:
    """Indices of the points that are vertices of their convex hull."""
    pts = [tuple(map(Fraction, p)) for p in points]
    keep = []
    for i, p in enumerate(pts):
        others = [q for j, q in enumerate(pts) if j != i and q != p]
        dup_before = any(pts[j] == p for j in range(i))
        if dup_before:
            continue
        if not others or in_convex_hull(p, others).status is not Status.TRUE:
            keep.append(i)
    return keep


def facets_with_vertex_counts(p: PolytopeVRep) -> list:
    """Every facet with its incident-vertex count and dimension.

    The polytope is first reduced to its affine hull by coordinate
    projection; facets are then the vertices of the polar body about the
    centroid.
    """
    pts = [p.points[i] for i in extreme_subset(p.points)]
    pts = [tuple(map(Fraction, q)) for q in pts]
    if len(pts) <= 1:
        return []
    chart = _affine_chart(pts)
    r = len(chart)
    proj = [[q[c] for c in chart] for q in pts]
    centre = [sum(col) / len(proj) for col in zip(*proj)]
    shifted = [[a - c for a, c in zip(q, centre)] for q in proj]
    polar = PolytopeHRep(tuple(map(tuple, shifted)), tuple([Fraction(1)] * len(shifted)), dim=r)
    facets = []
    d = len(pts[0])
    for y in vertices(polar).points:
        incident = tuple(i for i, q in enumerate(shifted) if linalg.dot(q, y) == 1)
        normal = [Fraction(0)] * d
        for c, yc in zip(chart, y):
            normal[c] = yc
        offset = 1 + linalg.dot(y, centre)
        dim_f = linalg.affine_rank([pts[i] for i in incident])
        facets.append(Facet(tuple(normal), offset, len(incident), dim_f, tuple(pts[i] for i in incident)))
    return facets


def hrep_from_vertices(p: PolytopeVRep) -> PolytopeHRep:
    pts = [tuple(map(Fraction, q)) for q in p.points]
    d = len(pts[0])
    base = pts[0]
    diffs = [[a - c for a, c in zip(q, base)] for q in pts[1:]]
    E = linalg.nullspace(diffs) if diffs and linalg.rank(diffs) > 0 else \
        [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    E = [tuple(r) for r in E]
    e = tuple(linalg.dot(r, base) for r in E)
    facets = facets_with_vertex_counts(p)
    return PolytopeHRep(tuple(f.normal for f in facets), tuple(f.offset for f in facets), tuple(E), e, d)


# ---------------------------------------------------------------- hull membership

def in_convex_hull(v, points) -> Verdict:
    """Decide v in conv(points); weights when inside, a hyperplane when not."""
    v = [Fraction(x) for x in v]
    k = len(points)
    d = len(v)
    A_eq = [[Fraction(points[i][r]) for i in range(k)] for r in range(d)] + [[Fraction(1)] * k]
    b_eq = v + [Fraction(1)]
    res = lp_solve(LinearProgram.build(k, A_eq=A_eq, b_eq=b_eq))
    if res.status == "optimal":
        weights = {i: w for i, w in enumerate(res.x) if w != 0}
        return Verdict(Status.TRUE, "lp-feasibility", {"weights": weights})
    y = res.farkas_eq
    h = tuple(y[:d])
    # y.A <= 0 and y.b > 0 give h.p <= -y0 < h.v for all points p
    return Verdict(Status.FALSE, "lp-farkas", {"normal": h, "bound": -y[d]})


def in_absolute_hull(v, generators, phases=None) -> Verdict:
    """Membership of v in conv(phases * generators).

    Real data uses phases {+1, -1}.  Complex data is realified and uses the
    given phase grid; a failed complex test only yields Unknown.
    """
    complex_mode = any(isinstance(x, Gaussian) for g in generators for x in g) or \
        any(isinstance(x, Gaussian) for x in v)
    if not complex_mode:
        phases = (Fraction(1), Fraction(-1))
        pts = [tuple(s * Fraction(x) for x in g) for g in generators for s in phases]
        labels = [(s, i) for i in range(len(generators)) for s in phases]
        verdict = in_convex_hull(v, pts)
        if verdict.status is Status.TRUE:
            w = {labels[i]: wt for i, wt in verdict.witness["weights"].items()}
            return Verdict(Status.TRUE, "lp-feasibility", {"weights": w})
        return verdict
    if phases is None:
        phases = phase_grid(64)
    pts, labels = [], []
    for i, g in enumerate(generators):
        for s in phases:
            pts.append(realify([s * Gaussian.lift(x) for x in g]))
            labels.append((s, i))
    verdict = in_convex_hull(realify([Gaussian.lift(x) for x in v]), pts)
    if verdict.status is Status.TRUE:
        w = {labels[i]: wt for i, wt in verdict.witness["weights"].items()}
        return Verdict(Status.TRUE, "phase-grid-lp", {"weights": w})
    return Verdict(Status.UNKNOWN, "phase-grid-lp", reason=f"not in the {len(phases)}-phase inner hull")


def realify(vec) -> tuple:
    vec = [Gaussian.lift(x) for x in vec]
    return tuple([x.re for x in vec] + [x.im for x in vec])


# ---------------------------------------------------------------- phase grids

def pythagorean(q: Fraction) -> Gaussian:
    """The unimodular number ((1 - q^2) + 2qi) / (1 + q^2)."""
    q = Fraction(q)
    d = 1 + q * q
    return Gaussian((1 - q * q) / d, 2 * q / d)


@lru_cache(maxsize=None)
def _octant_point(num: int, den: int, max_den: int = 1 << 16) -> Gaussian:
    """Pythagorean approximation of exp(2 pi i num/den), angle in [0, pi/2)."""
    theta = 2 * math.pi * num / den
    q = Fraction(math.tan(theta / 2)).limit_denominator(max_den)
    return pythagorean(q)


@lru_cache(maxsize=None)
def phase_grid(N: int, max_den: int = 1 << 16) -> tuple:
    """N unimodular Gaussian rationals close to the N-th roots of unity.

    N must be a multiple of 4; the grid is closed under multiplication by
    i and, at the default precision, grids for N and 2N are nested.  A
    small ``max_den`` gives a cruder polygon with cheap arithmetic.
    """
    if N < 4 or N % 4:
        raise ValueError("phase grid size must be a positive multiple of 4")
    quarter = N // 4
    base = []
    for k in range(quarter):
        f = Fraction(k, N)
        base.append(_octant_point(f.numerator, f.denominator, max_den) if k else Gaussian(1))
    out = []
    rot = Gaussian(1)
    for _ in range(4):
        out.extend(rot * z for z in base)
        rot = rot * Gaussian(0, 1)
    return tuple(out)


@lru_cache(maxsize=None)
def grid_inradius(N: int, max_den: int = 1 << 16) -> Fraction:
    """Rational lower bound on the inradius of the grid polygon."""
    grid = phase_grid(N, max_den)
    r2 = min((grid[k] + grid[(k + 1) % N]).norm2() / 4 for k in range(N))
    return sqrt_lower(r2, bits=60)


def sec_pi_over(N: int) -> Fraction:
    """Rational upper bound on sec(pi/N), certified via a cosine lower bound."""
    from mpmath import cos, mp, pi
    with mp.workprec(200):
        c = cos(pi / N)
        lo = Fraction(int(mp.floor(c * 2 ** 120)) - 1, 2 ** 120)
    return 1 / lo
