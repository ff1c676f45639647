"""Dual-ball geometry: dual norms, the Choquet boundary and the state space."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import linalg
from .core import (ChoquetLabError, FunctionSpace, Gaussian, RationalInterval,
                   Status, Verdict, abs2, conj)
from .polytope import (LinearProgram, PolytopeVRep, grid_inradius, in_convex_hull, lp_solve,
                       lp_solve_free, phase_grid, realify)

TARGET_WIDTH = Fraction(1, 2 ** 20)
MAX_GRID = 1024
EXPOSURE_GRID = 16
EXPOSURE_DEN = 16
DEFAULT_MARGIN = Fraction(1, 1000)


class UndecidedBoundary(ChoquetLabError):
    pass


class NoConstants(ChoquetLabError):
    pass


# ---------------------------------------------------------------- l1 minimisation

def l1_min(space: FunctionSpace, phi: Sequence, support=None):
    """Exact min of sum |mu_x| over real mu on ``support`` with E^T mu = phi.

    Returns (value, mu as a vector over all points, norming coefficients f)
    where |f| <= 1 on the support and phi(f) = value.
    """
    idx = list(range(space.n)) if support is None else [space.index(p) if isinstance(p, str) else p for p in support]
    k = len(idx)
    A_eq = []
    for j in range(space.m):
        row = []
        for i in idx:
            row.append(space.basis[i][j])
        A_eq.append(row + [-v for v in row])
    res = lp_solve(LinearProgram.build(2 * k, [1] * (2 * k), A_eq=A_eq, b_eq=list(phi)))
    if res.status != "optimal":
        return None
    mu = [Fraction(0)] * space.n
    for t, i in enumerate(idx):
        mu[i] = res.x[t] - res.x[k + t]
    return res.value, mu, tuple(res.y_eq)


def l1_min_phases(space: FunctionSpace, phi: Sequence, N: int, support=None):
    """min of sum w over w >= 0 with sum_x sum_k w_{x,k} omega_k row_x = phi.

    The phases omega_k are the N-point grid; the minimum m_N bounds the
    true complex minimum from above and r_N * m_N from below, where r_N is
    the inradius of the grid polygon.
    """
    grid = phase_grid(N)
    idx = list(range(space.n)) if support is None else [space.index(p) for p in support]
    cols = []
    for i in idx:
        row = [Gaussian.lift(v) for v in space.basis[i]]
        for w in grid:
            cols.append(realify([w * v for v in row]))
    rows = [[c[r] for c in cols] for r in range(2 * space.m)]
    res = lp_solve(LinearProgram.build(len(cols), [1] * len(cols), A_eq=rows,
                                       b_eq=realify([Gaussian.lift(v) for v in phi])))
    if res.status != "optimal":
        return None
    mu = [Gaussian(0)] * space.n
    for t, i in enumerate(idx):
        acc = Gaussian(0)
        for k, w in enumerate(grid):
            x = res.x[t * N + k]
            if x:
                acc = acc + w * x
        mu[i] = acc
    return res.value, mu


def dual_norm(space: FunctionSpace, phi: Sequence, phase_grid_size: int = 64,
              max_grid: int = MAX_GRID, target_width: Fraction = TARGET_WIDTH):
    """Norm of phi in H*: exact in real mode, an enclosure in complex mode."""
    if all(v == 0 for v in phi):
        return Fraction(0) if not space.is_complex else RationalInterval(Fraction(0), Fraction(0))
    if not space.is_complex:
        return l1_min(space, phi)[0]
    return complex_norm_enclosures(space, phi, phase_grid_size, max_grid, target_width)[-1][1]


def complex_norm_enclosures(space, phi, start=64, max_grid=MAX_GRID, target_width=TARGET_WIDTH):
    """Successive (N, enclosure) pairs, each nested in the previous one."""
    out = []
    lo, hi = None, None
    N = start
    while True:
        mN, _ = l1_min_phases(space, phi, N)
        new_lo = mN * grid_inradius(N)
        lo = new_lo if lo is None else max(lo, new_lo)
        hi = mN if hi is None else min(hi, mN)
        enc = RationalInterval(lo, hi)
        out.append((N, enc, mN))
        if enc.width < target_width or N >= max_grid:
            return [(n, e) for n, e, _ in out]
        N *= 2


# ---------------------------------------------------------------- boundary

@dataclass(frozen=True)
class BoundaryReport:
    boundary: tuple
    non_boundary: dict
    norm_one: tuple
    certificates: dict = field(default_factory=dict)
    unknown: tuple = ()
    field: str = "real"
    phase_grid: int | None = None

    @property
    def decided(self) -> bool:
        return not self.unknown

    def to_json(self):
        return {
            "boundary": list(self.boundary),
            "nonBoundary": sorted(self.non_boundary),
            "normOne": list(self.norm_one),
            "unknown": list(self.unknown),
            "nonBoundaryWitnesses": self.non_boundary,
            "boundaryCertificates": self.certificates,
            "phaseGrid": self.phase_grid,
        }


def proportionality(u, v):
    """alpha with v = alpha * u, or None."""
    j = next((i for i, x in enumerate(u) if x != 0), None)
    if j is None:
        return None
    alpha = v[j] / u[j]
    if all(b == alpha * a for a, b in zip(u, v)):
        return alpha
    return None


def _twins(space, x):
    """Points y != x whose row is a unimodular multiple of row_x."""
    rx = space.basis[x]
    out = []
    for y in range(space.n):
        if y == x:
            continue
        a = proportionality(rx, space.basis[y])
        if a is not None and abs2(a) == 1:
            out.append((y, a))
    return out


def choquet_boundary(space: FunctionSpace, phase_grid_size: int = 64) -> BoundaryReport:
    if space.is_complex:
        return _complex_boundary(space, phase_grid_size)
    boundary, norm_one, non_b, certs = [], [], {}, {}
    for x, label in enumerate(space.points):
        rx = space.basis[x]
        zero = all(v == 0 for v in rx)
        pts, tags = [], []
        for y, ry in enumerate(space.basis):
            if y == x:
                continue
            if not zero and ry == tuple(-v for v in rx):
                continue
            for s in (1, -1):
                pts.append(tuple(s * v for v in ry))
                tags.append((s, space.points[y]))
        if not zero:
            pts.append(tuple(-v for v in rx))
            tags.append((-1, label))
        verdict = in_convex_hull(rx, pts) if pts else None
        if verdict is not None and verdict.status is Status.TRUE:
            non_b[label] = {"combination": [
                {"sign": tags[i][0], "point": tags[i][1], "weight": w}
                for i, w in sorted(verdict.witness["weights"].items())]}
            continue
        h = verdict.witness["normal"] if verdict is not None else rx
        scale = linalg.dot(h, rx)
        f = tuple(Fraction(v) / scale for v in h)
        twins = [space.points[y] for y, _ in _twins(space, x)]
        certs[label] = {"f": f, "partner": twins[0] if twins else label}
        boundary.append(label)
    for x, label in enumerate(space.points):
        if label in certs:
            norm_one.append(label)
        elif dual_norm(space, space.basis[x]) == 1:
            norm_one.append(label)
    return BoundaryReport(tuple(boundary), non_b, tuple(norm_one), certs, (), "real", None)


def _complex_boundary(space, N):
    grid = phase_grid(N)
    boundary, non_b, certs, unknown = [], {}, {}, []
    for x, label in enumerate(space.points):
        rx = [Gaussian.lift(v) for v in space.basis[x]]
        twin_idx = {y for y, _ in _twins(space, x)}
        pts, tags = [], []
        for y in range(space.n):
            if y in twin_idx:
                continue
            ry = [Gaussian.lift(v) for v in space.basis[y]]
            for w in grid:
                if y == x and w == 1:
                    continue
                pts.append(realify([w * v for v in ry]))
                tags.append((w, space.points[y]))
        if all(v == 0 for v in rx):
            non_b[label] = {"combination": [], "zeroRow": True}
            continue
        verdict = in_convex_hull(realify(rx), pts)
        if verdict.status is Status.TRUE:
            non_b[label] = {"combination": [
                {"phase": tags[i][0], "point": tags[i][1], "weight": w}
                for i, w in sorted(verdict.witness["weights"].items())]}
            continue
        f = _complex_exposure(space, x)
        if f is not None:
            twins = [space.points[y] for y in sorted(twin_idx)]
            certs[label] = {"f": f, "partner": twins[0] if twins else label}
            boundary.append(label)
        else:
            unknown.append(label)
    return BoundaryReport(tuple(boundary), non_b, tuple(boundary), certs, tuple(unknown), "complex", N)


def _complex_exposure(space, x, margin=None):
    """f with f(x) = 1 and |f(y)| < 1 off the unimodular twins of x.

    Variables are (Re f, Im f, t); each |f(y)| is bounded through an
    inscribed polygon so that any LP solution is a genuine certificate.
    """
    m = space.m
    twin_idx = {y for y, _ in _twins(space, x)}
    polygon = phase_grid(EXPOSURE_GRID, EXPOSURE_DEN)
    r = grid_inradius(EXPOSURE_GRID, EXPOSURE_DEN)
    nv = 2 * m + 1

    def lin(row, w):
        # Re(w * row . f) as a row over (Re f, Im f)
        z = [w * Gaussian.lift(v) for v in row]
        return [v.re for v in z] + [-v.im for v in z]

    rx = space.basis[x]
    A_eq = [lin(rx, Gaussian(1)) + [0], lin(rx, Gaussian(0, -1)) + [0]]
    b_eq = [1, 0]
    A_ub, b_ub = [], []
    for y in range(space.n):
        if y == x or y in twin_idx:
            continue
        for w in polygon:
            A_ub.append(lin(space.basis[y], conj(w)) + [r])
            b_ub.append(r)
    A_ub.append([0] * (2 * m) + [1])
    b_ub.append(1)
    obj = [0] * (2 * m) + [1]
    res = lp_solve_free(LinearProgram.build(nv, obj, "max", A_eq, b_eq, A_ub, b_ub, free="all"))
    if res.status != "optimal" or res.value <= 0:
        return None
    f = tuple(Gaussian(res.x[j], res.x[m + j]) for j in range(m))
    return f if exposure_certificate_holds(space, f, space.points[x]) else None


def exposure_certificate_holds(space, f, a, partner=None) -> bool:
    """f(a) = 1, |f(partner)| = 1 and |f| < 1 everywhere else."""
    vals = space.values(f)
    ia = space.index(a)
    if vals[ia] != 1:
        return False
    exempt = {ia}
    if partner is not None and partner != a:
        ib = space.index(partner)
        if abs2(vals[ib]) != 1:
            return False
        exempt.add(ib)
    else:
        exempt |= {y for y, _ in _twins(space, ia)}
    for y, v in enumerate(vals):
        if y in exempt:
            if abs2(v) != 1:
                return False
        elif abs2(v) >= 1:
            return False
    return True


def non_boundary_witness_holds(space, label, witness) -> bool:
    """Re-check that row_label is a convex combination of other dual-ball points."""
    rx = space.row(label)
    comb = witness.get("combination", [])
    if witness.get("zeroRow"):
        return all(v == 0 for v in rx)
    total = Fraction(0)
    acc = [space.zero()] * space.m
    for term in comb:
        w = Fraction(term["weight"])
        if w < 0:
            return False
        s = term.get("phase", term.get("sign"))
        ry = space.row(term["point"])
        point = tuple(s * v for v in ry)
        if point == tuple(rx):
            return False
        total += w
        acc = [a + w * p for a, p in zip(acc, point)]
    if not comb:
        return all(v == 0 for v in rx) and any(any(v != 0 for v in r) for r in space.basis)
    return total == 1 and all(a == b for a, b in zip(acc, rx))


def require_decided(report: BoundaryReport):
    if report.unknown:
        raise UndecidedBoundary(f"boundary undecided at {list(report.unknown)}")


def theta_injective(space: FunctionSpace, restrict_to_boundary: bool = True,
                    report: BoundaryReport | None = None) -> Verdict:
    """Is x -> phi(x) injective modulo unimodular scalars on the chosen domain?"""
    if restrict_to_boundary:
        report = report or choquet_boundary(space)
        domain = [space.index(p) for p in report.boundary]
    else:
        domain = list(range(space.n))
    for a_pos, x in enumerate(domain):
        for y in domain[a_pos + 1:]:
            alpha = proportionality(space.basis[x], space.basis[y])
            if alpha is not None and abs2(alpha) == 1:
                return Verdict(Status.FALSE, "proportionality-scan",
                               {"x": space.points[x], "y": space.points[y], "alpha": alpha})
    if restrict_to_boundary and report.unknown:
        return Verdict(Status.UNKNOWN, "proportionality-scan",
                       reason="boundary undecided at " + ", ".join(report.unknown))
    return Verdict(Status.TRUE, "proportionality-scan")


def extreme_points_dual(space: FunctionSpace, report: BoundaryReport | None = None) -> list:
    """One representative (label, row) per unimodular class of boundary rows."""
    report = report or choquet_boundary(space)
    require_decided(report)
    reps = []
    for label in report.boundary:
        row = space.row(label)
        if any((a := proportionality(r, row)) is not None and abs2(a) == 1 for _, r in reps):
            continue
        reps.append((label, row))
    return reps


def extbod_witness(space: FunctionSpace, a, b, margin: Fraction = DEFAULT_MARGIN):
    """f in H with f(a) = 1, |f(b)| = 1 and |f| <= 1 - margin elsewhere.

    Returns the basis coefficients of f, or None when no such f exists
    (real mode) or none was found on the phase grid (complex mode).
    """
    if set(space.points) == {a, b}:
        return None
    ia, ib = space.index(a), space.index(b)
    targets = [None] if a == b else ([Fraction(1), Fraction(-1)] if not space.is_complex else list(phase_grid(EXPOSURE_GRID * 4)))
    for target in targets:
        f = _extbod_lp(space, ia, ib, target, Fraction(margin))
        if f is not None:
            return f
    return None


def _extbod_lp(space, ia, ib, target, margin):
    m = space.m
    others = [y for y in range(space.n) if y not in (ia, ib)]
    if not space.is_complex:
        A_eq = [list(space.basis[ia])]
        b_eq = [1]
        if target is not None:
            A_eq.append(list(space.basis[ib]))
            b_eq.append(target)
        A_ub, b_ub = [], []
        for y in others:
            A_ub.append(list(space.basis[y]))
            b_ub.append(1 - margin)
            A_ub.append([-v for v in space.basis[y]])
            b_ub.append(1 - margin)
        res = lp_solve_free(LinearProgram.build(m, None, "min", A_eq, b_eq, A_ub, b_ub, free="all"))
        return tuple(res.x) if res.optimal else None

    def lin(row, w):
        z = [w * Gaussian.lift(v) for v in row]
        return [v.re for v in z] + [-v.im for v in z]

    A_eq = [lin(space.basis[ia], Gaussian(1)), lin(space.basis[ia], Gaussian(0, -1))]
    b_eq = [1, 0]
    if target is not None:
        A_eq += [lin(space.basis[ib], Gaussian(1)), lin(space.basis[ib], Gaussian(0, -1))]
        b_eq += [target.re, target.im]
    polygon = phase_grid(EXPOSURE_GRID, EXPOSURE_DEN)
    r = grid_inradius(EXPOSURE_GRID, EXPOSURE_DEN)
    A_ub, b_ub = [], []
    for y in others:
        for w in polygon:
            A_ub.append(lin(space.basis[y], conj(w)))
            b_ub.append(r * (1 - margin))
    res = lp_solve_free(LinearProgram.build(2 * m, None, "min", A_eq, b_eq, A_ub, b_ub, free="all"))
    if not res.optimal:
        return None
    return tuple(Gaussian(res.x[j], res.x[m + j]) for j in range(m))


# ---------------------------------------------------------------- state space

def realified_space(space: FunctionSpace) -> FunctionSpace:
    """The real space spanned by real and imaginary parts of H."""
    cols = []
    for j in range(space.m):
        col = [Gaussian.lift(r[j]) for r in space.basis]
        cols.append([v.re for v in col])
        cols.append([v.im for v in col])
    R, _ = linalg.rref(cols)
    basis = linalg.transpose(R)
    return FunctionSpace(space.name + "-re", "real", space.points, tuple(map(tuple, basis)))


def state_space(space: FunctionSpace, report: BoundaryReport | None = None):
    """S(H) as a vertex set together with a simplex verdict."""
    if not space.contains_constants:
        raise NoConstants(f"{space.name} does not contain the constants")
    if space.is_complex:
        space = realified_space(space)
        report = None
    report = report or choquet_boundary(space)
    verts = []
    for label in report.boundary:
        row = space.row(label)
        if row not in verts:
            verts.append(row)
    vrep = PolytopeVRep(tuple(verts))
    dim = linalg.affine_rank([list(v) for v in verts])
    simplex = len(verts) == dim + 1
    witness = {"vertexCount": len(verts), "affineDimension": dim}
    return vrep, Verdict(Status.of(simplex), "vertex-count", witness)
