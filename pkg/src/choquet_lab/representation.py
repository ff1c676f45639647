"""Representing measures and the six simpliciality-type conditions."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from . import linalg
from .boundary import (BoundaryReport, choquet_boundary, dual_norm, extreme_points_dual,
                       l1_min, require_decided, state_space, theta_injective)
from .core import (FunctionSpace, Gaussian, InternalInconsistency, Measure, RationalInterval,
                   Status, Verdict, abs2, conj, pushforward, rational_modulus, total_variation)
from .polytope import (LinearProgram, PolytopeHRep, grid_inradius, lp_solve, lp_solve_free,
                       phase_grid, vertices)

PATTERN_CAP = 3 ** 12
POLYGON = 32
POLYGON_DEN = 64


# ---------------------------------------------------------------- representing sets

@dataclass(frozen=True)
class RepresentingSet:
    functional: tuple
    norm_value: object
    support: tuple
    boundary_only: bool
    member: Measure
    norming: tuple | None = None
    exact: bool = True


def representing_set(space: FunctionSpace, phi: Sequence, boundary_only: bool = False,
                     report: BoundaryReport | None = None) -> RepresentingSet:
    """M_phi (or its boundary-supported part) with one certified member."""
    phi = tuple(phi)
    if boundary_only:
        report = report or choquet_boundary(space)
        require_decided(report)
        support = tuple(report.boundary)
    else:
        support = tuple(space.points)
    if space.is_complex:
        from .boundary import l1_min_phases
        value, mu = l1_min_phases(space, phi, 64, support)
        return RepresentingSet(phi, RationalInterval(value * grid_inradius(64), value), support,
                               boundary_only, Measure.from_vector(space, mu), None, exact=False)
    if all(v == 0 for v in phi):
        return RepresentingSet(phi, Fraction(0), support, boundary_only, Measure({}),
                               tuple([Fraction(0)] * space.m))
    norm = dual_norm(space, phi)
    value, mu, f = l1_min(space, phi, support)
    if value != norm:
        raise InternalInconsistency(f"boundary-supported minimum {value} differs from the norm {norm}")
    return RepresentingSet(phi, norm, support, boundary_only, Measure.from_vector(space, mu), f)


def _member_lp(space, rs: RepresentingSet, objective_index=None, sense="max"):
    idx = [space.index(p) for p in rs.support]
    k = len(idx)
    A_eq = []
    for j in range(space.m):
        row = [space.basis[i][j] for i in idx]
        A_eq.append(row + [-v for v in row])
    A_eq.append([1] * (2 * k))
    b_eq = list(rs.functional) + [rs.norm_value]
    obj = [0] * (2 * k)
    if objective_index is not None:
        obj[objective_index] = 1
        obj[k + objective_index] = -1
    res = lp_solve(LinearProgram.build(2 * k, obj, sense, A_eq, b_eq))
    if not res.optimal:
        raise InternalInconsistency("representing set LP failed")
    mu = [Fraction(0)] * space.n
    for t, i in enumerate(idx):
        mu[i] = res.x[t] - res.x[k + t]
    return res.value, Measure.from_vector(space, mu)


def unique_member(space: FunctionSpace, rs: RepresentingSet):
    """("unique", mu) or ("multiple", mu1, mu2) by coordinate widths."""
    if space.is_complex:
        raise ValueError("unique_member needs a real space")
    rows = [space.row(p) for p in rs.support]
    deps = linalg.nullspace(linalg.transpose([list(r) for r in rows])) if rows else []
    if not deps:
        return ("unique", rs.member)
    movable = sorted({t for d in deps for t, v in enumerate(d) if v != 0})
    base = rs.member
    for t in movable:
        label = rs.support[t]
        for sense in ("max", "min"):
            val, mu = _member_lp(space, rs, t, sense)
            if val != base[label]:
                return ("multiple", base, mu)
    return ("unique", base)


def uniqueness_certificate(space, rs: RepresentingSet, mu: Measure):
    """f in B_H norming mu with |f| < 1 on the support set off supp(mu).

    Together with linear independence of the rows on supp(mu) this proves
    that mu is the only member of the (restricted) representing set.
    """
    supp = [p for p in rs.support if mu[p] != 0]
    rest = [p for p in rs.support if mu[p] == 0]
    m = space.m
    A_eq, b_eq, A_ub, b_ub = [], [], [], []
    for p in supp:
        A_eq.append(list(space.row(p)) + [0])
        b_eq.append(1 if mu[p] > 0 else -1)
    rest_set = set(rest)
    for p in space.points:
        row = list(space.row(p))
        slack = 1 if p in rest_set else 0
        A_ub.append(row + [slack])
        b_ub.append(1)
        A_ub.append([-v for v in row] + [slack])
        b_ub.append(1)
    A_ub.append([0] * m + [1])
    b_ub.append(1)
    res = lp_solve_free(LinearProgram.build(m + 1, [0] * m + [1], "max", A_eq, b_eq, A_ub, b_ub,
                                            free="all"))
    if not res.optimal or (rest and res.value <= 0):
        return None
    return tuple(res.x[:m])


def verify_uniqueness(space, phi, support, mu: Measure, f) -> bool:
    """Exact check of a uniqueness certificate (see uniqueness_certificate)."""
    if tuple(pushforward(mu, space)) != tuple(phi):
        return False
    if not set(mu.support) <= set(support):
        return False
    vals = dict(zip(space.points, space.values(f)))
    if any(abs2(v) > 1 for v in vals.values()):
        return False
    if sum((vals[p] * w for p, w in mu.values.items()), Fraction(0)) != total_variation(mu):
        return False
    if any(abs2(vals[p]) >= 1 for p in support if p not in mu.support):
        return False
    rows = [list(space.row(p)) for p in sorted(mu.support)]
    return linalg.independent(rows)


def is_simplicial(space: FunctionSpace, report: BoundaryReport | None = None):
    """Condition II with a per-point table of unique members."""
    report = report or choquet_boundary(space)
    table = {}
    if space.is_complex:
        if report.unknown:
            return Verdict(Status.UNKNOWN, "boundary-undecided",
                           reason="boundary undecided at " + ", ".join(report.unknown)), table
        theta = theta_injective(space, True, report)
        if theta.status is Status.FALSE:
            w = theta.witness
            mu1 = Measure({w["y"]: Gaussian(1)})
            mu2 = Measure({w["x"]: w["alpha"]})
            return Verdict(Status.FALSE, "unimodular-coincidence",
                           {"point": w["y"], "mu1": mu1, "mu2": mu2}), table
        if not annihilator_boundary_basis(space, report):
            return Verdict(Status.TRUE, "trivial-boundary-annihilator"), table
        return Verdict(Status.UNKNOWN, "complex-undecided",
                       reason="nontrivial boundary annihilator in complex mode"), table
    first_failure = None
    for label in space.points:
        rs = representing_set(space, space.row(label), True, report)
        res = unique_member(space, rs)
        if res[0] == "unique":
            cert = uniqueness_certificate(space, rs, res[1])
            if cert is None or not verify_uniqueness(space, rs.functional, rs.support, res[1], cert):
                raise InternalInconsistency(f"uniqueness at {label} has no dual certificate")
            table[label] = {"status": "unique", "member": res[1], "certificate": cert}
        else:
            _, mu1, mu2 = res
            table[label] = {"status": "multiple", "mu1": mu1, "mu2": mu2, "norming": rs.norming}
            if first_failure is None:
                first_failure = {"point": label, "mu1": mu1, "mu2": mu2, "norming": rs.norming}
    if first_failure is not None:
        return Verdict(Status.FALSE, "coordinate-widths", first_failure), table
    return Verdict(Status.TRUE, "coordinate-widths"), table


def verify_multiple(space, label, mu1: Measure, mu2: Measure, f, boundary) -> bool:
    """Two distinct boundary measures in M_{phi(label)}, normed by one f."""
    phi = tuple(space.row(label))
    if mu1 == mu2:
        return False
    vals = dict(zip(space.points, space.values(f)))
    if any(abs2(v) > 1 for v in vals.values()):
        return False
    for mu in (mu1, mu2):
        if not set(mu.support) <= set(boundary):
            return False
        if tuple(pushforward(mu, space)) != phi:
            return False
        if sum((vals[p] * w for p, w in mu.values.items()), Fraction(0)) != total_variation(mu):
            return False
    return True


# ---------------------------------------------------------------- annihilator

def annihilator_boundary_basis(space: FunctionSpace, report: BoundaryReport | None = None) -> list:
    """Basis of boundary-supported measures that vanish on H."""
    report = report or choquet_boundary(space)
    require_decided(report)
    labels = list(report.boundary)
    if not labels:
        return []
    cols = linalg.transpose([list(space.row(p)) for p in labels])
    return [Measure(dict(zip(labels, v))) for v in linalg.nullspace(cols)]


def annihilator_verdict(space, report=None) -> Verdict:
    report = report or choquet_boundary(space)
    if report.unknown:
        return Verdict(Status.UNKNOWN, "boundary-undecided",
                       reason="boundary undecided at " + ", ".join(report.unknown))
    basis = annihilator_boundary_basis(space, report)
    if basis:
        return Verdict(Status.FALSE, "boundary-kernel", {"measure": basis[0], "dimension": len(basis)})
    return Verdict(Status.TRUE, "boundary-kernel", {"boundaryRank": len(report.boundary)})


# ---------------------------------------------------------------- condition III

@dataclass(frozen=True)
class NonUniquenessWitness:
    mu: Measure
    nu: Measure
    f: tuple
    phi: tuple

    def to_json(self):
        from .core import jsonable
        return {"mu": self.mu.to_json(), "nu": self.nu.to_json(),
                "f": jsonable(self.f), "phi": jsonable(self.phi)}


def verify_nonuniqueness_witness(space: FunctionSpace, w: NonUniquenessWitness,
                                 report: BoundaryReport | None = None) -> bool:
    """Exact check that mu and mu + nu are distinct boundary members of M_phi."""
    if not w.nu.values:
        return False
    report = report or choquet_boundary(space)
    bnd = set(report.boundary)
    second = w.mu + w.nu
    if not (set(w.mu.support) <= bnd and set(second.support) <= bnd):
        return False
    if any(v != 0 for v in pushforward(w.nu, space)):
        return False
    if tuple(pushforward(w.mu, space)) != tuple(w.phi):
        return False
    if len(w.f) != space.m or any(abs2(v) > 1 for v in space.values(w.f)):
        return False
    from .core import integrate
    for mu in (w.mu, second):
        tv = total_variation(mu, space.field)
        if isinstance(tv, RationalInterval):
            return False
        if integrate(w.f, mu, space) != tv:
            return False
    return True


def _fs_pattern_lp(space, fixed: dict):
    """f in B_H with prescribed values at some points (real)."""
    m = space.m
    A_eq = [list(space.row(p)) for p in fixed]
    b_eq = list(fixed.values())
    A_ub, b_ub = [], []
    for p in space.points:
        if p in fixed:
            continue
        row = list(space.row(p))
        A_ub += [row, [-v for v in row]]
        b_ub += [1, 1]
    res = lp_solve_free(LinearProgram.build(m, None, "min", A_eq, b_eq, A_ub, b_ub, free="all"))
    return tuple(res.x) if res.optimal else None


def _fs_pattern_lp_complex(space, fixed: dict):
    """Complex f with fixed values and |f| <= 1 elsewhere via an inscribed polygon."""
    m = space.m
    polygon = phase_grid(POLYGON, POLYGON_DEN)
    r = grid_inradius(POLYGON, POLYGON_DEN)

    def lin(row, w):
        z = [w * Gaussian.lift(v) for v in row]
        return [v.re for v in z] + [-v.im for v in z]

    A_eq, b_eq, A_ub, b_ub = [], [], [], []
    for p, target in fixed.items():
        row = space.row(p)
        A_eq += [lin(row, Gaussian(1)), lin(row, Gaussian(0, -1))]
        b_eq += [target.re, target.im]
    for p in space.points:
        if p in fixed:
            continue
        for w in polygon:
            A_ub.append(lin(space.row(p), conj(w)))
            b_ub.append(r)
    res = lp_solve_free(LinearProgram.build(2 * m, None, "min", A_eq, b_eq, A_ub, b_ub, free="all"))
    if not res.optimal:
        return None
    return tuple(Gaussian(res.x[j], res.x[m + j]) for j in range(m))


def _witness_from_pattern(space, labels, nu_vec, signs, f):
    """Split nu into mu = -nu on misaligned points and mu + nu = nu elsewhere.

    nu is scaled so that the larger of its positive and negative masses is 1
    (real), or its total variation is 2 (complex).
    """
    if space.is_complex:
        t = Fraction(2) / sum(rational_modulus(v) for v in nu_vec)
    else:
        pos = sum((v for v in nu_vec if v > 0), Fraction(0))
        neg = -sum((v for v in nu_vec if v < 0), Fraction(0))
        t = 1 / max(pos, neg)
    nu_vec = [v * t for v in nu_vec]
    nu = Measure(dict(zip(labels, nu_vec)))
    mu = {}
    for p, v, s in zip(labels, nu_vec, signs):
        if v == 0:
            continue
        # f(p) = s * conj(nu(p))/|nu(p)|, so f norms nu at p exactly when s == 1
        if s != 1:
            mu[p] = -v
    mu = Measure(mu)
    return NonUniquenessWitness(mu, nu, tuple(f), tuple(pushforward(mu, space)))


def is_functionally_simplicial(space: FunctionSpace, report: BoundaryReport | None = None,
                               seed: int = 0):
    """Condition III through circuits of the boundary annihilator.

    Two boundary members of one M_phi differ by some nu in the annihilator,
    and a single f in the unit ball norms both; then |f| = 1 on supp(nu).
    Conversely any f in the unit ball unimodular on a circuit C of the
    annihilator, with f = s conj(nu)/|nu| on C, splits nu into two
    representing measures.  Every nonzero annihilator element contains a
    circuit in its support, so scanning circuits and sign vectors decides
    the condition exactly.
    """
    report = report or choquet_boundary(space)
    if report.unknown:
        return Verdict(Status.UNKNOWN, "boundary-undecided",
                       reason="boundary undecided at " + ", ".join(report.unknown)), None
    labels = list(report.boundary)
    rows = [list(space.row(p)) for p in labels]
    circs = linalg.circuits(rows)
    if not circs:
        return Verdict(Status.TRUE, "trivial-boundary-annihilator"), None
    total_patterns = sum(2 ** (len(s) - 1) for s, _ in circs)
    rng = random.Random(seed)
    exhaustive = total_patterns <= PATTERN_CAP
    skipped = False
    for support, coeffs in circs:
        if space.is_complex:
            mods = [rational_modulus(coeffs[i]) for i in support]
            if None in mods:
                skipped = True
                continue
        sign_vectors = product((1, -1), repeat=len(support) - 1)
        if not exhaustive:
            sign_vectors = (tuple(rng.choice((1, -1)) for _ in support[1:]) for _ in range(256))
        for tail in sign_vectors:
            signs = (1,) + tuple(tail)
            fixed = {}
            for i, s in zip(support, signs):
                v = coeffs[i]
                if space.is_complex:
                    fixed[labels[i]] = s * conj(v) / rational_modulus(v)
                else:
                    fixed[labels[i]] = s if v > 0 else -s
            f = _fs_pattern_lp_complex(space, fixed) if space.is_complex else _fs_pattern_lp(space, fixed)
            if f is None:
                continue
            sub_labels = [labels[i] for i in support]
            w = _witness_from_pattern(space, sub_labels, [coeffs[i] for i in support], signs, f)
            if verify_nonuniqueness_witness(space, w, report):
                return Verdict(Status.FALSE, "circuit-sign-patterns", w), w
    if space.is_complex or skipped or not exhaustive:
        return Verdict(Status.UNKNOWN, "circuit-sign-patterns",
                       reason="no witness found; search incomplete in this mode"), None
    return Verdict(Status.TRUE, "circuit-sign-patterns",
                   {"circuits": len(circs), "patterns": total_patterns}), None


# ---------------------------------------------------------------- conditions V and VI

def is_simplexoid(space: FunctionSpace, report: BoundaryReport | None = None) -> Verdict:
    """Condition V: every proper face of the dual ball is a simplex.

    A face fails to be a simplex iff it contains linearly dependent
    vertices (on a face h = 1, linear and affine dependence agree), so it
    is enough to ask, for every circuit of the vertex classes and every
    sign choice, whether some h with |h| <= 1 on the vertices equals 1 on
    the signed circuit.  A basic solution of that LP is a facet normal.
    """
    if space.is_complex:
        return Verdict(Status.UNKNOWN, "complex-unsupported", reason="simplexoid test needs real mode")
    report = report or choquet_boundary(space)
    reps = extreme_points_dual(space, report)
    vecs = [list(r) for _, r in reps]
    m = space.m
    for support, _ in linalg.circuits(vecs):
        for tail in product((1, -1), repeat=len(support) - 1):
            signs = (1,) + tail
            A_eq = [[s * v for v in vecs[i]] for i, s in zip(support, signs)]
            b_eq = [1] * len(support)
            A_ub, b_ub = [], []
            for v in vecs:
                A_ub += [v, [-x for x in v]]
                b_ub += [1, 1]
            res = lp_solve_free(LinearProgram.build(m, None, "min", A_eq, b_eq, A_ub, b_ub, free="all"))
            if not res.optimal:
                continue
            h = res.x
            incident = []
            for (label, r) in reps:
                val = linalg.dot(r, h)
                if val == 1:
                    incident.append((1, label))
                elif val == -1:
                    incident.append((-1, label))
            pts = [[s * v for v in space.row(label)] for s, label in incident]
            dim = linalg.affine_rank(pts)
            return Verdict(Status.FALSE, "face-circuits",
                           {"normal": tuple(h), "incident": incident,
                            "vertexCount": len(incident), "dimension": dim})
    return Verdict(Status.TRUE, "face-circuits", {"vertexClasses": len(reps)})


def verify_face_violation(space, witness, boundary) -> bool:
    """A face {h = 1} of the dual ball holding more than dim + 1 vertices."""
    h = [Fraction(v) for v in witness["normal"]]
    vals = space.values(h)
    if any(abs(v) > 1 for v in vals):
        return False
    pts = []
    for s, label in witness["incident"]:
        if label not in boundary or s * space.value_at(h, label) != 1:
            return False
        pts.append([s * v for v in space.row(label)])
    return len(pts) > linalg.affine_rank(pts) + 1


def is_l1_predual(space: FunctionSpace, report: BoundaryReport | None = None) -> Verdict:
    """Condition VI: the dual ball is a cross-polytope."""
    if space.is_complex:
        return Verdict(Status.UNKNOWN, "complex-unsupported", reason="cross-polytope test needs real mode")
    report = report or choquet_boundary(space)
    reps = extreme_points_dual(space, report)
    vecs = [list(r) for _, r in reps]
    count = 2 * len(reps)
    if count != 2 * space.m:
        return Verdict(Status.FALSE, "cross-polytope", {"vertexCount": count, "expected": 2 * space.m})
    if not linalg.independent(vecs):
        return Verdict(Status.FALSE, "cross-polytope", {"dependent": [label for label, _ in reps]})
    return Verdict(Status.TRUE, "cross-polytope", {"vertexClasses": [label for label, _ in reps]})


# ---------------------------------------------------------------- A_c(H)

def representing_vertices(space: FunctionSpace, label) -> list:
    """Vertex measures of M_{phi(label)} over all of K (real mode)."""
    phi = tuple(space.row(label))
    norm = dual_norm(space, phi)
    if norm == 0:
        return [Measure({})]
    n, m = space.n, space.m
    A = []
    for j in range(m):
        row = [space.basis[i][j] for i in range(n)]
        A.append(row + [-v for v in row])
    A.append([Fraction(1)] * (2 * n))
    b = list(phi) + [norm]
    # grow the set of coordinates that are positive somewhere on the polytope
    nz = 2 * n
    live = set()
    while True:
        obj = [0 if j in live else 1 for j in range(nz)]
        res = lp_solve(LinearProgram.build(nz, obj, "max", A, b))
        if not res.optimal:
            raise InternalInconsistency(f"representing set at {label} is empty")
        if res.value == 0:
            break
        live |= {j for j in range(nz) if res.x[j] > 0}
    live = sorted(live)
    A_live = [[row[j] for j in live] for row in A]
    k = len(live)
    hrep = PolytopeHRep(tuple(tuple(-int(i == j) for j in range(k)) for i in range(k)),
                        tuple([0] * k), tuple(map(tuple, A_live)), tuple(b), k)
    out = []
    for z in vertices(hrep).points:
        mu = [Fraction(0)] * n
        for val, j in zip(z, live):
            if j < n:
                mu[j] += val
            else:
                mu[j - n] -= val
        out.append(Measure.from_vector(space, mu))
    return out


def compute_Ac(space: FunctionSpace) -> FunctionSpace:
    """All f with f(x) equal to its integral against every member of M_x."""
    if space.is_complex:
        raise ValueError("compute_Ac needs a real space")
    cons = []
    for x, label in enumerate(space.points):
        for mu in representing_vertices(space, label):
            row = [Fraction(0)] * space.n
            row[x] += 1
            for p, w in mu.values.items():
                row[space.index(p)] -= w
            if any(row):
                cons.append(row)
    if cons:
        kernel = linalg.nullspace(cons)
    else:
        kernel = [[Fraction(int(i == j)) for i in range(space.n)] for j in range(space.n)]
    basis = linalg.transpose(kernel)
    return FunctionSpace(space.name + "-Ac", "real", space.points, tuple(map(tuple, basis)))


def contains_space(big: FunctionSpace, small: FunctionSpace) -> bool:
    """Every function of ``small`` lies in ``big`` (same points)."""
    joint = [list(ra) + list(rb) for ra, rb in zip(big.basis, small.basis)]
    return big.points == small.points and linalg.rank(joint) == big.m


def same_span(a: FunctionSpace, b: FunctionSpace) -> bool:
    if a.points != b.points or a.m != b.m:
        return False
    joint = [list(ra) + list(rb) for ra, rb in zip(a.basis, b.basis)]
    return linalg.rank(joint) == a.m


# ---------------------------------------------------------------- report

CONDITIONS = ("I", "II", "III", "IV", "V", "VI")
LATTICE = (
    (("II",), "I"),
    (("III",), "II"),
    (("IV",), "III"),
    (("IV",), "VI"),
    (("VI",), "V"),
    (("III",), "V"),
    (("V", "I"), "III"),
    (("VI", "I"), "IV"),
)


@dataclass
class ConditionReport:
    space: FunctionSpace
    boundary: BoundaryReport
    verdicts: dict
    table: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)
    extras: dict = field(default_factory=dict)

    def statuses(self) -> dict:
        return {k: v.status for k, v in self.verdicts.items()}

    def to_json(self):
        from .core import jsonable
        out = {
            "conditions": {k: dict(v.to_json(), seconds=round(self.timing.get(k, 0.0), 6))
                           for k, v in self.verdicts.items()},
            "boundary": jsonable(self.boundary),
            "uniquenessTable": jsonable(self.table),
        }
        if self.extras:
            out["extras"] = jsonable(self.extras)
        return out


def check_lattice(verdicts: dict) -> list:
    """Violated implications among decided verdicts."""
    bad = []
    for premises, concl in LATTICE:
        if concl not in verdicts or any(p not in verdicts for p in premises):
            continue
        if all(verdicts[p].status is Status.TRUE for p in premises) and \
                verdicts[concl].status is Status.FALSE:
            bad.append((premises, concl))
    return bad


def condition_report(space: FunctionSpace, conditions: Sequence = CONDITIONS,
                     phase_grid_size: int = 64, seed: int = 0) -> ConditionReport:
    timing = {}
    t0 = time.perf_counter()
    report = choquet_boundary(space, phase_grid_size)
    timing["boundary"] = time.perf_counter() - t0
    verdicts, table = {}, {}
    runners = {
        "I": lambda: theta_injective(space, True, report),
        "II": lambda: is_simplicial(space, report),
        "III": lambda: is_functionally_simplicial(space, report, seed)[0],
        "IV": lambda: annihilator_verdict(space, report),
        "V": lambda: is_simplexoid(space, report) if not report.unknown else
        Verdict(Status.UNKNOWN, "boundary-undecided"),
        "VI": lambda: is_l1_predual(space, report) if not report.unknown else
        Verdict(Status.UNKNOWN, "boundary-undecided"),
    }
    for c in conditions:
        t = time.perf_counter()
        out = runners[c]()
        if c == "II":
            out, table = out
        verdicts[c] = out
        timing[c] = time.perf_counter() - t
    extras = {}
    if not space.is_complex and not report.unknown and space.contains_constants:
        t = time.perf_counter()
        _, simplex = state_space(space, report)
        extras["stateSpaceSimplex"] = simplex
        timing["stateSpaceSimplex"] = time.perf_counter() - t
    bad = check_lattice(verdicts)
    if bad:
        desc = "; ".join(f"{'&'.join(p)}={[verdicts[x].status.value for x in p]} but "
                         f"{c}={verdicts[c].status.value}" for p, c in bad)
        raise InternalInconsistency(f"implication lattice violated on {space.name}: {desc}")
    return ConditionReport(space, report, verdicts, table, timing, extras)
