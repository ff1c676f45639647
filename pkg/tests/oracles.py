"""Brute-force oracles that share no code path with the LP-based routines.

They enumerate supports and solve square linear systems, or enumerate
polytope vertices by double description, so they only scale to tiny inputs.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from choquet_lab import linalg
from choquet_lab.polytope import PolytopeHRep, PolytopeVRep, facets_with_vertex_counts, vertices


def _solve_exact(columns, target):
    """Unique x with sum x_i columns_i = target, or None."""
    M = linalg.transpose([list(c) for c in columns])
    if linalg.rank(M) < len(columns):
        return None
    return linalg.solve(M, list(target))


def dual_norm(space, phi) -> Fraction:
    """max phi.c over the vertices of the primal unit ball {c : |E c| <= 1}."""
    rows = [list(r) for r in space.basis]
    A = rows + [[-v for v in r] for r in rows]
    ball = vertices(PolytopeHRep(tuple(map(tuple, A)), tuple([Fraction(1)] * len(A)), dim=space.m))
    return max(linalg.dot(phi, c) for c in ball.points)


def convex_combination(target, points):
    """Carathéodory search: convex weights over at most d+1 points, or None."""
    d = len(target)
    for k in range(1, min(len(points), d + 1) + 1):
        for sub in combinations(range(len(points)), k):
            cols = [list(points[i]) + [Fraction(1)] for i in sub]
            w = _solve_exact(cols, list(target) + [Fraction(1)])
            if w is not None and all(x >= 0 for x in w):
                return dict(zip(sub, w))
    return None


def boundary(space) -> set:
    """row_x is extreme iff it is not a convex combination of -row_x and the +-rows of non-twins."""
    out = set()
    for x in space.points:
        row = space.row(x)
        if all(v == 0 for v in row):
            continue
        anti = tuple(-v for v in row)
        others = [tuple(s * v for v in space.row(y)) for y in space.points for s in (1, -1)
                  if space.row(y) not in (row, anti)]
        others.append(anti)
        if convex_combination(row, others) is None:
            out.add(x)
    return out


def optimal_basic_measures(space, phi, support) -> set:
    """Vertices of the set of minimal-variation representing measures on the support."""
    norm = dual_norm(space, phi)
    found = set()
    if norm == 0:
        return {()}
    for k in range(1, min(len(support), space.m) + 1):
        for sub in combinations(sorted(support), k):
            w = _solve_exact([space.row(x) for x in sub], phi)
            if w is None or sum(abs(v) for v in w) != norm:
                continue
            found.add(tuple(sorted((x, v) for x, v in zip(sub, w) if v != 0)))
    return found


def dual_ball_facets(space):
    """Facets of aco(rows) from the vertex description."""
    pts = []
    for r in space.basis:
        for s in (1, -1):
            p = tuple(s * v for v in r)
            if p not in pts:
                pts.append(p)
    return facets_with_vertex_counts(PolytopeVRep(tuple(pts)))
