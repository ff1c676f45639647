"""Exact linear algebra over any field whose elements support + - * /."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations


def dot(u, v):
    total = 0
    for a, b in zip(u, v):
        if a != 0 and b != 0:
            total = total + a * b
    return total


def transpose(M):
    return [list(col) for col in zip(*M)] if M else []


def matvec(M, v):
    return [dot(row, v) for row in M]


def rref(M):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    A = [list(r) for r in M]
    if not A:
        return [], []
    nrows, ncols = len(A), len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c] if not isinstance(A[r][c], int) else Fraction(1, A[r][c])
        A[r] = [x * inv for x in A[r]]
        for i in range(nrows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return A[:r], pivots


def rank(M) -> int:
    return len(rref(M)[1]) if M and M[0] else 0


def nullspace(M, ncols=None):
    """Basis of {v : M v = 0}."""
    if not M:
        if ncols is None:
            raise ValueError("ncols needed for an empty matrix")
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    ncols = len(M[0])
    R, pivots = rref(M)
    zero = M[0][0] * 0
    one = zero + 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * ncols
        v[fc] = one
        for row, pc in zip(R, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def solve(M, b):
    """One solution of M x = b, or None when inconsistent."""
    if not M:
        return None
    aug = [list(r) + [bi] for r, bi in zip(M, b)]
    ncols = len(M[0])
    R, pivots = rref(aug)
    if ncols in pivots:
        return None
    zero = M[0][0] * 0
    x = [zero] * ncols
    for row, pc in zip(R, pivots):
        x[pc] = row[-1]
    return x


def independent(vectors) -> bool:
    return not vectors or rank(vectors) == len(vectors)


def affine_rank(points) -> int:
    """Dimension of the affine hull of a finite point set."""
    if len(points) <= 1:
        return 0
    base = points[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in points[1:]]
    return rank(diffs)


def circuits(vectors):
    """Minimal linearly dependent subsets of ``vectors``.

    Returns a list of (support, coefficients) pairs, with coefficients
    indexed like ``vectors`` and zero off the support.  Each circuit is
    found as the unique (up to scale) dependence vanishing on a set of
    d - 1 indices, where d is the dimension of the dependence space.
    """
    k = len(vectors)
    if k == 0:
        return []
    deps = nullspace(transpose(vectors))
    d = len(deps)
    if d == 0:
        return []
    found = {}
    for zeros in combinations(range(k), d - 1):
        # combinations c with sum_j c_j deps[j][i] = 0 for i in zeros
        if zeros:
            cons = [[deps[j][i] for j in range(d)] for i in zeros]
            sol = nullspace(cons)
        else:
            sol = [[1]]
        if len(sol) != 1:
            continue
        c = sol[0]
        vec = [sum((c[j] * deps[j][i] for j in range(d)), deps[0][i] * 0) for i in range(k)]
        support = frozenset(i for i in range(k) if vec[i] != 0)
        if support in found:
            continue
        found[support] = vec
    minimal = []
    for s, vec in found.items():
        if not any(o < s for o in found):
            lead = next(i for i in sorted(s))
            scale = 1 / vec[lead] if not isinstance(vec[lead], int) else Fraction(1, vec[lead])
            minimal.append((tuple(sorted(s)), [x * scale for x in vec]))
    minimal.sort(key=lambda item: (len(item[0]), item[0]))
    return minimal
