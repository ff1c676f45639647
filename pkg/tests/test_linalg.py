from fractions import Fraction as F

from hypothesis import given, strategies as st

from choquet_lab import linalg

entries = st.integers(-3, 3).map(F)


def test_rank_and_nullspace():
    M = [[F(1), F(2), F(3)], [F(2), F(4), F(6)]]
    assert linalg.rank(M) == 1
    ns = linalg.nullspace(M)
    assert len(ns) == 2 and all(linalg.matvec(M, v) == [0, 0] for v in ns)


def test_solve_inconsistent():
    assert linalg.solve([[F(1)], [F(1)]], [F(1), F(2)]) is None
    assert linalg.solve([[F(1), F(1)]], [F(2)]) is not None


def test_circuits_of_a_plane_configuration():
    vecs = [[F(1), F(0)], [F(0), F(1)], [F(1), F(1)]]
    circ = list(linalg.circuits(vecs))
    assert [tuple(sorted(s)) for s, _ in circ] == [(0, 1, 2)]


@given(st.lists(st.lists(entries, min_size=3, max_size=3), min_size=1, max_size=4))
def test_rank_nullity(M):
    assert linalg.rank(M) + len(linalg.nullspace(M)) == 3


@given(st.lists(st.lists(entries, min_size=3, max_size=3), min_size=1, max_size=5))
def test_circuits_are_minimal_dependencies(vecs):
    for support, coeffs in linalg.circuits(vecs):
        sub = [vecs[i] for i in support]
        assert linalg.rank(sub) == len(support) - 1
        # coefficients are indexed like the input and vanish off the support
        combo = [sum((c * v[j] for c, v in zip(coeffs, vecs)), F(0)) for j in range(3)]
        assert combo == [0, 0, 0]
        assert {i for i, c in enumerate(coeffs) if c != 0} == set(support)
