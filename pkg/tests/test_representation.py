from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from choquet_lab.boundary import choquet_boundary
from choquet_lab.core import InternalInconsistency, Measure, Status, Verdict, total_variation
from choquet_lab.gallery import (make_full_space, make_hj, make_interval_space, make_porcupine,
                                 make_square_affine, make_sum_relation_space, make_two_point,
                                 random_space, space_from_constraints)
from choquet_lab.representation import (NonUniquenessWitness, annihilator_boundary_basis,
                                        annihilator_verdict, check_lattice, compute_Ac,
                                        condition_report, contains_space, is_functionally_simplicial,
                                        is_l1_predual, is_simplexoid, is_simplicial,
                                        representing_set, representing_vertices, same_span,
                                        unique_member, verify_face_violation, verify_multiple,
                                        verify_nonuniqueness_witness)

import oracles

T, FA, U = Status.TRUE, Status.FALSE, Status.UNKNOWN


def test_interval3_representing_set_at_one():
    space = make_interval_space(3, 4, F(1, 2))
    rs = representing_set(space, space.row("1"))
    assert rs.norm_value == F(1, 2)
    assert unique_member(space, rs) == ("unique", Measure({"0": F(1, 2)}))
    assert representing_vertices(space, "1") == [Measure({"0": F(1, 2)})]


def test_zero_functional_set():
    space = make_square_affine()
    rs = representing_set(space, (F(0),) * 3)
    assert rs.member == Measure({}) and unique_member(space, rs)[0] == "unique"


def test_interval2_set_at_one_has_two_members():
    space = make_interval_space(2, 4, F(-1))
    verts = set(representing_vertices(space, "1"))
    assert {Measure({"1": F(1)}), Measure({"0": F(-1)})} <= verts
    res = unique_member(space, representing_set(space, space.row("1"), True))
    assert res[0] == "multiple" and res[1] != res[2]


def test_simpliciality_examples():
    assert is_simplicial(make_interval_space(1, 4))[0].status is T
    assert is_simplicial(make_interval_space(3, 4, F(1, 2)))[0].status is T
    v, _ = is_simplicial(make_interval_space(2, 4, F(-1)))
    assert v.status is FA
    assert is_simplicial(make_hj(1, 4, F(1, 4), F(1, 2)))[0].status is T


def test_simpliciality_table_carries_certificates(hj_quarter_half):
    v, table = is_simplicial(hj_quarter_half)
    assert v.status is T and set(table) == set(hj_quarter_half.points)
    assert table["(0,0)"]["member"] == Measure({"a": F(1, 4), "b": F(1, 2)})


def test_multiple_witness_verifies():
    space = make_square_affine()
    rep = choquet_boundary(space)
    v, _ = is_simplicial(space, rep)
    w = v.witness
    assert verify_multiple(space, w["point"], w["mu1"], w["mu2"], w["norming"], rep.boundary)
    assert not verify_multiple(space, w["point"], w["mu1"], w["mu1"], w["norming"], rep.boundary)


def test_annihilator_examples(hj_quarter_half):
    assert annihilator_boundary_basis(make_full_space(3)) == []
    basis = annihilator_boundary_basis(hj_quarter_half)
    assert len(basis) == 1
    nu = basis[0]
    expected = Measure({"a": F(1, 4), "b": F(1, 2), "(0,1)": F(-1, 2), "(0,-1)": F(-1, 2)})
    ratio = nu["a"] / expected["a"]
    assert nu == expected.scale(ratio)
    por = make_porcupine(["t1", "t2", "t3"], ["t1"])
    assert annihilator_boundary_basis(por) == []
    assert annihilator_verdict(por).status is T


def test_functional_simpliciality_examples(hj_quarter_half, hj_thirds):
    assert is_functionally_simplicial(hj_quarter_half)[0].status is T
    assert is_functionally_simplicial(make_full_space(3))[0].status is T
    v, w = is_functionally_simplicial(hj_thirds)
    assert v.status is FA and verify_nonuniqueness_witness(hj_thirds, w)
    assert total_variation(w.mu) == F(5, 6) and total_variation(w.mu + w.nu) == F(5, 6)


def _circuit_witness(space, alpha):
    # mu1 = -alpha e_b + e_(0,1)/2 and its partner, normed by f = +-1 on the circuit
    mu = Measure({"b": -alpha, "(0,1)": F(1, 2)})
    nu = Measure({"a": alpha, "b": alpha, "(0,1)": F(-1, 2), "(0,-1)": F(-1, 2)})
    vals = {p: F(0) for p in space.points}
    vals.update({"a": F(1), "b": F(-1), "(0,1)": F(1), "(0,-1)": F(-1)})
    f = tuple(space.coeffs_of([vals[p] for p in space.points]))
    phi = tuple(sum((w * r for w, r in zip((mu[p] for p in space.points), col)), F(0))
                for col in zip(*space.basis))
    return NonUniquenessWitness(mu, nu, f, phi)


def test_circuit_witness_for_equal_coefficients(hj_thirds):
    w = _circuit_witness(hj_thirds, F(1, 3))
    assert verify_nonuniqueness_witness(hj_thirds, w)
    assert total_variation(w.mu) == F(5, 6)
    assert not verify_nonuniqueness_witness(hj_thirds, NonUniquenessWitness(w.mu, Measure({}), w.f, w.phi))
    doubled = tuple(2 * v for v in w.f)
    assert not verify_nonuniqueness_witness(hj_thirds, NonUniquenessWitness(w.mu, w.nu, doubled, w.phi))


def test_sum_relation_space_is_simplicial_but_not_functionally():
    for g in (1, 2):
        space = make_sum_relation_space(g)
        assert space.contains_constants
        assert is_simplicial(space)[0].status is T
        v, w = is_functionally_simplicial(space)
        assert v.status is FA and verify_nonuniqueness_witness(space, w)
    # the functional f(0) + f(1) has two boundary representatives
    space = make_sum_relation_space(1)
    mu = Measure({"0": F(1), "1": F(1)})
    nu = Measure({"0": F(-1), "1": F(-1), "2": F(1), "3": F(1)})
    f = tuple(space.coeffs_of([F(1)] * 4))
    phi = tuple(a + b for a, b in zip(space.row("0"), space.row("1")))
    assert verify_nonuniqueness_witness(space, NonUniquenessWitness(mu, nu, f, phi))


def test_simplexoid_examples(hj_quarter_half):
    assert is_simplexoid(make_full_space(3)).status is T
    sq = make_square_affine()
    v = is_simplexoid(sq)
    assert v.status is FA
    assert verify_face_violation(sq, v.witness, set(choquet_boundary(sq).boundary))
    assert is_simplexoid(hj_quarter_half).status is T


def test_l1_predual_examples(hj_quarter_half):
    assert is_l1_predual(make_two_point()).status is T
    assert is_l1_predual(make_porcupine(["t1", "t2", "t3"], ["t1"])).status is T
    assert is_l1_predual(hj_quarter_half).status is FA


def test_Ac_of_interval1_and_full_space():
    # direct assembly: M_x is the Dirac at x off 0 and M_0 = {0}, so A_c = {f(0) = 0}
    space = make_interval_space(1, 4)
    direct = space_from_constraints("direct", space.points, [[F(1), 0, 0, 0, 0]])
    assert same_span(compute_Ac(space), direct)
    assert compute_Ac(make_full_space(3)).m == 3


def test_Ac_of_hj_on_the_grid(hj_quarter_half):
    # On a finite grid the middle-line average at s = 0 is not forced: the two
    # tips have norm-one midpoint while phi(0,0) has norm 3/4.  Direct assembly
    # keeps every other constraint.
    space = hj_quarter_half
    idx = {p: i for i, p in enumerate(space.points)}
    rows = []
    for s in ("1/2", "1"):
        row = [F(0)] * space.n
        row[idx[f"({s},0)"]] = F(1)
        row[idx[f"({s},-1)"]] = row[idx[f"({s},1)"]] = F(-1, 2)
        rows.append(row)
    row = [F(0)] * space.n
    row[idx["(0,0)"]], row[idx["a"]], row[idx["b"]] = F(1), F(-1, 4), F(-1, 2)
    rows.append(row)
    direct = space_from_constraints("direct", space.points, rows)
    ac = compute_Ac(space)
    assert ac.m == space.m + 1
    assert same_span(ac, direct) and contains_space(ac, space)


def test_condition_reports():
    rep = condition_report(make_hj(1, 4, F(1, 4), F(1, 2)))
    assert rep.statuses() == {"I": T, "II": T, "III": T, "IV": FA, "V": T, "VI": FA}
    rep = condition_report(make_hj(1, 4, F(1, 3), F(1, 3)))
    st_ = rep.statuses()
    assert (st_["I"], st_["II"], st_["III"], st_["IV"], st_["VI"]) == (T, T, FA, FA, FA)
    st_ = condition_report(make_two_point()).statuses()
    assert (st_["I"], st_["V"], st_["VI"]) == (FA, T, T)


def test_lattice_checker_flags_violations():
    v = {c: Verdict(T, "x") for c in ("II",)}
    v["I"] = Verdict(FA, "x")
    assert check_lattice(v) == [(("II",), "I")]


def test_report_raises_on_inconsistency(monkeypatch):
    import choquet_lab.representation as rep_mod
    monkeypatch.setattr(rep_mod, "theta_injective", lambda *a, **k: Verdict(FA, "forced"))
    with pytest.raises(InternalInconsistency):
        condition_report(make_full_space(2))


def test_complex_space_verdicts_are_honest():
    space = random_space(3, 2, 11, "complex")
    rep = condition_report(space)
    assert set(rep.statuses()) == {"I", "II", "III", "IV", "V", "VI"}
    assert rep.statuses()["V"] is U and rep.statuses()["VI"] is U
    assert rep.statuses()["I"] is not U


# ---------------------------------------------------------------- oracle properties

@given(st.integers(0, 10 ** 6), st.sampled_from([(3, 2), (4, 2), (4, 3), (5, 3)]))
def test_simpliciality_matches_basic_solution_oracle(seed, shape):
    space = random_space(*shape, seed)
    rep = choquet_boundary(space)
    unique = all(len(oracles.optimal_basic_measures(space, space.row(x), rep.boundary)) == 1
                 for x in space.points)
    assert is_simplicial(space, rep)[0].status is Status.of(unique)


@given(st.integers(0, 10 ** 6), st.sampled_from([(3, 2), (4, 3), (5, 3), (5, 4)]))
def test_simplexoid_and_predual_match_facet_oracle(seed, shape):
    space = random_space(*shape, seed)
    facets = oracles.dual_ball_facets(space)
    assert is_simplexoid(space).status is Status.of(all(f.is_simplex for f in facets))
    cross = len(facets) == 2 ** space.m and all(f.vertex_count == space.m for f in facets)
    assert is_l1_predual(space).status is Status.of(cross)
