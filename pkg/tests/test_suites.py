from fractions import Fraction as F

from choquet_lab import suites
from choquet_lab.core import Gaussian
from choquet_lab.gallery import make_porcupine, make_square_affine, make_sum_relation_space


def test_random_cases_are_deterministic():
    a = [s for s, _ in suites.random_cases(5, 3)]
    b = [s for s, _ in suites.random_cases(5, 3)]
    assert a == b and all(2 <= s.n <= 6 and s.m <= 4 for s in a)


def test_check_space_on_gallery():
    for space in (make_square_affine(), make_porcupine(["t1", "t2"], ["t2"]),
                  make_sum_relation_space(1)):
        assert suites.check_space(space, dirichlet=True) == []


def test_small_random_suite():
    res = suites.random_implication_suite(8, seed=5, dirichlet=True)
    assert res["count"] == 8 and res["violations"] == []


def test_prubeh_expected_strictness():
    assert suites.prubeh_expected_strict(Gaussian(F(3, 5), F(4, 5)), 1, 0)
    assert not suites.prubeh_expected_strict(1, 2, 3)
    assert suites.prubeh_expected_strict(1, 2, 1)
    assert not suites.prubeh_expected_strict(-1, 1, 5)


def test_small_sweeps():
    assert suites.prubeh_sweep(4, 4)["violations"] == []
    assert suites.hustad_suite(40, seed=2)["violations"] == []
    assert suites.complex_sandwich(2, seed=1)["violations"] == []
