import pytest

from convex_spheres import qsym
from convex_spheres.errors import No0Hat
from convex_spheres.lattice import GradedPoset
from convex_spheres.qsym import FlagQSym, compositions, flag_f, theta_of_poset, verify_main_theorem
from convex_spheres.sphere import build_q_poset


def diamond():
    return GradedPoset([0, 1, 2, 3], [(0, 1), (0, 2), (1, 3), (2, 3)])


def chain(k):
    return GradedPoset(range(k), [(i, i + 1) for i in range(k - 1)])


def test_compositions():
    assert compositions(3) == [(1, 1, 1), (1, 2), (2, 1), (3,)]
    assert compositions(0) == [()]
    assert len(compositions(6)) == 32


def test_refines():
    assert qsym.refines((1, 1, 1), (3,))
    assert qsym.refines((1, 2), (3,))
    assert not qsym.refines((1, 2), (2, 1))
    assert not qsym.refines((3,), (1, 2))
    assert not qsym.refines((1, 1), (3,))


def test_flag_f_of_a_diamond():
    table = flag_f(diamond())
    assert table.degree == 2
    assert table.support() == {(2,): 1, (1, 1): 2}
    assert qsym.top_coefficient(table) == 2


def test_theta_of_a_chain():
    # ν is 2 on every interval of a chain
    table = theta_of_poset(chain(3))
    assert table.support() == {(2,): 2, (1, 1): 4}


def test_flag_needs_bounds():
    with pytest.raises(No0Hat):
        flag_f(GradedPoset("ab", []))


def test_equality_ignores_zero_entries():
    assert FlagQSym(2, {(2,): 1, (1, 1): 0}) == FlagQSym(2, {(2,): 1})
    assert FlagQSym(2, {(2,): 1}) != FlagQSym(2, {(2,): 2})
    assert FlagQSym(2, {(2,): 3, (1, 1): 1}).to_dict() == {"1.1": 1, "2": 3}


def test_main_theorem_on_a_point(single_point):
    report = verify_main_theorem(single_point)
    assert report.passed
    assert report.doubled_flag.support() == {(2,): 2, (1, 1): 4}
    assert report.to_dict()["mismatches"] == []


def test_main_theorem_three_collinear(three_collinear):
    report = verify_main_theorem(three_collinear)
    assert report.passed, report.to_dict()
    assert qsym.top_coefficient(report.doubled_flag) == 2 * 32


def test_main_theorem_holds_on_the_corpus(corpus_geometry):
    report = verify_main_theorem(corpus_geometry)
    assert report.passed, report.to_dict()["mismatches"]


def test_top_flag_counts_maximal_chains(small_geometry):
    q = build_q_poset(small_geometry, orientation="join")
    table = flag_f(q.poset)
    assert qsym.top_coefficient(table) == len(q.poset.proper_part().maximal_chains())
    assert table[(small_geometry.n + 1,)] == 1


def test_flag_coefficients_grow_under_refinement(small_geometry):
    table = flag_f(build_q_poset(small_geometry).poset)
    for finer in compositions(table.degree):
        for coarser in compositions(table.degree):
            if qsym.refines(finer, coarser):
                assert table[finer] >= table[coarser]
