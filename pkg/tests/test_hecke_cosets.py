import pytest

from paratwist.groups import in_paramodular_global, in_paramodular_local
from paratwist.hecke_cosets import (
    T1,
    T2,
    bfs_coset_census,
    coset_reps,
    elementary_divisor_valuations,
    expected_count,
    global_reps,
    verify_double_coset_membership,
    verify_left_disjoint,
)
from paratwist.matgsp import GSpMat, J_REAL


def test_counts_match_formulas():
    for ell in (2, 3, 5):
        assert expected_count(T1, ell, 0) == (ell + 1) * (ell ** 2 + 1)
        assert expected_count(T2, ell, 0) == ell * (ell + 1) * (ell ** 2 + 1)
        for r in (1, 2):
            assert expected_count(T1, ell, r) == ell ** 3 + 2 * ell ** 2 + ell
            assert expected_count(T2, ell, r) == ell ** 4 + ell ** 3
    assert len(coset_reps(T1, 2, 0)) == 15
    assert len(coset_reps(T1, 3, 1)) == 48
    assert len(coset_reps(T2, 3, 0)) == 120


def test_multipliers():
    for op, lam in ((T1, 2), (T2, 4)):
        for g in coset_reps(op, 2, 0):
            assert g.multiplier == lam
        for g in coset_reps(op, 2, 1):
            assert g.multiplier == lam


def test_disjointness_and_negative_control():
    rep = verify_left_disjoint(coset_reps(T1, 2, 0), 2, 0)
    assert rep == {"count": 15, "disjoint": True, "violations": []}
    rep = verify_left_disjoint(coset_reps(T2, 2, 1), 2, 1)
    assert rep["count"] == 24 and rep["disjoint"]
    reps = coset_reps(T1, 2, 0)
    rep = verify_left_disjoint(reps + [reps[0]], 2, 0)
    assert not rep["disjoint"]
    assert (0, 15) in rep["violations"] or (15, 0) in rep["violations"]


def test_elementary_divisors():
    assert verify_double_coset_membership(T1, 2)["divisors_ok"]
    assert verify_double_coset_membership(T2, 2)["divisors_ok"]
    diag = GSpMat([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]],
                  J_REAL)
    assert elementary_divisor_valuations(diag, 2) == (0, 0, 1, 1)


def test_census_certifies_completeness():
    assert bfs_coset_census(T1, 2) == 15
    assert bfs_coset_census(T2, 2) == 30


def test_global_reps():
    out = global_reps(T1, 2, 0, level=1)
    assert len(out) == 15
    diag = GSpMat([[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
                  J_REAL)
    expected = diag.inv().scale(2)
    assert expected.entries == tuple(map(tuple, [[1, 0, 0, 0], [0, 1, 0, 0],
                                                 [0, 0, 2, 0], [0, 0, 0, 2]]))
    for g in global_reps(T2, 2, 0):
        assert g.multiplier == 4


def test_r1_reps_local_pattern_scaled():
    # entries of every deeper-level representative stay in the pattern ring
    # allowed by the local subgroup scaled by the core diagonal
    for op in (T1, T2):
        for g in coset_reps(op, 2, 1):
            assert not in_paramodular_local(g, 2, 1, J_REAL)   # lambda not unit
    reps = global_reps(T1, 2, 1)
    for i, g in enumerate(reps):
        for j, h in enumerate(reps):
            if i != j:
                assert not in_paramodular_global(g * h.inv(), 2)


def test_bad_inputs():
    with pytest.raises(ValueError):
        coset_reps("T3", 2, 0)
