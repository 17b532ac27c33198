from fractions import Fraction

import pytest

from paratwist.characters import excluded_class_provider
from paratwist.errors import ParatwistError
from paratwist.local_identities import (
    depth_stability_check,
    discretize_term,
    domain_mass,
    find_depths,
    term_mass,
    verify_chi_elimination,
    verify_local_identity,
    verify_realization_bridge,
)


def test_measure_bookkeeping():
    # q^3 * (1 - 1/q)^2 for the unit variables, full mass for the others
    assert term_mass("P1", 3) == 27 * Fraction(2, 3) ** 2
    assert domain_mass("frakp", 3) == Fraction(1, 3)
    assert domain_mass("ox_not1", 3) == Fraction(1, 3)
    s = discretize_term("T10", 3)
    # character-weighted sums have zero total mass over full unit ranges
    assert s.total_mass() == 0


def test_depths_verified_and_stable():
    assert find_depths("T10", 3) == {"a": 2, "b": 1}
    assert find_depths("T13", 3)["a"] == 3
    assert depth_stability_check("T9", 3)
    assert depth_stability_check("T13", 3)


def test_coarse_displayed_depth_equals_fine():
    fine = discretize_term("T13", 3, depths={"a": 3, "b": 3, "x": 1},
                           verify=False)
    coarse = discretize_term("T13", 3, depths={"a": 2, "b": 3, "x": 1},
                             verify=False)
    assert fine == coarse


def test_merges_small():
    assert verify_local_identity("merge_eta2tau2", 3)["equal"]
    assert verify_local_identity("merge_eta", 3)["equal"]


def test_chi_eliminations_small():
    for k in (3, 6, 9, 10, 13, 14):
        assert verify_chi_elimination(k, 3)["equal"]
    with pytest.raises(ValueError):
        verify_chi_elimination(1, 3)


def test_bridge_small():
    for i in (3, 9, 10, 13):
        assert verify_realization_bridge(i, 3)["equal"]


def test_lemma44_gated():
    with pytest.raises(ParatwistError):
        verify_local_identity("lemma44", 3)


def test_lemma44_with_derived_class():
    rep = verify_local_identity("lemma44", 3,
                                az_provider=excluded_class_provider(3))
    assert rep["equal"]


def test_right_multiplication_invariance(rng):
    # replacing a witness by witness * kappa leaves the sum unchanged
    from paratwist.cosets import CosetSum
    from paratwist.matgsp import GSpMat, JPRIME_REAL

    base = discretize_term("T9", 3)
    kappas = [
        GSpMat([[1, 0, 1, 2], [0, 1, 3, 1], [0, 0, 1, 0], [0, 0, 0, 1]],
               JPRIME_REAL),
        GSpMat([[1, 2, 0, 0], [0, 1, 0, 0], [0, 0, 1, -2], [0, 0, 0, 1]],
               JPRIME_REAL),
        GSpMat([[1, 0, 0, 0], [0, 1, 0, 0], [0, 5, 1, 0], [0, 0, 0, 1]],
               JPRIME_REAL),
    ]
    twisted = CosetSum(3)
    for key, (w, wit) in base.terms.items():
        g = GSpMat(wit, JPRIME_REAL)
        kappa = rng.choice(kappas)
        twisted.add(w, (g * kappa).entries)
    assert twisted == base
