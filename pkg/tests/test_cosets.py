from fractions import Fraction

import pytest

from paratwist.cosets import CosetSum, coset_equal, coset_key, coset_key_int
from paratwist.matgsp import GSpMat, a_mat, eta_prime, mu_mat, tau_prime, u_mat

IDENT = GSpMat([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])


def _integral_unit_elements(rng, count=25):
    gens = [u_mat(1, 0, 2), u_mat(0, 1, 0), a_mat(1, 1, 0, 1),
            a_mat(0, -1, 1, 0), a_mat(1, 0, 2, 1),
            GSpMat([[1, 0, 0, 0], [0, 1, 0, 0], [2, 1, 1, 0], [1, 3, 0, 1]]),
            mu_mat(2), mu_mat(-1)]
    out = []
    for _ in range(count):
        w = IDENT
        for _ in range(rng.randint(1, 5)):
            w = w * rng.choice(gens)
        out.append(w)
    return out


def test_key_invariant_under_right_unit_multiplication(rng):
    p = 3
    bases = [eta_prime(p), tau_prime(p) * u_mat(Fraction(1, 81), 0, 0),
             eta_prime(p) * eta_prime(p) * a_mat(1, Fraction(2, 9), 0, 1)]
    from paratwist.matgsp import padic_val

    for g in bases:
        k0 = coset_key(g.entries, p)
        for kappa in _integral_unit_elements(rng):
            if padic_val(kappa.multiplier, p) != 0:
                continue
            k1 = coset_key((g * kappa).entries, p)
            assert k1 == k0
            assert coset_equal(g, g * kappa, p)


def test_key_separates_cosets():
    p = 3
    assert coset_key(IDENT.entries, p) != coset_key(eta_prime(p).entries, p)
    assert coset_key(eta_prime(p).entries, p) != coset_key(tau_prime(p).entries, p)
    # scalar multiples are distinct cosets
    assert coset_key(IDENT.entries, p) != coset_key(IDENT.scale(p).entries, p)
    assert not coset_equal(IDENT, eta_prime(p), p)


def test_key_matches_pairwise_test(rng):
    p = 3
    pool = [eta_prime(p), tau_prime(p), eta_prime(p) * tau_prime(p),
            u_mat(Fraction(1, 3), 0, 0) * eta_prime(p), IDENT, mu_mat(3)]
    pool = pool + [g * kappa for g in pool
                   for kappa in _integral_unit_elements(rng, 2)]
    for i, g in enumerate(pool):
        for h in pool[i + 1:]:
            same_key = coset_key(g.entries, p) == coset_key(h.entries, p)
            assert same_key == coset_equal(g, h, p)


def test_int_key_agrees_with_fraction_key():
    p = 3
    g = eta_prime(p) * u_mat(Fraction(2, 81), Fraction(1, 9), 1)
    scale = 3 ** 5                      # clears 1/3 * 2/81
    flat = []
    for row in g.entries:
        for x in row:
            y = x * scale
            assert y.denominator == 1
            flat.append(int(y))
    assert coset_key_int(flat, 5, p) == coset_key(g.entries, p)
    assert coset_key_int(flat, 5, p, unimodular=True) == coset_key(g.entries, p)


def test_coset_sum_algebra():
    p = 3
    s = CosetSum(p)
    s.add(Fraction(1, 2), IDENT.entries)
    s.add(Fraction(1, 2), (IDENT * u_mat(1, 2, 3)).entries)   # same coset
    assert len(s) == 1
    assert s.total_mass() == 1
    t = CosetSum(p)
    t.add(1, IDENT.entries)
    assert s == t
    t.add(1, eta_prime(p).entries)
    assert s != t
    wit = s.difference_witnesses(t)
    assert len(wit) == 1
    s.add_sum(t, scale=-1)
    assert len(s) == 1 and s.total_mass() == -1


def test_zero_matrix_rejected():
    with pytest.raises(ValueError):
        coset_key([[0] * 4] * 4, 3)
