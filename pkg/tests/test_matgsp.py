from fractions import Fraction

import pytest

from paratwist.errors import (
    NotSymplecticSimilitudeError,
    RealizationMismatchError,
    SingularMatrixError,
)
from paratwist.matgsp import (
    GSpMat,
    J_REAL,
    JPRIME_MAT,
    JPRIME_REAL,
    a_mat,
    block_upper_decompose,
    convert_realization,
    eta_jprime,
    eta_prime,
    gsp_check,
    mu_mat,
    padic_val,
    t4_jprime,
    tau_jprime,
    tau_prime,
    u_mat,
)


def test_multiplier_examples():
    assert gsp_check([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
                     J_REAL) == 1
    assert gsp_check([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]],
                     J_REAL) == 2
    # the antidiagonal form against itself: transpose is its negative and
    # its square is -1, so the multiplier is 1
    assert gsp_check(JPRIME_MAT, JPRIME_REAL) == 1


def test_gsp_check_errors_distinct():
    with pytest.raises(SingularMatrixError):
        gsp_check([[0] * 4] * 4, J_REAL)
    with pytest.raises(NotSymplecticSimilitudeError):
        gsp_check([[1, 2, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
                  J_REAL)


def test_mul_inverse_examples():
    p = 3
    t4 = t4_jprime(p)
    assert t4 * t4.inv() == GSpMat([[1, 0, 0, 0], [0, 1, 0, 0],
                                    [0, 0, 1, 0], [0, 0, 0, 1]], JPRIME_REAL)
    prod = eta_prime(p) * tau_prime(p)
    assert prod.entries == tuple(map(tuple, [
        [Fraction(1, 3), 0, 0, 0], [0, Fraction(1, 3), 0, 0],
        [0, 0, 3, 0], [0, 0, 0, 3]]))
    # (U(Q) A(P))^-1 = A(P^-1) U(-Q)
    q = u_mat(Fraction(1, 3), 2, Fraction(5, 9))
    a = a_mat(1, Fraction(2, 3), 0, 1)
    lhs = (q * a).inv()
    p_inv = a_mat(1, Fraction(-2, 3), 0, 1)
    rhs = p_inv * u_mat(Fraction(-1, 3), -2, Fraction(-5, 9))
    assert lhs == rhs


def test_realization_mismatch():
    with pytest.raises(RealizationMismatchError):
        eta_jprime(3) * eta_prime(3)


def test_convert_realization():
    p = 5
    assert convert_realization(eta_jprime(p)) == eta_prime(p)
    assert convert_realization(tau_jprime(p)) == tau_prime(p)
    g = t4_jprime(p)
    assert convert_realization(convert_realization(g)) == g
    assert convert_realization(g).multiplier == g.multiplier


def test_multiplier_multiplicative(rng):
    p = 3
    gens = [u_mat(Fraction(1, 3), 1, 2), a_mat(1, 1, 0, 1),
            a_mat(2, 1, 1, 1), mu_mat(5), eta_prime(p), tau_prime(p)]
    for _ in range(60):
        g = rng.choice(gens)
        h = rng.choice(gens)
        assert (g * h).multiplier == g.multiplier * h.multiplier
        assert g.inv().multiplier == 1 / g.multiplier


def test_flipup_identity(rng):
    def two_mul(a, b):
        return [[sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)]
                for i in range(2)]

    for _ in range(100):
        x = Fraction(rng.randint(-40, 40) or 1, rng.randint(1, 12))
        lhs = [[1, 0], [x, 1]]
        xi = 1 / x
        m1 = [[1, xi], [0, 1]]
        m2 = [[-xi, 0], [0, -x]]
        m3 = [[0, 1], [-1, 0]]
        rhs = two_mul(two_mul(m1, m2), two_mul(m3, m1))
        assert [[Fraction(v) for v in row] for row in lhs] == rhs


def test_u_q_needs_symmetric():
    # the constructor only takes (q11, q12, q22); verify a non-symmetric
    # upper block is rejected by the group check instead
    bad = [[1, 0, 1, 2], [0, 1, 3, 4], [0, 0, 1, 0], [0, 0, 0, 1]]
    with pytest.raises(NotSymplecticSimilitudeError):
        gsp_check(bad, J_REAL)
    assert u_mat(1, 2, 4).multiplier == 1
    assert a_mat(2, 1, 7, 4).multiplier == 1


def test_padic_val_examples():
    assert padic_val(Fraction(8, 3), 2) == 3
    assert padic_val(Fraction(8, 3), 3) == -1
    assert padic_val(0, 5) == float("inf")


def test_block_upper_decompose_roundtrip():
    q = (Fraction(1, 3), Fraction(2, 9), Fraction(-1, 3))
    g = u_mat(*q) * a_mat(3, Fraction(1, 3), 0, 1) * mu_mat(2)
    deco = block_upper_decompose(g)
    assert deco is not None
    qm, pm, lam = deco
    assert lam == 2
    assert pm == ((3, Fraction(1, 3)), (0, 1))
    assert qm[0][0] == q[0] and qm[0][1] == q[1] and qm[1][1] == q[2]
    lower = GSpMat([[1, 0, 0, 0], [0, 1, 0, 0], [3, 0, 1, 0], [0, 0, 0, 1]],
                   J_REAL)
    assert block_upper_decompose(lower) is None
