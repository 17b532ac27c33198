from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from paratwist.cyclotomic import Cyclotomic, phi_prime_power, zeta_in_bigger_field


def test_reduction_degree():
    z = Cyclotomic.zeta_power(3, 4, 80)
    assert len(z.coeffs) == phi_prime_power(3, 4) == 54
    # zeta^81 = 1
    assert Cyclotomic.zeta_power(3, 4, 81) == 1


def test_zeta3_relation():
    z = Cyclotomic.zeta_power(3, 1, 1)
    assert z * z == Cyclotomic.zeta_power(3, 1, 2)
    assert z * z + z + 1 == 0


def test_arithmetic_and_equality():
    a = Cyclotomic.zeta_power(5, 1, 1) + Fraction(1, 2)
    b = a - Fraction(1, 2)
    assert b == Cyclotomic.zeta_power(5, 1, 1)
    assert a != b
    assert (a - a) == 0


def test_conjugation_exponent_negation():
    z = Cyclotomic.zeta_power(3, 4, 7)
    assert z.conjugate() == Cyclotomic.zeta_power(3, 4, -7)
    assert (z * z.conjugate()) == 1


def test_embedding_smaller_order():
    # zeta_3 inside the order-81 ring: exponent scales by 27
    z3 = zeta_in_bigger_field(3, 1, 4, 1)
    assert z3 == Cyclotomic.zeta_power(3, 4, 27)
    assert z3 ** 3 == 1


def test_numeric_embedding():
    z = Cyclotomic.zeta_power(7, 1, 1)
    val = z.to_mpc(30)
    with mpmath.workdps(30):
        ref = mpmath.expjpi(mpmath.mpf(2) / 7)
        assert abs(val - ref) < mpmath.mpf(10) ** -25


def test_mixed_order_rejected():
    with pytest.raises(ValueError):
        Cyclotomic.zeta_power(3, 1, 1) * Cyclotomic.zeta_power(5, 1, 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 80), st.integers(0, 80))
def test_exponent_addition(a, b):
    za = Cyclotomic.zeta_power(3, 4, a)
    zb = Cyclotomic.zeta_power(3, 4, b)
    assert za * zb == Cyclotomic.zeta_power(3, 4, a + b)


def test_full_period_sums_to_zero():
    total = Cyclotomic.from_exponent_vector(3, 4, {t: 1 for t in range(81)})
    assert total == 0
