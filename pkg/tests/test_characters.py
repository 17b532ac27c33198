from fractions import Fraction

import pytest

from paratwist.characters import (
    char_value,
    excluded_class_provider,
    gauss_sum,
    hecke_factorization,
    kronecker_symbol,
    local_char_values,
    verify_reparam_bijection,
)
from paratwist.cyclotomic import Cyclotomic
from paratwist.errors import LevelError


def test_char_value_examples():
    assert char_value(3, 1) == 1
    assert char_value(3, 2) == -1
    assert char_value(5, 4) == 1
    assert char_value(5, 10) == 0
    with pytest.raises(LevelError):
        char_value(2, 1)


def test_char_multiplicative_exhaustive():
    for p in (3, 5, 7, 11, 13):
        for u in range(1, p):
            for v in range(1, p):
                assert char_value(p, u * v) == char_value(p, u) * char_value(p, v)


def test_gauss_sum_small():
    w3 = gauss_sum(3)
    assert w3 == Cyclotomic.zeta_power(3, 1, 1) - Cyclotomic.zeta_power(3, 1, 2)
    w5 = gauss_sum(5)
    expect = (Cyclotomic.zeta_power(5, 1, 1) - Cyclotomic.zeta_power(5, 1, 2)
              - Cyclotomic.zeta_power(5, 1, 3) + Cyclotomic.zeta_power(5, 1, 4))
    assert w5 == expect


def test_gauss_sum_square_law():
    for p in (3, 5, 7):
        w = gauss_sum(p)
        assert w * w == char_value(p, p - 1) * p
        assert w * w.conjugate() == p


def test_hecke_factorization_examples():
    assert hecke_factorization(3, 2) == [-1]
    assert hecke_factorization(15, 2) == [-1, -1]       # product chi(2) = 1
    vals = local_char_values(15, 2)
    assert vals == {3: -1, 5: -1}
    assert hecke_factorization(15, 16) == [1, 1]


def test_hecke_factorization_random(rng):
    for _ in range(1000):
        modulus = rng.choice([3, 5, 7, 15, 21, 35, 105])
        a = rng.randrange(1, 4 * modulus)
        import math
        if math.gcd(a, modulus) != 1:
            continue
        prod = 1
        for v in hecke_factorization(modulus, a):
            prod *= v
        direct = 1
        for factor in local_char_values(modulus, a):
            direct *= char_value(factor, a)
        assert prod == direct


def test_kronecker_basic():
    # (d|.) periodic and matching Legendre on odd primes
    for p in (3, 5, 7, 11):
        for a in range(1, p):
            assert kronecker_symbol(a, p) == char_value(p, a)
    assert kronecker_symbol(-3, 2) == -1   # -3 = 5 mod 8
    assert kronecker_symbol(-4, 3) == kronecker_symbol(-1, 3) * 1


def test_reparam_bijection_and_negative_control():
    res = verify_reparam_bijection(3, exp=3)
    assert res and all(v["bijective"] for v in res.values())
    # each admissible class excludes exactly one residue class mod p
    for v in res.values():
        assert len(v["excluded_classes_mod_p"]) == 1
    # wrong-sign control: w -> (z^-1 + 1)(w^-1 - 1)^-1 leaves the units
    m = 27
    z = 2
    zp1 = (pow(z, -1, m) + 1) % m
    escaped = False
    for w in range(m):
        if w % 3 in (0, 1):
            continue
        t = (pow(w, -1, m) - 1) % m
        x = zp1 * pow(t, -1, m) % m
        if x % 3 == 0:
            escaped = True
    assert escaped


def test_excluded_class_provider_matches_image():
    p = 3
    provider = excluded_class_provider(p)
    res = verify_reparam_bijection(p, exp=2)
    for z, info in res.items():
        classes = provider(z % 9 if z % 9 else z, 9)
        assert {u % p for u in classes} == set(info["excluded_classes_mod_p"])
