from fractions import Fraction

import mpmath
import pytest

from paratwist.cyclotomic import Cyclotomic
from paratwist.errors import UnsupportedRootOfUnityError, WindowError
from paratwist.forms import delta_qexp
from paratwist.fourier import (
    CoefficientOracle,
    EllipticExpansion,
    SiegelExpansion,
    box_window,
    evaluate,
    is_lattice_index,
    slash_monomial_value,
    slash_numeric,
    support_lattice_check,
    synthetic_single,
)
from paratwist.matgsp import GSpMat, u_mat


def _toy_expansion():
    idxs = box_window(1, 3, 3)
    coeffs = {(1, 1, 1): Fraction(3), (1, 0, 1): Fraction(-2),
              (2, 1, 2): Fraction(5, 7)}
    return SiegelExpansion(10, 1, coeffs, idxs)


def test_lattice_predicate():
    assert is_lattice_index(81, 81, 5, 7)
    assert not is_lattice_index(81, 80, 5, 7)
    assert is_lattice_index(1, 0, 0, 0)


def test_window_semantics():
    f = _toy_expansion()
    assert f.value(1, 1, 1) == 3
    assert f.value(1, 2, 1) == 0            # in window, not stored
    assert f.value(5, 1, 9) is None         # outside window
    assert f.value(1, 5, 1) == 0            # indefinite: known zero
    assert f.value(1, 2, 1) == 0
    with pytest.raises(WindowError):
        f.value_strict(5, 1, 9)


def test_slash_monomial_identity_cases():
    f = _toy_expansion()
    ident_q = ((Fraction(0), Fraction(0)), (Fraction(0), Fraction(0)))
    ident_p = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
    for idx in [(1, 1, 1), (1, 0, 1), (2, 1, 2)]:
        assert slash_monomial_value(f, 10, ident_q, ident_p, 1, *idx) == \
            f.value(*idx)
    # integral shift leaves everything unchanged: tr(TQ) integral
    q_int = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(0)))
    assert slash_monomial_value(f, 10, q_int, ident_p, 1, 1, 1, 1) == 3
    # half shift multiplies by (-1)^n
    q_half = ((Fraction(1, 2), Fraction(0)), (Fraction(0), Fraction(0)))
    assert slash_monomial_value(f, 10, q_half, ident_p, 1, 1, 1, 1,
                                zeta_pe=(2, 1)) == -3
    assert slash_monomial_value(f, 10, q_half, ident_p, 1, 2, 1, 2,
                                zeta_pe=(2, 1)) == Fraction(5, 7)
    with pytest.raises(UnsupportedRootOfUnityError):
        slash_monomial_value(f, 10, q_half, ident_p, 1, 1, 1, 1)


def test_slash_monomial_third_roots():
    f = _toy_expansion()
    q = ((Fraction(1, 3), Fraction(0)), (Fraction(0), Fraction(0)))
    ident_p = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
    v = slash_monomial_value(f, 10, q, ident_p, 1, 1, 1, 1, zeta_pe=(3, 1))
    assert v == Cyclotomic.zeta_power(3, 1, 1) * 3


def test_slash_composition_on_oracle(rng):
    # slash by P1 then P2 equals slash by the product, pulled on an oracle
    src = synthetic_single(4, 1, (2, 1, 3), Fraction(7, 2))
    p1 = ((Fraction(1), Fraction(1)), (Fraction(0), Fraction(1)))
    p2 = ((Fraction(2), Fraction(0)), (Fraction(0), Fraction(1)))
    q0 = ((Fraction(0), Fraction(0)), (Fraction(0), Fraction(0)))
    p12 = ((Fraction(2), Fraction(1)), (Fraction(0), Fraction(1)))
    for idx in [(8, 6, 4), (2, 1, 3), (8, 10, 4)]:
        once = slash_monomial_value(src, 4, q0, p12, 1, *idx)

        class Mid:
            weight, level, cuspidal, zeta_order = 4, 1, False, None

            @staticmethod
            def value(n, r, m):
                return slash_monomial_value(src, 4, q0, p1, 1, n, r, m)

        twice = slash_monomial_value(Mid, 4, q0, p2, 1, *idx)
        assert once == twice


def test_support_lattice_check():
    f = _toy_expansion()
    assert support_lattice_check(f, 1)
    bad = SiegelExpansion(10, 2, {(2, 1, 1): Fraction(1)}, [(2, 1, 1)])
    assert support_lattice_check(bad, 2)
    assert not support_lattice_check(bad, 4)


def test_evaluate_basics():
    empty = SiegelExpansion(10, 1, {}, box_window(1, 2, 2))
    z = ((mpmath.mpc(0, 1), mpmath.mpc(0, 0)), (mpmath.mpc(0, 0), mpmath.mpc(0, 1)))
    val, tail = evaluate(empty, z)
    assert val == 0
    single = SiegelExpansion(10, 1, {(1, 0, 1): Fraction(1)},
                             box_window(1, 2, 2))
    val, tail = evaluate(single, z)
    with mpmath.workdps(30):
        ref = mpmath.exp(-4 * mpmath.pi)
        assert abs(val - ref) < 1e-25
    assert tail < 1e-4


def test_delta_eval_against_eta_product():
    d = delta_qexp(40)
    with mpmath.workdps(30):
        z = mpmath.mpc(0, 1)
        val = d.eval_numeric(z, 30)
        q = mpmath.exp(2j * mpmath.pi * z)
        eta24 = q
        for n in range(1, 200):
            eta24 *= (1 - q ** n) ** 24
        assert abs(val - eta24) < mpmath.mpf(10) ** -10


def test_slash_numeric_consistency():
    f = _toy_expansion()
    z = ((mpmath.mpc(0.1, 0.9), mpmath.mpc(0.02, 0.01)),
         (mpmath.mpc(0.02, 0.01), mpmath.mpc(-0.05, 1.1)))
    ident = GSpMat([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    base, _ = evaluate(f, z)
    via, _ = slash_numeric(f, ident, z)
    assert abs(base - via) < 1e-20
    # integral symmetric shift: invariance by periodicity
    shift = u_mat(1, 0, 2)
    via, _ = slash_numeric(f, shift, z)
    assert abs(base - via) < 1e-18
    # dual path: diag(l,l,1,1) doubles every index, staying on the lattice;
    # the numeric slash and the coefficient route must agree
    g = GSpMat([[2, 0, 0, 0], [0, 2, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    lhs, _ = slash_numeric(f, g, z)
    q0 = ((Fraction(0), Fraction(0)), (Fraction(0), Fraction(0)))
    p2 = ((Fraction(2), Fraction(0)), (Fraction(0), Fraction(2)))
    coeffs = {}
    window = []
    for (n, r, m) in box_window(1, 6, 6, cuspidal=False):
        v = slash_monomial_value(f, 10, q0, p2, 2, n, r, m)
        if v is None:
            continue
        window.append((n, r, m))
        if v:
            coeffs[(n, r, m)] = v
    img = SiegelExpansion(10, 1, coeffs, window, zeta_order=None)
    assert sorted(img.coeffs) == sorted(
        (2 * n, 2 * r, 2 * m) for (n, r, m) in f.coeffs)
    rhs, _ = evaluate(img, z)
    assert abs(lhs - rhs) < 1e-10


def test_elliptic_truncation_guard():
    d = delta_qexp(10)
    with pytest.raises(WindowError):
        d.value(11)
    t = d.hecke_t(2)
    assert t.trunc == 5
    assert t.value(1) == d.value(2)


def test_oracle_window_materialization(lift):
    w = lift.window(3, 3)
    assert support_lattice_check(w, 1)
    assert w.value(1, 1, 1) == 1
    assert (1, 1, 1) in w.complete
    assert w.nonzero()
