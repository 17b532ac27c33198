"""Exact arithmetic in Q(zeta_n) for prime-power n.

Elements are stored on the power basis 1, zeta, ..., zeta^(phi(n)-1) after
reduction by the n-th cyclotomic polynomial.  For n = p^e that polynomial is
1 + x^(p^(e-1)) + x^(2 p^(e-1)) + ... + x^((p-1) p^(e-1)), so reduction from
Z[x]/(x^n - 1) is a single rewrite of the top block of exponents.

Only prime-power orders are supported; that is all the twisting engine needs
(Gauss sums live in Q(zeta_p), exponential weights in Q(zeta_{p^4})).
"""

from __future__ import annotations

from fractions import Fraction

import mpmath


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def phi_prime_power(p: int, e: int) -> int:
    return p ** e - p ** (e - 1)


class Cyclotomic:
    """Element of Q(zeta_n), n = p^e, on the reduced power basis."""

    __slots__ = ("p", "e", "order", "coeffs")

    def __init__(self, p: int, e: int, coeffs):
        if e < 1 or not _is_prime(p):
            raise ValueError(f"order must be a prime power, got p={p}, e={e}")
        self.p = p
        self.e = e
        self.order = p ** e
        deg = phi_prime_power(p, e)
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != deg:
            raise ValueError(f"need {deg} coefficients, got {len(coeffs)}")
        self.coeffs = coeffs

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, p: int, e: int) -> "Cyclotomic":
        return cls(p, e, [0] * phi_prime_power(p, e))

    @classmethod
    def from_rational(cls, p: int, e: int, value) -> "Cyclotomic":
        deg = phi_prime_power(p, e)
        coeffs = [Fraction(value)] + [Fraction(0)] * (deg - 1)
        return cls(p, e, coeffs)

    @classmethod
    def zeta_power(cls, p: int, e: int, exponent: int, scale=1) -> "Cyclotomic":
        """scale * zeta_{p^e}^exponent, reduced."""
        n = p ** e
        vec = {exponent % n: Fraction(scale)}
        return cls(p, e, _reduce_exponent_vector(p, e, vec))

    @classmethod
    def from_exponent_vector(cls, p: int, e: int, vec) -> "Cyclotomic":
        """Sum of c_t * zeta^t for (t -> c_t) in vec (exponents mod p^e)."""
        n = p ** e
        folded: dict[int, Fraction] = {}
        for t, c in vec.items():
            t %= n
            folded[t] = folded.get(t, Fraction(0)) + Fraction(c)
        return cls(p, e, _reduce_exponent_vector(p, e, folded))

    # -- ring operations ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            if (other.p, other.e) != (self.p, self.e):
                raise ValueError(
                    f"mixed cyclotomic orders {other.order} and {self.order}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.from_rational(self.p, self.e, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic(self.p, self.e,
                          [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.p, self.e, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            s = Fraction(other)
            return Cyclotomic(self.p, self.e, [a * s for a in self.coeffs])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        deg = len(self.coeffs)
        prod: dict[int, Fraction] = {}
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                if b == 0:
                    continue
                prod[i + j] = prod.get(i + j, Fraction(0)) + a * b
        _ = deg
        return Cyclotomic(self.p, self.e,
                          _reduce_exponent_vector(self.p, self.e, prod))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers not supported")
        out = Cyclotomic.from_rational(self.p, self.e, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == Fraction(other)
        if isinstance(other, Cyclotomic):
            if (other.p, other.e) != (self.p, self.e):
                # compare through rational parts when both are rational
                if self.is_rational() and other.is_rational():
                    return self.coeffs[0] == other.coeffs[0]
                return False
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.order, self.coeffs))

    def __bool__(self):
        return any(c != 0 for c in self.coeffs)

    # -- structure ---------------------------------------------------------

    def galois(self, j: int) -> "Cyclotomic":
        """Apply zeta -> zeta^j; j must be prime to p."""
        if j % self.p == 0:
            raise ValueError("galois exponent must be a unit")
        vec: dict[int, Fraction] = {}
        for i, a in enumerate(self.coeffs):
            if a != 0:
                t = (i * j) % self.order
                vec[t] = vec.get(t, Fraction(0)) + a
        return Cyclotomic(self.p, self.e,
                          _reduce_exponent_vector(self.p, self.e, vec))

    def conjugate(self) -> "Cyclotomic":
        """Complex conjugation: zeta -> zeta^{-1}."""
        return self.galois(self.order - 1)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coeffs[0]

    def to_mpc(self, dps: int = 30) -> mpmath.mpc:
        with mpmath.workdps(dps):
            zeta = mpmath.expjpi(mpmath.mpf(2) / self.order)
            acc = mpmath.mpc(0)
            for a in reversed(self.coeffs):
                acc = acc * zeta + mpmath.mpf(a.numerator) / a.denominator
            return acc

    def __repr__(self):
        terms = []
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            if i == 0:
                terms.append(str(a))
            else:
                terms.append(f"{a}*z{self.order}^{i}" if a != 1 else f"z{self.order}^{i}")
        return " + ".join(terms) if terms else "0"


def _reduce_exponent_vector(p: int, e: int, vec) -> list[Fraction]:
    """Reduce {exponent mod p^e: coeff} to power-basis coefficients."""
    n = p ** e
    step = p ** (e - 1)          # zeta^((p-1)*step) = -(1 + zeta^step + ...)
    deg = n - step
    out = [Fraction(0)] * deg
    for t, c in vec.items():
        if c == 0:
            continue
        t %= n
        if t < deg:
            out[t] += c
        else:
            r = t - (p - 1) * step
            for j in range(p - 1):
                out[r + j * step] -= c
    return out


def zeta_in_bigger_field(p: int, e_small: int, e_big: int, exponent: int) -> Cyclotomic:
    """zeta_{p^e_small}^exponent as an element of Q(zeta_{p^e_big})."""
    if e_big < e_small:
        raise ValueError("target field too small")
    shift = p ** (e_big - e_small)
    return Cyclotomic.zeta_power(p, e_big, exponent * shift)


def scalar_is_zero(x) -> bool:
    if isinstance(x, Cyclotomic):
        return not bool(x)
    return x == 0


def scalar_eq(a, b) -> bool:
    if isinstance(a, Cyclotomic) or isinstance(b, Cyclotomic):
        if not isinstance(a, Cyclotomic):
            a, b = b, a
        return a == b
    return Fraction(a) == Fraction(b)


def scalar_to_mpc(x, dps: int = 30):
    if isinstance(x, Cyclotomic):
        return x.to_mpc(dps)
    f = Fraction(x)
    with mpmath.workdps(dps):
        return mpmath.mpc(mpmath.mpf(f.numerator) / f.denominator)
