"""Truncated Fourier expansions of degree-2 and degree-1 forms.

Index convention: a coefficient index (n, r, m) stands for the half-integral
matrix T with T11 = n, 2*T12 = r, T22 = m.  Invariance under the unipotent
part of the level-N group forces N | n (the N^-1 slot of the group sits at
entry (1,3)), while r and m are plain integers; "half-integral of level N"
below always means that triple condition.  Positive semidefiniteness reads
4 n m - r^2 >= 0, and cusp forms are supported on the definite part.

A SiegelExpansion stores values only on its `complete` window; outside the
window, indices that violate the lattice or support constraints are known
zeros and everything else is unknown.  Exactness claims are made on windows
only.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath

from .cyclotomic import Cyclotomic, scalar_is_zero, scalar_to_mpc
from .errors import UnsupportedRootOfUnityError, WindowError


def is_lattice_index(level: int, n, r, m) -> bool:
    if n != int(n) or r != int(r) or m != int(m):
        return False
    return int(n) % level == 0


def is_psd(n, r, m) -> bool:
    return n >= 0 and m >= 0 and 4 * n * m - r * r >= 0


class SiegelExpansion:
    """Sparse windowed expansion of a degree-2 form."""

    def __init__(self, weight: int, level: int, coeffs=None, complete=(),
                 cuspidal: bool = True, zeta_order: tuple[int, int] | None = None):
        self.weight = weight
        self.level = level
        self.coeffs: dict = dict(coeffs or {})
        self.complete = frozenset(complete)
        self.cuspidal = cuspidal
        self.zeta_order = zeta_order            # (p, e) or None for rational
        for idx, val in self.coeffs.items():
            if scalar_is_zero(val):
                raise ValueError(f"stored zero at {idx}; store sparsely")
            if idx not in self.complete:
                raise ValueError(f"value stored outside the window: {idx}")

    # -- coefficient access -------------------------------------------------

    def known_zero(self, n: int, r: int, m: int) -> bool:
        if not is_lattice_index(self.level, n, r, m):
            return True
        if not is_psd(n, r, m):
            return True
        if self.cuspidal and 4 * n * m - r * r == 0:
            return True
        return False

    def value(self, n: int, r: int, m: int):
        """Exact coefficient, or None when outside the window and not forced."""
        if self.known_zero(n, r, m):
            return Fraction(0)
        idx = (n, r, m)
        if idx in self.complete:
            return self.coeffs.get(idx, Fraction(0))
        return None

    def value_strict(self, n: int, r: int, m: int):
        v = self.value(n, r, m)
        if v is None:
            raise WindowError(f"coefficient ({n},{r},{m}) not in the window")
        return v

    def support(self):
        return sorted(self.coeffs)

    def nonzero(self) -> bool:
        return bool(self.coeffs)

    # -- simple linear structure ---------------------------------------------

    def scaled(self, s) -> "SiegelExpansion":
        coeffs = {}
        for idx, val in self.coeffs.items():
            nv = val * s if not isinstance(val, Cyclotomic) else val * s
            if not scalar_is_zero(nv):
                coeffs[idx] = nv
        return SiegelExpansion(self.weight, self.level, coeffs, self.complete,
                               self.cuspidal, self.zeta_order)

    def plus(self, other: "SiegelExpansion") -> "SiegelExpansion":
        if (self.weight, self.level) != (other.weight, other.level):
            raise ValueError("weight/level mismatch")
        window = self.complete & other.complete
        coeffs = {}
        for idx in set(self.coeffs) | set(other.coeffs):
            if idx not in window:
                continue
            val = self.coeffs.get(idx, Fraction(0)) + other.coeffs.get(idx, Fraction(0))
            if not scalar_is_zero(val):
                coeffs[idx] = val
        return SiegelExpansion(self.weight, self.level, coeffs, window,
                               self.cuspidal and other.cuspidal, self.zeta_order)


def box_window(level: int, n_max: int, m_max: int, cuspidal: bool = True):
    """All lattice indices with n <= n_max, m <= m_max (definite for cusp)."""
    out = []
    for n in range(0, n_max + 1, level):
        for m in range(0, m_max + 1):
            rr = 4 * n * m
            r0 = int(rr ** 0.5)
            while (r0 + 1) * (r0 + 1) <= rr:
                r0 += 1
            while r0 * r0 > rr:
                r0 -= 1
            for r in range(-r0, r0 + 1):
                if cuspidal and 4 * n * m - r * r <= 0:
                    continue
                if 4 * n * m - r * r < 0:
                    continue
                out.append((n, r, m))
    return out


class CoefficientOracle:
    """Entire coefficient source: value() never returns None.

    Wraps a callable (n, r, m) -> exact scalar, with level/weight metadata;
    used for constructed forms whose every coefficient is computable on
    demand (lifts, exact Hecke images of lifts, synthetic test forms).
    """

    def __init__(self, weight: int, level: int, fn, cuspidal: bool = True,
                 zeta_order=None, name: str = "oracle"):
        self.weight = weight
        self.level = level
        self._fn = fn
        self.cuspidal = cuspidal
        self.zeta_order = zeta_order
        self.name = name
        self._cache: dict = {}

    def known_zero(self, n: int, r: int, m: int) -> bool:
        if not is_lattice_index(self.level, n, r, m):
            return True
        if not is_psd(n, r, m):
            return True
        if self.cuspidal and 4 * n * m - r * r == 0:
            return True
        return False

    def value(self, n: int, r: int, m: int):
        if self.known_zero(n, r, m):
            return Fraction(0)
        key = (n, r, m)
        if key not in self._cache:
            self._cache[key] = self._fn(n, r, m)
        return self._cache[key]

    value_strict = value

    def window(self, n_max: int, m_max: int) -> SiegelExpansion:
        idxs = box_window(self.level, n_max, m_max, self.cuspidal)
        coeffs = {}
        for idx in idxs:
            v = self.value(*idx)
            if not scalar_is_zero(v):
                coeffs[idx] = v
        return SiegelExpansion(self.weight, self.level, coeffs, idxs,
                               self.cuspidal, self.zeta_order)


def synthetic_single(weight: int, level: int, index, value=Fraction(1)):
    """Form-like source equal to `value` at one index and zero elsewhere.

    Not modular; used by the oracle-equality suite, where the operator
    enumeration itself is under test.
    """
    n0, r0, m0 = index

    def fn(n, r, m):
        return value if (n, r, m) == (n0, r0, m0) else Fraction(0)

    src = CoefficientOracle(weight, level, fn, cuspidal=False,
                            name=f"delta@{index}")
    return src


# -- exact slash action of block-upper-triangular monomials -----------------


def slash_monomial_value(source, k: int, q, pmat, lam, n, r, m, zeta_pe=None):
    """Coefficient of F|_k U(Q) A(P) mu(lam) at output index (n, r, m).

    Output index T' receives lam^-k det(P)^k e(tr(T Q)) a(T) from the single
    preimage T = lam * t(P)^-1 T' P^-1.  Returns None when the preimage is
    outside the source window; zeta_pe = (p, e) selects the cyclotomic ring
    for the exponential weight (required when tr(TQ) is not an integer).
    """
    (q11, q12), (_, q22) = q
    (p11, p12), (p21, p22) = pmat
    det = p11 * p22 - p12 * p21
    if det == 0:
        raise ValueError("P must be invertible")
    lam = Fraction(lam)
    # T' as a matrix: [[n, r/2], [r/2, m]]; T = lam * t(P)^-1 T' P^-1
    tp = ((Fraction(n), Fraction(r, 2)), (Fraction(r, 2), Fraction(m)))
    inv = ((p22 / det, -p12 / det), (-p21 / det, p11 / det))
    tinv = ((inv[0][0], inv[1][0]), (inv[0][1], inv[1][1]))
    mid = tuple(
        tuple(sum(tinv[i][a] * tp[a][j] for a in range(2)) for j in range(2))
        for i in range(2)
    )
    tpre = tuple(
        tuple(lam * sum(mid[i][a] * inv[a][j] for a in range(2)) for j in range(2))
        for i in range(2)
    )
    npre, rpre, mpre = tpre[0][0], 2 * tpre[0][1], tpre[1][1]
    if npre.denominator != 1 or rpre.denominator != 1 or mpre.denominator != 1:
        return Fraction(0)
    aval = source.value(int(npre), int(rpre), int(mpre))
    if aval is None:
        return None
    if scalar_is_zero(aval):
        return Fraction(0)
    tr = npre * q11 + rpre * q12 + mpre * q22
    factor = lam ** (-k) * det ** k
    if tr.denominator == 1:
        return aval * factor
    if zeta_pe is None:
        raise UnsupportedRootOfUnityError(
            f"exponential weight with denominator {tr.denominator} "
            "needs a cyclotomic ring")
    p, e = zeta_pe
    scaledexp = tr * p ** e
    if scaledexp.denominator != 1:
        raise UnsupportedRootOfUnityError(
            f"tr(TQ) = {tr} not supported by zeta_{p}^{e}")
    zeta = Cyclotomic.zeta_power(p, e, int(scaledexp))
    return zeta * (aval * factor)


# -- numeric evaluation ------------------------------------------------------


def _lambda_min(y11, y12, y22):
    tr = y11 + y22
    det = y11 * y22 - y12 * y12
    disc = mpmath.sqrt(tr * tr - 4 * det)
    return (tr - disc) / 2


def evaluate(expansion: SiegelExpansion, z, dps: int = 30,
             growth_constant=None):
    """(value, tail_bound) of the expansion at a point of the upper half space.

    z = ((z11, z12), (z12, z22)) complex.  The tail bound uses the heuristic
    coefficient bound |a(T)| <= C max(1, det 2T)^(k/2), with C calibrated
    from the stored coefficients unless supplied; it is an error-control
    estimate for numeric acceptance checks, not a proof.
    """
    with mpmath.workdps(dps):
        z11 = mpmath.mpc(z[0][0])
        z12 = mpmath.mpc(z[0][1])
        z22 = mpmath.mpc(z[1][1])
        y11, y12, y22 = z11.imag, z12.imag, z22.imag
        lam_min = _lambda_min(y11, y12, y22)
        if lam_min <= 0:
            raise ValueError("point is not in the upper half space")
        k = expansion.weight
        total = mpmath.mpc(0)
        cmax = mpmath.mpf(0)
        for (n, r, m), val in expansion.coeffs.items():
            phase = mpmath.expjpi(2 * (n * z11 + r * z12 + m * z22))
            total += scalar_to_mpc(val, dps) * phase
            det2 = max(1, 4 * n * m - r * r)
            cmax = max(cmax, abs(scalar_to_mpc(val, dps)) / mpmath.mpf(det2) ** (k / 2))
        if growth_constant is not None:
            cmax = mpmath.mpf(growth_constant)
        if not expansion.complete:
            return total, mpmath.inf
        n_cap = max(idx[0] for idx in expansion.complete)
        m_cap = max(idx[2] for idx in expansion.complete)
        s0 = min(n_cap + expansion.level, m_cap + 1)
        tail = mpmath.mpf(0)
        s = s0
        while True:
            term = (cmax * (s + 1) * (s + 1)
                    * mpmath.mpf(max(1, s)) ** k
                    * mpmath.exp(-2 * mpmath.pi * lam_min * s))
            tail += term
            s += 1
            if term < mpmath.mpf(10) ** (-dps) and s > s0 + 10:
                break
            if s > s0 + 100000:
                return total, mpmath.inf
        return total, tail


def act_point(gmat, z, dps: int = 30):
    """g<Z> and the automorphy factor det(CZ + D) at Z."""
    with mpmath.workdps(dps):
        e = gmat.entries
        zm = [[mpmath.mpc(z[0][0]), mpmath.mpc(z[0][1])],
              [mpmath.mpc(z[0][1]), mpmath.mpc(z[1][1])]]

        def blk(r0, c0):
            return [[mpmath.mpf(e[r0][c0].numerator) / e[r0][c0].denominator,
                     mpmath.mpf(e[r0][c0 + 1].numerator) / e[r0][c0 + 1].denominator],
                    [mpmath.mpf(e[r0 + 1][c0].numerator) / e[r0 + 1][c0].denominator,
                     mpmath.mpf(e[r0 + 1][c0 + 1].numerator) / e[r0 + 1][c0 + 1].denominator]]

        a, b, c, d = blk(0, 0), blk(0, 2), blk(2, 0), blk(2, 2)

        def mul(x, y):
            return [[x[0][0] * y[0][0] + x[0][1] * y[1][0],
                     x[0][0] * y[0][1] + x[0][1] * y[1][1]],
                    [x[1][0] * y[0][0] + x[1][1] * y[1][0],
                     x[1][0] * y[0][1] + x[1][1] * y[1][1]]]

        def add(x, y):
            return [[x[i][j] + y[i][j] for j in range(2)] for i in range(2)]

        num = add(mul(a, zm), b)
        den = add(mul(c, zm), d)
        det = den[0][0] * den[1][1] - den[0][1] * den[1][0]
        if abs(det) == 0:
            raise ZeroDivisionError("det(CZ+D) vanished")
        deninv = [[den[1][1] / det, -den[0][1] / det],
                  [-den[1][0] / det, den[0][0] / det]]
        img = mul(num, deninv)
        # symmetrize against roundoff
        z12 = (img[0][1] + img[1][0]) / 2
        return ((img[0][0], z12), (z12, img[1][1])), det


def slash_numeric(expansion: SiegelExpansion, gmat, z, dps: int = 30):
    """(F|_k g)(Z) = lam^k det(CZ+D)^-k F(g<Z>), with the tail bound at g<Z>."""
    with mpmath.workdps(dps):
        img, det = act_point(gmat, z, dps)
        val, tail = evaluate(expansion, img, dps)
        lam = mpmath.mpf(gmat.multiplier.numerator) / gmat.multiplier.denominator
        k = expansion.weight
        factor = lam ** k * det ** (-k)
        return factor * val, abs(factor) * tail


def evaluate_fast(expansion: SiegelExpansion, z) -> complex:
    """Float evaluation via vectorized summation; no tail bound.

    Bulk numeric workhorse for large windows (the exact evaluator with its
    tail estimate stays the reference for tolerance-bearing claims).
    """
    import numpy as np

    if not expansion.coeffs:
        return 0j
    idx = np.array(list(expansion.coeffs.keys()), dtype=np.float64)
    vals = np.array([complex(scalar_to_mpc(v, 20))
                     for v in expansion.coeffs.values()], dtype=np.complex128)
    z11, z12, z22 = complex(z[0][0]), complex(z[0][1]), complex(z[1][1])
    phases = np.exp(2j * np.pi * (idx[:, 0] * z11 + idx[:, 1] * z12
                                  + idx[:, 2] * z22))
    return complex(np.dot(vals, phases))


def slash_numeric_fast(expansion: SiegelExpansion, gmat, z) -> complex:
    """Float slash evaluation with the same action as slash_numeric."""
    img, det = act_point(gmat, z, 20)
    lam = float(gmat.multiplier)
    k = expansion.weight
    return (lam ** k * complex(det) ** (-k)
            * evaluate_fast(expansion, ((complex(img[0][0]), complex(img[0][1])),
                                        (complex(img[0][1]), complex(img[1][1])))))


def support_lattice_check(expansion: SiegelExpansion, level: int) -> bool:
    """Every nonzero coefficient index is half-integral of the given level."""
    return all(
        is_lattice_index(level, n, r, m) for (n, r, m) in expansion.coeffs
    )


# -- degree 1 ----------------------------------------------------------------


class EllipticExpansion:
    """q-expansion of a degree-1 cusp form, truncated at q^trunc."""

    def __init__(self, weight: int, level: int, coeffs: dict, trunc: int,
                 zeta_order=None):
        self.weight = weight
        self.level = level
        self.trunc = trunc
        self.coeffs = {n: v for n, v in coeffs.items()
                       if not scalar_is_zero(v)}
        self.zeta_order = zeta_order
        if any(n < 1 or n > trunc for n in self.coeffs):
            raise ValueError("coefficient outside the truncation range")

    def value(self, n: int):
        if n < 1:
            return Fraction(0)
        if n > self.trunc:
            raise WindowError(f"coefficient {n} beyond truncation {self.trunc}")
        return self.coeffs.get(n, Fraction(0))

    def eval_numeric(self, z, dps: int = 30):
        with mpmath.workdps(dps):
            zc = mpmath.mpc(z)
            total = mpmath.mpc(0)
            for n, v in sorted(self.coeffs.items()):
                total += scalar_to_mpc(v, dps) * mpmath.expjpi(2 * n * zc)
            return total

    def hecke_t(self, ell: int) -> "EllipticExpansion":
        """T(ell) for ell prime to the level: b_n = a(ell n) + ell^(k-1) a(n/ell)."""
        if self.level % ell == 0:
            raise ValueError("T(ell) here needs ell prime to the level")
        new_trunc = self.trunc // ell
        out = {}
        for n in range(1, new_trunc + 1):
            v = self.value(ell * n)
            if n % ell == 0:
                v = v + Fraction(ell) ** (self.weight - 1) * self.value(n // ell)
            if not scalar_is_zero(v):
                out[n] = v
        return EllipticExpansion(self.weight, self.level, out, new_trunc,
                                 self.zeta_order)
