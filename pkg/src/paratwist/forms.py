"""Construction of concrete test forms, and expansion file ingestion.

Everything in this module is an external oracle relative to the twisting
machinery: eta products, Jacobi Eisenstein data through exact L-values,
the weight-10 index-1 Jacobi cusp form, and the additive lift that turns
its coefficient table into a degree-2 expansion.  The lift is exposed as a
lazily evaluated coefficient oracle, since the twisting engine pulls
coefficients at scattered indices with bounded discriminant.
"""

from __future__ import annotations

import gzip
import json
import os
from fractions import Fraction

from .characters import kronecker_symbol
from .cyclotomic import Cyclotomic
from .errors import ParatwistError
from .fourier import CoefficientOracle, EllipticExpansion, SiegelExpansion

_BERNOULLI = {2: Fraction(1, 6), 4: Fraction(-1, 30), 6: Fraction(1, 42),
              8: Fraction(-1, 30), 10: Fraction(5, 66)}


def eta_power_series(exponent: int, trunc: int) -> list[int]:
    """Coefficients of prod (1 - q^n)^exponent up to q^trunc, exact.

    Repeated multiplication by the sparse pentagonal-number series.
    """
    pent = [(0, 1)]
    k = 1
    while True:
        n1 = k * (3 * k - 1) // 2
        n2 = k * (3 * k + 1) // 2
        if n1 > trunc and n2 > trunc:
            break
        s = -1 if k % 2 else 1
        if n1 <= trunc:
            pent.append((n1, s))
        if n2 <= trunc:
            pent.append((n2, s))
        k += 1
    out = [0] * (trunc + 1)
    out[0] = 1
    for _ in range(exponent):
        new = [0] * (trunc + 1)
        for n, s in pent:
            for m in range(0, trunc + 1 - n):
                if out[m]:
                    new[n + m] += s * out[m]
        out = new
    return out


def delta_qexp(trunc: int) -> EllipticExpansion:
    """q prod (1-q^n)^24 up to q^trunc."""
    e24 = eta_power_series(24, trunc)
    coeffs = {n: Fraction(e24[n - 1]) for n in range(1, trunc + 1)
              if e24[n - 1]}
    return EllipticExpansion(12, 1, coeffs, trunc)


def _sigma(k: int, n: int) -> int:
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d ** k
            if d != n // d:
                total += (n // d) ** k
        d += 1
    return total


def eisenstein_qexp(k: int, trunc: int) -> list[Fraction]:
    """E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n; exact, k in {4, 6}."""
    factor = -Fraction(2 * k) / _BERNOULLI[k]
    out = [Fraction(1)] + [factor * _sigma(k - 1, n) for n in range(1, trunc + 1)]
    return out


def is_fundamental_discriminant(d: int) -> bool:
    if d == 1:
        return True
    if d % 4 == 1:
        return _squarefree(abs(d))
    if d % 4 == 0:
        q = d // 4
        return q % 4 in (2, 3) and _squarefree(abs(q))
    return False


def _squarefree(n: int) -> bool:
    f = 2
    while f * f <= n:
        if n % (f * f) == 0:
            return False
        f += 1
    return True


_SPF_SIEVE: list[int] = [0, 1]


def _spf(limit: int) -> list[int]:
    """Smallest-prime-factor sieve, grown on demand."""
    global _SPF_SIEVE
    if len(_SPF_SIEVE) <= limit:
        size = max(limit + 1, 2 * len(_SPF_SIEVE))
        spf = list(range(size))
        for i in range(2, int(size ** 0.5) + 1):
            if spf[i] == i:
                for j in range(i * i, size, i):
                    if spf[j] == j:
                        spf[j] = i
        _SPF_SIEVE = spf
    return _SPF_SIEVE


def _character_values(d0: int, t: int) -> list[int]:
    """kronecker(d0, a) for a = 0..t via complete multiplicativity."""
    spf = _spf(t)
    chi = [0] * (t + 1)
    if t >= 1:
        chi[1] = 1
    prime_cache: dict[int, int] = {}
    for a in range(2, t + 1):
        q = spf[a]
        if q == a:
            val = prime_cache.get(q)
            if val is None:
                val = kronecker_symbol(d0, q)
                prime_cache[q] = val
            chi[a] = val
        else:
            chi[a] = chi[q] * chi[a // q]
    return chi


def _generalized_bernoulli(r: int, d0: int) -> Fraction:
    """B_{r, chi} for the quadratic character of fundamental discriminant d0."""
    t = abs(d0)
    chi = _character_values(d0, t)
    if r == 3:
        # 2 t B = sum chi(a) (2 a^3 - 3 t a^2 + t^2 a)
        s = 0
        tt = t * t
        for a in range(1, t + 1):
            c = chi[a]
            if c:
                aa = a * a
                s += c * (2 * aa * a - 3 * t * aa + tt * a)
        return Fraction(s, 2 * t)
    if r == 5:
        # 6 t B = sum chi(a) a (6 a^4 - 15 t a^3 + 10 t^2 a^2 - t^4)
        s = 0
        t2 = t * t
        t4 = t2 * t2
        for a in range(1, t + 1):
            c = chi[a]
            if c:
                a2 = a * a
                a4 = a2 * a2
                s += c * a * (6 * a4 - 15 * t * a2 * a + 10 * t2 * a2 - t4)
        return Fraction(s, 6 * t)
    raise ValueError(r)


def _moebius(n: int) -> int:
    out, f = 1, 2
    while f * f <= n:
        if n % f == 0:
            n //= f
            if n % f == 0:
                return 0
            out = -out
        f += 1
    if n > 1:
        out = -out
    return out


def cohen_value(r: int, n: int) -> Fraction:
    """The weight-(r + 1/2) Eisenstein coefficient function H(r, N), exact.

    H(r, 0) = zeta(1 - 2r); for N > 0 with (-1)^r N = D0 f^2 (D0 a
    fundamental discriminant) it is L(1-r, chi_D0) times a divisor sum, and
    0 unless (-1)^r N is 0 or 1 mod 4.
    """
    if n == 0:
        return -_BERNOULLI[2 * r] / (2 * r)
    if n < 0:
        return Fraction(0)
    d = (-1) ** r * n
    if d % 4 not in (0, 1):
        return Fraction(0)
    f = 1
    d0 = None
    best_f = None
    while f * f <= abs(d):
        if d % (f * f) == 0 and is_fundamental_discriminant(d // (f * f)):
            cand = d // (f * f)
            if best_f is None or f > best_f:
                d0, best_f = cand, f
        f += 1
    if d0 is None:
        raise ParatwistError(f"no fundamental part for {d}")
    fval = best_f
    lvalue = -_generalized_bernoulli(r, d0) / r
    total = Fraction(0)
    for dd in range(1, fval + 1):
        if fval % dd == 0:
            mu = _moebius(dd)
            if mu:
                total += (mu * kronecker_symbol(d0, dd) * dd ** (r - 1)
                          * _sigma(2 * r - 1, fval // dd))
    return lvalue * total


# zeta(1 - 2(k-1)) = H(k-1, 0): the constant-term normalizer per weight
_ZETA_NORM = {4: Fraction(-1, 252), 6: Fraction(-1, 132)}


def jacobi_eisenstein_value(k: int, disc: int) -> Fraction:
    """e_{k,1}(n, r) as a function of 4n - r^2, for k in {4, 6}."""
    if k not in _ZETA_NORM:
        raise ValueError("index-1 Eisenstein data available for k in {4, 6}")
    if disc < 0:
        return Fraction(0)
    return cohen_value(k - 1, disc) / _ZETA_NORM[k]


def jacobi_eisenstein_table(k: int, max_disc: int) -> dict[int, int]:
    out = {}
    for disc in range(0, max_disc + 1):
        if disc % 4 in (0, 3):
            v = jacobi_eisenstein_value(k, disc)
            if v.denominator != 1:
                raise ParatwistError(f"non-integral Eisenstein value at {disc}")
            out[disc] = int(v)
    return out


def phi10_table(max_disc: int) -> dict[int, int]:
    """c(4n - r^2) of the weight-10 index-1 Jacobi cusp form.

    Built from (E6 * E_{4,1} - E4 * E_{6,1}) / 144; every value must come
    out an integer, which is asserted.
    """
    n_max = (max_disc + 1) // 4 + 1
    e4 = [int(x) for x in eisenstein_qexp(4, n_max)]
    e6 = [int(x) for x in eisenstein_qexp(6, n_max)]
    j4 = jacobi_eisenstein_table(4, max_disc + 4 * n_max + 4)
    j6 = jacobi_eisenstein_table(6, max_disc + 4 * n_max + 4)
    out = {}
    for disc in range(1, max_disc + 1):
        if disc % 4 not in (0, 3):
            continue
        r = 0 if disc % 4 == 0 else 1
        n = (disc + r * r) // 4
        total = 0
        for j in range(0, n + 1):
            d2 = disc - 4 * j
            if d2 < 0:
                break
            total += e6[j] * j4.get(d2, 0) - e4[j] * j6.get(d2, 0)
        if total % 144:
            raise ParatwistError(f"phi10 value not integral at disc {disc}")
        out[disc] = total // 144
    return out


def phi10_eta_theta_table(max_disc: int) -> dict[int, int]:
    """Independent construction of the same table via the eta-theta product.

    The square of the odd Jacobi theta function times the 18th power of the
    eta series is the unique cusp form in this space; the normalization is
    matched on c(3) = c(1, 1) = 1.
    """
    n_max = (max_disc + 3) // 4 + 2
    eta18 = eta_power_series(18, n_max + 2)
    # theta^2 = sum over (mu, nu) of (-1)^(mu+nu) q^(T(mu)+T(nu)+1/4) z^(mu+nu+1)
    # with T(x) = x(x+1)/2; the eta power contributes q^(3/4 + j).
    coeff: dict[tuple[int, int], int] = {}
    bound = n_max + 2
    mus = []
    mu = 0
    while mu * (mu + 1) // 2 <= bound:
        mus.append(mu)
        mu += 1
    mus = [-m - 1 for m in mus] + mus
    for m1 in mus:
        for m2 in mus:
            qexp2 = m1 * (m1 + 1) // 2 + m2 * (m2 + 1) // 2
            if qexp2 > bound:
                continue
            zexp = m1 + m2 + 1
            if zexp not in (0, 1):          # one (n, r) reader per disc class
                continue
            sgn = -1 if (m1 + m2) % 2 else 1
            for j in range(0, bound - qexp2):
                if eta18[j]:
                    n = qexp2 + j + 1
                    key = (n, zexp)
                    coeff[key] = coeff.get(key, 0) + sgn * eta18[j]
    table: dict[int, int] = {}
    for (n, zexp), val in coeff.items():
        disc = 4 * n - zexp * zexp
        if 0 < disc <= max_disc and val:
            table[disc] = val
    if table.get(3, 0) == 0:
        raise ParatwistError("eta-theta normalization pin failed")
    if table[3] < 0:
        table = {k: -v for k, v in table.items()}
    assert table[3] == 1
    return table


# -- packaged coefficient table ------------------------------------------------

_DATA_PATH = os.path.join(os.path.dirname(__file__), "data", "phi10_c.json.gz")
_PHI10_CACHE: dict[int, int] | None = None


def phi10_coefficients(max_disc: int | None = None) -> dict[int, int]:
    """The packaged phi10 table, or a freshly generated one when absent."""
    global _PHI10_CACHE
    if _PHI10_CACHE is None:
        if os.path.exists(_DATA_PATH):
            with gzip.open(_DATA_PATH, "rt") as fh:
                payload = json.load(fh)
            if payload.get("format") != "paratwist-phi10-v1":
                raise ParatwistError("unrecognized phi10 table format")
            _PHI10_CACHE = {int(k): int(v) for k, v in payload["values"].items()}
        else:
            _PHI10_CACHE = phi10_table(2000)
    if max_disc is not None:
        have = max(_PHI10_CACHE) if _PHI10_CACHE else 0
        if max_disc > have:
            _PHI10_CACHE = phi10_table(max_disc)
    return _PHI10_CACHE


def phi10_value(disc: int, table: dict[int, int] | None = None) -> Fraction:
    if disc <= 0:
        return Fraction(0)
    table = table if table is not None else phi10_coefficients()
    if disc % 4 in (1, 2):
        return Fraction(0)
    if disc > max(table):
        raise ParatwistError(
            f"phi10 table covers discriminants up to {max(table)}, "
            f"needed {disc}; regenerate with scripts/generate_phi10_table.py")
    return Fraction(table.get(disc, 0))


def gritsenko_lift_phi10(max_disc: int | None = None) -> CoefficientOracle:
    """The level-1 weight-10 additive lift of the phi10 coefficient table.

    A(n, r, m) = sum over d | gcd(n, r, m) of d^(k-1) c((4 n m - r^2)/d^2),
    exposed as an exact coefficient oracle.
    """
    table = phi10_coefficients(max_disc)
    k = 10

    def fn(n: int, r: int, m: int) -> Fraction:
        g = _gcd3(n, abs(r), m)
        total = Fraction(0)
        disc = 4 * n * m - r * r
        for d in range(1, g + 1):
            if g % d == 0:
                total += Fraction(d) ** (k - 1) * phi10_value(disc // (d * d),
                                                              table)
        return total

    return CoefficientOracle(10, 1, fn, cuspidal=True, name="lift(phi10)")


def _gcd3(a: int, b: int, c: int) -> int:
    from math import gcd
    return gcd(gcd(a, b), c)


# -- expansion files -------------------------------------------------------------

_FORMAT = "paratwist-expansion-v1"


def _encode_value(v) -> object:
    if isinstance(v, Cyclotomic):
        return {"zeta_coeffs": [f"{c.numerator}/{c.denominator}"
                                for c in v.coeffs]}
    f = Fraction(v)
    return f"{f.numerator}/{f.denominator}"


def _decode_value(obj, zeta_order):
    if isinstance(obj, str):
        num, _, den = obj.partition("/")
        if not den or not _is_int(num) or not _is_int(den):
            raise ParatwistError(f"malformed rational {obj!r}")
        return Fraction(int(num), int(den))
    if isinstance(obj, dict) and "zeta_coeffs" in obj:
        if zeta_order is None:
            raise ParatwistError("cyclotomic value without a declared order")
        p, e = zeta_order
        coeffs = [_decode_value(s, None) for s in obj["zeta_coeffs"]]
        return Cyclotomic(p, e, coeffs)
    raise ParatwistError(f"unrecognized value encoding {obj!r}")


def _is_int(s: str) -> bool:
    s = s.strip()
    if s.startswith("-"):
        s = s[1:]
    return s.isdigit()


def save_expansion(path: str, form) -> None:
    """Write a windowed expansion to JSON (bit-exact round trip)."""
    if isinstance(form, EllipticExpansion):
        payload = {
            "format": _FORMAT, "kind": "elliptic",
            "weight": form.weight, "level": form.level,
            "truncation": form.trunc,
            "cyclotomic_order": list(form.zeta_order) if form.zeta_order else None,
            "coefficients": [
                {"n": n, "value": _encode_value(v)}
                for n, v in sorted(form.coeffs.items())
            ],
        }
    elif isinstance(form, SiegelExpansion):
        payload = {
            "format": _FORMAT, "kind": "siegel",
            "weight": form.weight, "level": form.level,
            "cuspidal": form.cuspidal,
            "cyclotomic_order": list(form.zeta_order) if form.zeta_order else None,
            "coefficients": [
                {"n": n, "r": r, "m": m, "value": _encode_value(v)}
                for (n, r, m), v in sorted(form.coeffs.items())
            ],
            "complete": sorted(list(idx) for idx in form.complete),
        }
    else:
        raise TypeError("unsupported expansion type")
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=1, sort_keys=True)


def load_expansion(path: str):
    with open(path) as fh:
        payload = json.load(fh)
    if payload.get("format") != _FORMAT:
        raise ParatwistError(
            f"unsupported expansion format {payload.get('format')!r}")
    zo = payload.get("cyclotomic_order")
    zeta_order = tuple(zo) if zo else None
    if payload["kind"] == "elliptic":
        coeffs = {int(c["n"]): _decode_value(c["value"], zeta_order)
                  for c in payload["coefficients"]}
        return EllipticExpansion(payload["weight"], payload["level"], coeffs,
                                 payload["truncation"], zeta_order)
    if payload["kind"] == "siegel":
        coeffs = {(c["n"], c["r"], c["m"]): _decode_value(c["value"], zeta_order)
                  for c in payload["coefficients"]}
        complete = [tuple(idx) for idx in payload["complete"]]
        return SiegelExpansion(payload["weight"], payload["level"], coeffs,
                               complete, payload.get("cuspidal", True),
                               zeta_order)
    raise ParatwistError(f"unknown expansion kind {payload['kind']!r}")
