"""Quadratic characters, Gauss sums, and finite character-sum identities.

The twisting character mod an odd prime p is always the Legendre symbol:
it is the unique nontrivial quadratic character of that conductor, so no
character tables are configurable.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclotomic import Cyclotomic
from .errors import LevelError


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def char_value(p: int, u: int) -> int:
    """Legendre symbol (u|p) in {-1, 0, 1}; p an odd prime."""
    if p == 2 or not _is_prime(p):
        raise LevelError(f"quadratic twisting character needs an odd prime, got {p}")
    u %= p
    if u == 0:
        return 0
    t = pow(u, (p - 1) // 2, p)
    return 1 if t == 1 else -1


def gauss_sum(p: int) -> Cyclotomic:
    """W(chi) = sum over units u mod p of chi(u) zeta_p^u, exact in Q(zeta_p)."""
    vec = {u: Fraction(char_value(p, u)) for u in range(1, p)}
    return Cyclotomic.from_exponent_vector(p, 1, vec)


def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker symbol (a|n), for any integers a, n."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -sign
    # factor out 2s from n
    t = 0
    while n % 2 == 0:
        n //= 2
        t += 1
    if t:
        if a % 2 == 0:
            return 0
        if t % 2 == 1 and a % 8 in (3, 5):
            sign = -sign
    a %= n
    # Jacobi symbol on odd n via quadratic reciprocity
    result = 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    if n != 1:
        return 0
    return sign * result


def factor(n: int) -> dict[int, int]:
    """Trial-division factorization; fine at desk scale."""
    if n <= 0:
        raise ValueError("factor expects a positive integer")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def local_char_values(modulus: int, a: int, char=None) -> dict[int, int]:
    """Local components chi_ell(a) of the character attached to `modulus`.

    `char` maps a unit mod `modulus` to a value; default is the product of
    Legendre symbols at the odd prime factors (the only case the twisting
    engine uses).  Returns {ell: chi_ell(a)} for ell | modulus, where
    chi_ell(a) evaluates the character on the class of a mod ell^val.
    """
    if math_gcd(a, modulus) != 1:
        raise ValueError("argument must be prime to the modulus")
    fac = factor(modulus) if modulus > 1 else {}
    out: dict[int, int] = {}
    for ell, e in fac.items():
        elle = ell ** e
        if char is None:
            if ell == 2:
                raise LevelError("default factorization handles odd moduli only")
            out[ell] = char_value(ell, a % ell)
        else:
            # chi_ell(a) = chi(b) for b = a mod ell^e, b = 1 mod modulus/ell^e
            rest = modulus // elle
            b = crt(a % elle, elle, 1 % rest if rest > 1 else 0, rest)
            out[ell] = char(b)
    return out


def hecke_factorization(modulus: int, a: int) -> list[int]:
    """Values chi_ell(a) over primes ell | modulus; their product is chi(a)."""
    return [v for _, v in sorted(local_char_values(modulus, a).items())]


def math_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def crt(a1: int, m1: int, a2: int, m2: int) -> int:
    """x mod m1*m2 with x = a1 mod m1, x = a2 mod m2 (coprime moduli)."""
    if m1 == 1:
        return a2 % m2 if m2 > 1 else 0
    if m2 == 1:
        return a1 % m1
    g = math_gcd(m1, m2)
    if g != 1:
        raise ValueError("moduli must be coprime")
    inv = pow(m1 % m2, -1, m2)
    return (a1 + m1 * ((a2 - a1) * inv % m2)) % (m1 * m2)


def units_mod(modulus: int, exclude_one_mod_p: int | None = None) -> list[int]:
    """Canonical representatives of units mod `modulus`.

    With exclude_one_mod_p = p, drops residues congruent to 1 mod p.
    """
    out = []
    for u in range(modulus):
        if math_gcd(u, modulus) != 1:
            continue
        if exclude_one_mod_p is not None and u % exclude_one_mod_p == 1:
            continue
        out.append(u)
    return out


def verify_reparam_bijection(p: int, exp: int = 3) -> dict:
    """Check the unit-set reparameterization w -> (z^-1 - 1)(w^-1 - 1)^-1.

    For each unit z mod p^exp with z != 1 mod p, the map must be a
    well-defined bijection from {units w != 1 mod p} onto its image inside
    the units, all mod p^exp.  The image set is recorded; its complement in
    the units is the excluded class, which the catalog exposes for the
    optional gated identity that needs it.
    """
    m = p ** exp
    zs = units_mod(m, exclude_one_mod_p=p)
    ws = units_mod(m, exclude_one_mod_p=p)
    results = {}
    for z in zs:
        zinv1 = (pow(z, -1, m) - 1) % m
        seen = {}
        ok = True
        for w in ws:
            t = (pow(w, -1, m) - 1) % m
            x = zinv1 * pow(t, -1, m) % m
            if math_gcd(x, p) != 1:
                ok = False
                break
            if x in seen:
                ok = False
                break
            seen[x] = w
        image = frozenset(seen)
        complement = frozenset(u for u in units_mod(m) if u not in image)
        results[z] = {
            "bijective": ok,
            "image_size": len(image),
            "excluded_classes_mod_p": sorted({u % p for u in complement}),
        }
    return results


def excluded_class_provider(p: int):
    """Derived description of the excluded unit class for each admissible z.

    Returns a callable (z, modulus) -> frozenset of unit representatives:
    the units congruent to 1 - z^{-1} mod p.  This reproduces the image
    complement observed in verify_reparam_bijection and is offered only as
    an explicitly opt-in input to the gated local identity.
    """

    def provider(z: int, modulus: int) -> frozenset[int]:
        c = (1 - pow(z, -1, modulus)) % p
        return frozenset(u for u in units_mod(modulus) if u % p == c)

    return provider
