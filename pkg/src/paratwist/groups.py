"""Paramodular membership predicates and the Atkin-Lehner element.

The global group of level N sits inside Sp(4, Q) with the entry pattern

    [ Z    Z    N^-1 Z   Z ]
    [ NZ   Z    Z        Z ]
    [ NZ   NZ   Z        NZ]
    [ NZ   Z    Z        Z ],

and the local groups repeat the same shape ell-adically.  In the swapped
realization the distinguished denominator moves to the (1,4) corner.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .errors import ParatwistError
from .matgsp import GSpMat, J_REAL, a_mat, padic_val, u_mat

# exponent e[i][j]: entry must lie in N^e * Z (resp. ell^(r*e) * Z_ell)
_PATTERN_J = ((0, 0, -1, 0),
              (1, 0, 0, 0),
              (1, 1, 0, 1),
              (1, 0, 0, 0))

_PATTERN_JPRIME = ((0, 0, 0, -1),
                   (1, 0, 0, 0),
                   (1, 0, 0, 0),
                   (1, 1, 1, 0))


def in_paramodular_global(g: GSpMat, level: int) -> bool:
    """Membership in the level-N paramodular subgroup of Sp(4, Q)."""
    if g.realization != J_REAL:
        raise ValueError("global paramodular membership uses the J realization")
    if g.multiplier != 1:
        return False
    n = Fraction(level)
    for i in range(4):
        for j in range(4):
            x = g.entries[i][j] * n ** (-_PATTERN_J[i][j])
            if x.denominator != 1:
                return False
    return True


def in_paramodular_local(g: GSpMat, ell: int, r: int,
                         realization: str | None = None) -> bool:
    """lambda(g) an ell-adic unit and entries in the local level-ell^r pattern."""
    realization = realization or g.realization
    if realization != g.realization:
        raise ValueError("realization tag mismatch")
    pattern = _PATTERN_J if realization == J_REAL else _PATTERN_JPRIME
    if padic_val(g.multiplier, ell) != 0:
        return False
    for i in range(4):
        for j in range(4):
            if padic_val(g.entries[i][j], ell) < r * pattern[i][j]:
                return False
    return True


def _denominator_primes(g: GSpMat) -> set[int]:
    primes: set[int] = set()
    for row in g.entries:
        for x in row:
            d = x.denominator
            f = 2
            while f * f <= d:
                if d % f == 0:
                    primes.add(f)
                    while d % f == 0:
                        d //= f
                f += 1
            if d > 1:
                primes.add(d)
    return primes


def _level_primes(level: int) -> dict[int, int]:
    out: dict[int, int] = {}
    n, f = level, 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def global_local_consistency(g: GSpMat, level: int) -> bool:
    """The global pattern test agrees with the product of local ones."""
    lhs = in_paramodular_global(g, level)
    if g.multiplier != 1:
        rhs = False
    else:
        levels = _level_primes(level)
        rhs = True
        for ell in sorted(set(levels) | _denominator_primes(g)):
            if not in_paramodular_local(g, ell, levels.get(ell, 0), J_REAL):
                rhs = False
                break
    return lhs == rhs


def symmetry_elements(level: int) -> list[GSpMat]:
    """The two standard symmetry elements of the level-N group."""
    s1 = GSpMat([
        [1, 0, 0, 0],
        [0, 0, 0, 1],
        [0, 0, 1, 0],
        [0, -1, 0, 0],
    ], J_REAL)
    s2 = GSpMat([
        [0, 0, Fraction(-1, level), 0],
        [0, 1, 0, 0],
        [level, 0, 0, 0],
        [0, 0, 0, 1],
    ], J_REAL)
    return [s1, s2]


def probe_generators(level: int) -> list[GSpMat]:
    """A membership-checked probe set inside the level-N group.

    Not claimed to generate; rich enough for closure and normalization
    tests (upper unipotents with the allowed N^-1 corner, A(P) for a
    Gamma_0(N)-style pair, both symmetry elements, and conjugates that
    supply lower-triangular probes).
    """
    gens: list[GSpMat] = []
    s_list = [
        (Fraction(1, level), 0, 0),
        (0, 1, 0),
        (0, 0, 1),
        (Fraction(1, level), 1, 1),
    ]
    for q11, q12, q22 in s_list:
        gens.append(u_mat(q11, q12, q22))
    gens.append(a_mat(1, 1, 0, 1))
    gens.append(a_mat(1, 0, level, 1))
    gens.append(a_mat(-1, 0, 0, -1))
    s1, s2 = symmetry_elements(level)
    gens.extend([s1, s2])
    for q11, q12, q22 in s_list[:2]:
        u = u_mat(q11, q12, q22)
        gens.append(s2 * u * s2.inv())
        gens.append(s1 * u * s1.inv())
    for g in gens:
        if not in_paramodular_global(g, level):
            raise AssertionError("probe generator fell outside the group")
    return gens


# -- Sp(4, Z) lift with congruence constraints -------------------------------

def _pair(x, y) -> int:
    """Symplectic pairing t(x) J y on integer 4-vectors."""
    return (x[0] * y[2] + x[1] * y[3]) - (x[2] * y[0] + x[3] * y[1])


def _gcd_list(xs) -> int:
    g = 0
    for x in xs:
        x = abs(x)
        while x:
            g, x = x, g % x
    return g


def _xgcd(a: int, b: int):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _solve_linear_form(coeffs, target):
    """Integer vector y with sum(coeffs[i] * y[i]) = target."""
    n = len(coeffs)
    g, combo = 0, [0] * n
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        if g == 0:
            g = abs(c)
            combo = [0] * n
            combo[i] = 1 if c > 0 else -1
            continue
        gg, x0, x1 = _xgcd(g, c)
        combo = [x0 * t for t in combo]
        combo[i] += x1
        g = gg
    if g == 0:
        if target == 0:
            return [0] * n
        raise ParatwistError("unsolvable linear form")
    if target % g != 0:
        raise ParatwistError("linear form content does not divide target")
    k = target // g
    return [k * t for t in combo]


def _primitive_lift(col, modulus):
    """Vector congruent to col mod modulus with coprime entries."""
    base = [int(x) % modulus for x in col]
    if _gcd_list(base) == 1:
        return base
    for w in itertools.product(range(4), repeat=4):
        cand = [b + modulus * t for b, t in zip(base, w)]
        if _gcd_list(cand) == 1:
            return cand
    raise ParatwistError("no primitive lift found in the search window")


def _column_basis(cols, dim: int = 4):
    """Z-basis of the column span via gcd column reduction."""
    work = [list(c) for c in cols]
    basis: list[list[int]] = []
    for row in range(dim):
        while True:
            nz = [c for c in work if c[row] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda c: abs(c[row]))
            c0 = nz[0]
            for c in nz[1:]:
                q = c[row] // c0[row]
                if q:
                    for i in range(dim):
                        c[i] -= q * c0[i]
        pivot = next((c for c in work if c[row] != 0), None)
        if pivot is not None:
            basis.append(pivot[:])
            work.remove(pivot)
    return basis


def _kernel_basis_of_two_forms(c1, c3):
    """Saturated Z-basis of {x : <c1,x> = <c3,x> = 0}; rank 2 by construction."""
    cols = []
    for i in range(4):
        e = [0] * 4
        e[i] = 1
        v = [e[j] + _pair(c3, e) * c1[j] - _pair(c1, e) * c3[j] for j in range(4)]
        cols.append(v)
    basis = _column_basis(cols)
    if len(basis) != 2:
        raise ParatwistError("kernel basis extraction failed")
    return basis


def _coords_in_basis(v, f1, f2):
    """Integer coordinates of v in the saturated basis (f1, f2); exact."""
    for i in range(4):
        for j in range(i + 1, 4):
            det = f1[i] * f2[j] - f1[j] * f2[i]
            if det != 0:
                na = v[i] * f2[j] - v[j] * f2[i]
                nb = f1[i] * v[j] - f1[j] * v[i]
                if na % det or nb % det:
                    raise ParatwistError("vector not in the kernel lattice")
                a, b = na // det, nb // det
                if [a * x + b * y for x, y in zip(f1, f2)] != list(v):
                    raise ParatwistError("coordinate solve failed")
                return a, b
    raise ParatwistError("degenerate kernel basis")


def sp4z_congruence_lift(seed, modulus: int):
    """Lift an integer matrix, symplectic mod `modulus`, to Sp(4, Z).

    Columns are completed in the order c1, c3, c2, c4; each step preserves
    the congruence class mod `modulus` and enforces the exact pairings
    <c1,c3> = <c2,c4> = 1 with all others zero.
    """
    if modulus == 1:
        return [[1 if i == j else 0 for j in range(4)] for i in range(4)]
    g = [[int(x) % modulus for x in row] for row in seed]
    gcol = [[g[i][j] for i in range(4)] for j in range(4)]

    c1 = _primitive_lift(gcol[0], modulus)

    c3 = [int(x) for x in gcol[2]]
    t = _pair(c1, c3)
    if (t - 1) % modulus:
        raise ParatwistError("seed is not symplectic mod modulus")
    # <c1, x> as a linear form in x has coefficients (-c1[2], -c1[3], c1[0], c1[1])
    form = [-c1[2], -c1[3], c1[0], c1[1]]
    u = _solve_linear_form(form, (1 - t) // modulus)
    c3 = [a + modulus * b for a, b in zip(c3, u)]

    def fix_c1_c3_pairings(vec):
        r1 = _pair(c1, vec)
        r2 = _pair(c3, vec)
        if r1 % modulus or r2 % modulus:
            raise ParatwistError("seed is not symplectic mod modulus")
        y = [(r1 // modulus) * a - (r2 // modulus) * b for a, b in zip(c3, c1)]
        return [a - modulus * b for a, b in zip(vec, y)]

    c2 = fix_c1_c3_pairings([int(x) for x in gcol[1]])
    f1, f2 = _kernel_basis_of_two_forms(c1, c3)
    alpha, beta = _coords_in_basis(c2, f1, f2)
    if _gcd_list([alpha, beta]) != 1:
        for v1, v2 in itertools.product(range(8), repeat=2):
            if _gcd_list([alpha + modulus * v1, beta + modulus * v2]) == 1:
                alpha += modulus * v1
                beta += modulus * v2
                c2 = [alpha * x + beta * y for x, y in zip(f1, f2)]
                break
        else:
            raise ParatwistError("could not primitivize the second column")

    c4 = fix_c1_c3_pairings([int(x) for x in gcol[3]])
    t = _pair(c2, c4)
    if (t - 1) % modulus:
        raise ParatwistError("seed is not symplectic mod modulus")
    gram = _pair(f1, f2)
    if gram not in (1, -1):
        raise ParatwistError("kernel plane is not unimodular")
    target = (1 - t) // modulus
    gcd_ab, xx, yy = _xgcd(alpha, beta)
    assert gcd_ab == 1
    # need alpha*y - beta*x = gram*target; xgcd gives alpha*xx + beta*yy = 1
    x_c, y_c = -yy * gram * target, xx * gram * target
    w = [x_c * a + y_c * b for a, b in zip(f1, f2)]
    c4 = [a + modulus * b for a, b in zip(c4, w)]

    cols = [c1, c2, c3, c4]
    out = [[cols[j][i] for j in range(4)] for i in range(4)]
    gm = GSpMat(out, J_REAL)
    if gm.multiplier != 1:
        raise ParatwistError("lift is not symplectic")
    for i in range(4):
        for j in range(4):
            if (out[i][j] - g[i][j]) % modulus:
                raise ParatwistError("lift broke the congruence")
    return out


_W_SEED = ((0, 0, 0, 1),
           (0, 0, 1, 0),
           (0, -1, 0, 0),
           (-1, 0, 0, 0))


def _ell_split(level: int, ell: int):
    v, m = 0, level
    while m % ell == 0:
        m //= ell
        v += 1
    return v, ell ** v, m


def atkin_lehner_gamma(level: int, ell: int, variant: int = 0) -> GSpMat:
    """gamma_ell in Sp(4, Z): antidiagonal mod ell^v, identity mod level/ell^v.

    variant > 0 multiplies by an extra Sp(4, Z) element congruent to the
    identity mod level, producing an independent valid lift (useful for
    well-definedness tests, or to make the vacuous-congruence case
    nontrivial).
    """
    v, ellv, rest = _ell_split(level, ell)
    if level == 1:
        gamma = GSpMat([[1, 0, 0, 0], [0, 1, 0, 0],
                        [0, 0, 1, 0], [0, 0, 0, 1]], J_REAL)
    else:
        if ellv == 1:
            alpha = 0
        elif rest == 1:
            alpha = 1
        else:
            inv = pow(rest % ellv, -1, ellv)
            alpha = rest * inv % level      # 1 mod ell^v, 0 mod rest
        eye = [[1 if i == j else 0 for j in range(4)] for i in range(4)]
        seed = [[eye[i][j] + alpha * (_W_SEED[i][j] - eye[i][j])
                 for j in range(4)] for i in range(4)]
        gamma = GSpMat(sp4z_congruence_lift(seed, level), J_REAL)
    if variant:
        gamma = gamma * u_mat(level * variant, 0, level * variant)
    for i in range(4):
        for j in range(4):
            x = gamma.entries[i][j]
            assert x.denominator == 1
            if ellv > 1:
                assert (x.numerator - _W_SEED[i][j]) % ellv == 0
            if rest > 1:
                assert (x.numerator - (1 if i == j else 0)) % rest == 0
    assert gamma.multiplier == 1
    return gamma


def atkin_lehner_matrix(level: int, ell: int, variant: int = 0) -> GSpMat:
    """U_ell = gamma_ell * diag(ell^v, ell^v, 1, 1) for v = val_ell(level)."""
    v, ellv, _ = _ell_split(level, ell)
    gamma = atkin_lehner_gamma(level, ell, variant=variant)
    d = GSpMat([[ellv, 0, 0, 0],
                [0, ellv, 0, 0],
                [0, 0, 1, 0],
                [0, 0, 0, 1]], J_REAL)
    return gamma * d


def atkin_lehner_checks(level: int, ell: int, u: GSpMat | None = None) -> dict:
    """Post-hoc contract: U normalizes the probe set, U^2 in ell^v * group."""
    if u is None:
        u = atkin_lehner_matrix(level, ell)
    _, ellv, _ = _ell_split(level, ell)
    uinv = u.inv()
    normalizes = all(
        in_paramodular_global(u * gmat * uinv, level)
        for gmat in probe_generators(level)
    )
    usq = (u * u).scale(Fraction(1, ellv))
    involution = in_paramodular_global(usq, level)
    return {"normalizes": normalizes, "involution": involution}
