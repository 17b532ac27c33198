"""Canonical forms for cosets g * GSp(4, Z_p) and weighted coset sums.

The key fact: for g, h in GSp(4, Q_p), the cosets g*K and h*K (K the
integral points) coincide exactly when the column lattices g Z_p^4 and
h Z_p^4 coincide, because an integral change of basis between them is
automatically a similitude with unit multiplier (its determinant is a unit
and det = lambda^2).  Lattices in turn are classified by a Hermite-style
normal form over the local ring, computed here with exact integer residues
mod p^(D+1) where p^D is the determinant's p-part.  The resulting key is a
perfect hash: equal cosets get equal keys and conversely.
"""

from __future__ import annotations

from fractions import Fraction

from .matgsp import GSpMat, mat4, padic_val


def _int_val(n: int, p: int, cap: int) -> int:
    """Valuation of an integer, capped (val of 0 reads as cap)."""
    if n == 0:
        return cap
    v = 0
    while n % p == 0 and v < cap:
        n //= p
        v += 1
    return v


def _det4_frac(m) -> Fraction:
    def det3(a):
        return (a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
                - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
                + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]))

    total = Fraction(0)
    for j in range(4):
        minor = [[m[i][k] for k in range(4) if k != j] for i in range(1, 4)]
        term = m[0][j] * det3(minor)
        total += term if j % 2 == 0 else -term
    return total


def coset_key(entries, p: int):
    """Canonical key of the coset (entries) * GSp(4, Z_p).

    entries: 4x4 exact rationals, invertible.  The key is (shift, D, HNF)
    where p^shift normalizes the matrix to p-primitive form, p^D is the
    p-part of the primitive determinant, and HNF is the canonical local
    column normal form of the primitive matrix.
    """
    fr = [[Fraction(x) for x in row] for row in entries]
    vals = [padic_val(x, p) for row in fr for x in row if x != 0]
    if not vals:
        raise ValueError("zero matrix has no coset")
    shift = -min(vals)
    scale = Fraction(p) ** shift
    scaled = [[x * scale for x in row] for row in fr]
    det = _det4_frac(scaled)
    if det == 0:
        raise ValueError("matrix is singular")
    dval = padic_val(det, p)
    assert isinstance(dval, int) and dval >= 0
    modulus = p ** (dval + 1)
    res = [[(x.numerator * pow(x.denominator, -1, modulus)) % modulus
            if x.denominator != 1 else x.numerator % modulus
            for x in row] for row in scaled]
    hnf = _local_hnf_mod(res, p, dval)
    return (shift, dval, tuple(tuple(row) for row in hnf))


def _det4_int(m) -> int:
    def det3(a):
        return (a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
                - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
                + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]))

    total = 0
    for j in range(4):
        minor = [[m[i][k] for k in range(4) if k != j] for i in range(1, 4)]
        term = m[0][j] * det3(minor)
        total += term if j % 2 == 0 else -term
    return total


def coset_key_int(flat, den_exp: int, p: int, unimodular: bool = False):
    """coset_key for a matrix given as 16 integers scaled by p^den_exp.

    The true matrix is flat/p^den_exp (row-major).  Integer-only path for
    the bulk verifications; produces keys identical to coset_key.  With
    unimodular=True the caller asserts det(flat/p^den_exp) = +-1 (all our
    multiplier-one elements), which fixes the determinant valuation of the
    primitive part as 4*(den_exp - vmin) without computing it.
    """
    vmin = None
    for x in flat:
        if x:
            v = 0
            while x % p == 0:
                x //= p
                v += 1
            if vmin is None or v < vmin:
                vmin = v
                if v == 0:
                    break
    if vmin is None:
        raise ValueError("zero matrix has no coset")
    shift = den_exp - vmin
    q = p ** vmin
    prim = [x // q for x in flat]
    rows = [prim[0:4], prim[4:8], prim[8:12], prim[12:16]]
    if unimodular:
        dval = 4 * shift
        if dval < 0:
            raise ValueError("negative determinant valuation")
    else:
        det = _det4_int(rows)
        if det == 0:
            raise ValueError("matrix is singular")
        dval = 0
        d = det
        while d % p == 0:
            d //= p
            dval += 1
    modulus = p ** (dval + 1)
    res = [[x % modulus for x in row] for row in rows]
    hnf = _local_hnf_mod(res, p, dval)
    return (shift, dval, tuple(tuple(row) for row in hnf))


def _local_hnf_mod(a, p: int, dval: int):
    """Column HNF over Z_(p) of a p-primitive integral matrix, mod p^(D+1).

    Returns the canonical 4x4 entry table: the column assigned to row i has
    p^(v_i) at row i, zeros in rows above i, and every entry sitting in a
    pivot row j of another column is reduced mod p^(v_j).  Columns are
    emitted in pivot-row order, so the result is lower triangular.
    """
    modulus = p ** (dval + 1)
    cap = dval + 1
    m = [row[:] for row in a]
    n = 4
    active = list(range(n))
    pivot_col: list[int] = []
    for i in range(n):
        best_c, best_v = None, cap + 1
        for c in active:
            v = _int_val(m[i][c], p, cap)
            if v < best_v:
                best_v, best_c = v, c
        assert best_c is not None and best_v <= dval, \
            "pivot valuation exceeded determinant valuation"
        c0, v0 = best_c, best_v
        pw = p ** v0
        # normalize pivot column so m[i][c0] == p^v0 exactly
        u = m[i][c0] // pw
        w = pow(u % modulus, -1, modulus)
        for r in range(n):
            m[r][c0] = (m[r][c0] * w) % modulus
        m[i][c0] = pw % modulus
        # eliminate row i in the other active columns
        for c in active:
            if c == c0:
                continue
            k = m[i][c] // pw
            if k:
                for r in range(n):
                    m[r][c] = (m[r][c] - k * m[r][c0]) % modulus
            m[i][c] = 0
        # reduce row i of previously fixed pivot columns mod p^v0
        for cj in pivot_col:
            k = m[i][cj] // pw
            if k:
                for r in range(n):
                    m[r][cj] = (m[r][cj] - k * m[r][c0]) % modulus
        active.remove(c0)
        pivot_col.append(c0)
    cols = [[m[r][c] for r in range(n)] for c in pivot_col]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def in_gsp_integral(entries, p: int) -> bool:
    """Entries p-integral and determinant a p-unit (membership in K)."""
    fr = [[Fraction(x) for x in row] for row in entries]
    for row in fr:
        for x in row:
            if padic_val(x, p) < 0:
                return False
    det = _det4_frac(fr)
    return padic_val(det, p) == 0


def coset_equal(g, h, p: int) -> bool:
    """Direct pairwise test g*K == h*K via integrality of g^{-1} h."""
    gm = g if isinstance(g, GSpMat) else GSpMat(g)
    hent = h.entries if isinstance(h, GSpMat) else mat4(h)
    ginv = gm.inv().entries
    prod = [[sum(ginv[i][k] * hent[k][j] for k in range(4)) for j in range(4)]
            for i in range(4)]
    return in_gsp_integral(prod, p)


class CosetSum:
    """Finite formal sum of cosets g*K with exact rational weights."""

    __slots__ = ("p", "terms")

    def __init__(self, p: int):
        self.p = p
        self.terms: dict = {}     # key -> [weight, witness entries]

    def add(self, weight, entries) -> None:
        w = Fraction(weight)
        if w == 0:
            return
        key = coset_key(entries, self.p)
        slot = self.terms.get(key)
        if slot is None:
            self.terms[key] = [w, mat4(entries)]
        else:
            slot[0] += w
            if slot[0] == 0:
                del self.terms[key]

    def add_sum(self, other: "CosetSum", scale=1) -> None:
        s = Fraction(scale)
        if s == 0:
            return
        for key, (w, wit) in other.terms.items():
            slot = self.terms.get(key)
            if slot is None:
                self.terms[key] = [w * s, wit]
            else:
                slot[0] += w * s
                if slot[0] == 0:
                    del self.terms[key]

    def total_mass(self) -> Fraction:
        return sum((w for w, _ in self.terms.values()), Fraction(0))

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, CosetSum) or other.p != self.p:
            return NotImplemented
        if len(self.terms) != len(other.terms):
            return False
        for key, (w, _) in self.terms.items():
            o = other.terms.get(key)
            if o is None or o[0] != w:
                return False
        return True

    def difference_witnesses(self, other: "CosetSum", limit: int = 5):
        """Cosets where the two sums disagree, with both weights."""
        out = []
        keys = set(self.terms) | set(other.terms)
        for key in sorted(keys):
            wa = self.terms.get(key)
            wb = other.terms.get(key)
            va = wa[0] if wa else Fraction(0)
            vb = wb[0] if wb else Fraction(0)
            if va != vb:
                witness = (wa or wb)[1]
                out.append({"weight_left": va, "weight_right": vb,
                            "witness": witness})
                if len(out) >= limit:
                    break
        return out
