"""Exact 4x4 symplectic-similitude matrices in the two realizations.

The "J" realization uses the block form [[0, 1], [-1, 0]]; the "Jprime"
realization uses the antidiagonal form antidiag(1, 1, -1, -1).  Conjugation
by the permutation C that swaps the last two coordinates maps one onto the
other.  Every GSpMat carries its realization tag and cached multiplier, and
binary operations refuse to mix tags: silently mixing the two forms is the
most likely way to corrupt a computation, so it is checked everywhere.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import (
    NotSymplecticSimilitudeError,
    RealizationMismatchError,
    SingularMatrixError,
)

J_REAL = "J"
JPRIME_REAL = "Jprime"

Row = tuple[Fraction, Fraction, Fraction, Fraction]
Mat4 = tuple[Row, Row, Row, Row]


def mat4(rows) -> Mat4:
    out = tuple(tuple(Fraction(x) for x in row) for row in rows)
    if len(out) != 4 or any(len(r) != 4 for r in out):
        raise ValueError("expected a 4x4 matrix")
    return out  # type: ignore[return-value]


IDENTITY4: Mat4 = mat4([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])

J_MAT: Mat4 = mat4([
    [0, 0, 1, 0],
    [0, 0, 0, 1],
    [-1, 0, 0, 0],
    [0, -1, 0, 0],
])

JPRIME_MAT: Mat4 = mat4([
    [0, 0, 0, 1],
    [0, 0, 1, 0],
    [0, -1, 0, 0],
    [-1, 0, 0, 0],
])

C_MAT: Mat4 = mat4([
    [1, 0, 0, 0],
    [0, 1, 0, 0],
    [0, 0, 0, 1],
    [0, 0, 1, 0],
])


def mat4_mul(a: Mat4, b: Mat4) -> Mat4:
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt)
        for row in a
    )  # type: ignore[return-value]


def mat4_transpose(a: Mat4) -> Mat4:
    return tuple(zip(*a))  # type: ignore[return-value]


def mat4_scale(a: Mat4, s) -> Mat4:
    s = Fraction(s)
    return tuple(tuple(x * s for x in row) for row in a)  # type: ignore[return-value]


def mat4_det(a: Mat4) -> Fraction:
    # Laplace along the first row; 4x4 only, exact.
    def det3(m):
        return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))

    total = Fraction(0)
    for j in range(4):
        minor = [[a[i][k] for k in range(4) if k != j] for i in range(1, 4)]
        term = a[0][j] * det3(minor)
        total += term if j % 2 == 0 else -term
    return total


def mat4_inv(a: Mat4) -> Mat4:
    n = 4
    aug = [list(a[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)  # type: ignore[return-value]


def _form(realization: str) -> Mat4:
    if realization == J_REAL:
        return J_MAT
    if realization == JPRIME_REAL:
        return JPRIME_MAT
    raise ValueError(f"unknown realization {realization!r}")


def gsp_check(entries, realization: str) -> Fraction:
    """Return the multiplier lambda with t(g) J g = lambda J, or raise.

    Raises SingularMatrixError for singular input and
    NotSymplecticSimilitudeError when no scalar works.
    """
    g = mat4(entries)
    if mat4_det(g) == 0:
        raise SingularMatrixError("matrix is singular")
    form = _form(realization)
    w = mat4_mul(mat4_transpose(g), mat4_mul(form, g))
    lam = None
    for i in range(4):
        for j in range(4):
            if form[i][j] == 0:
                if w[i][j] != 0:
                    raise NotSymplecticSimilitudeError(
                        "t(g)Jg has support outside J")
            else:
                ratio = w[i][j] / form[i][j]
                if lam is None:
                    lam = ratio
                elif ratio != lam:
                    raise NotSymplecticSimilitudeError(
                        "t(g)Jg is not a scalar multiple of J")
    assert lam is not None and lam != 0
    return lam


class GSpMat:
    """Immutable exact element of GSp(4, Q) with realization tag."""

    __slots__ = ("entries", "realization", "multiplier")

    def __init__(self, entries, realization: str = J_REAL):
        ent = mat4(entries)
        self.entries: Mat4 = ent
        self.realization = realization
        self.multiplier: Fraction = gsp_check(ent, realization)

    def __mul__(self, other: "GSpMat") -> "GSpMat":
        if not isinstance(other, GSpMat):
            return NotImplemented
        if other.realization != self.realization:
            raise RealizationMismatchError(
                f"{self.realization} * {other.realization}")
        return GSpMat(mat4_mul(self.entries, other.entries), self.realization)

    def inv(self) -> "GSpMat":
        # g^{-1} = lambda^{-1} J^{-1} t(g) J, so no elimination is needed.
        form = _form(self.realization)
        jinv = mat4_inv(form)
        m = mat4_scale(
            mat4_mul(jinv, mat4_mul(mat4_transpose(self.entries), form)),
            1 / self.multiplier)
        return GSpMat(m, self.realization)

    def scale(self, s) -> "GSpMat":
        return GSpMat(mat4_scale(self.entries, s), self.realization)

    def transform_point(self, z_matrix):
        """Blocks (A, B, C, D) of the action on the Siegel upper half space."""
        e = self.entries
        a = ((e[0][0], e[0][1]), (e[1][0], e[1][1]))
        b = ((e[0][2], e[0][3]), (e[1][2], e[1][3]))
        c = ((e[2][0], e[2][1]), (e[3][0], e[3][1]))
        d = ((e[2][2], e[2][3]), (e[3][2], e[3][3]))
        _ = z_matrix
        return a, b, c, d

    def __eq__(self, other):
        return (isinstance(other, GSpMat)
                and self.realization == other.realization
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.realization, self.entries))

    def __repr__(self):
        rows = "; ".join(" ".join(str(x) for x in row) for row in self.entries)
        return f"GSpMat[{self.realization}, lam={self.multiplier}]({rows})"


# -- block generators -------------------------------------------------------

def u_mat(q11, q12, q22, realization: str = J_REAL) -> GSpMat:
    """U(Q) = [[1, Q], [0, 1]] for symmetric Q (J realization block shape).

    In the Jprime realization the same abstract element has its last two
    coordinates swapped; callers building Jprime matrices supply entries
    directly, so only the J form is constructed here.
    """
    if realization != J_REAL:
        raise ValueError("u_mat builds J-realization matrices")
    q11, q12, q22 = Fraction(q11), Fraction(q12), Fraction(q22)
    return GSpMat([
        [1, 0, q11, q12],
        [0, 1, q12, q22],
        [0, 0, 1, 0],
        [0, 0, 0, 1],
    ], J_REAL)


def a_mat(p11, p12, p21, p22, realization: str = J_REAL) -> GSpMat:
    """A(P) = diag(P, t(P)^{-1}) for invertible 2x2 P (J realization)."""
    if realization != J_REAL:
        raise ValueError("a_mat builds J-realization matrices")
    p11, p12, p21, p22 = (Fraction(p11), Fraction(p12),
                          Fraction(p21), Fraction(p22))
    det = p11 * p22 - p12 * p21
    if det == 0:
        raise SingularMatrixError("P must be invertible")
    # t(P)^{-1} = (1/det) [[p22, -p21], [-p12, p11]]
    return GSpMat([
        [p11, p12, 0, 0],
        [p21, p22, 0, 0],
        [0, 0, p22 / det, -p21 / det],
        [0, 0, -p12 / det, p11 / det],
    ], J_REAL)


def mu_mat(lam, realization: str = J_REAL) -> GSpMat:
    """diag(1, 1, lam, lam): the similitude dilation with multiplier lam."""
    lam = Fraction(lam)
    return GSpMat([
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, lam, 0],
        [0, 0, 0, lam],
    ], realization)


def eta_jprime(p: int) -> GSpMat:
    return GSpMat([
        [Fraction(1, p), 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 1, 0],
        [0, 0, 0, p],
    ], JPRIME_REAL)


def tau_jprime(p: int) -> GSpMat:
    return GSpMat([
        [1, 0, 0, 0],
        [0, Fraction(1, p), 0, 0],
        [0, 0, p, 0],
        [0, 0, 0, 1],
    ], JPRIME_REAL)


def t4_jprime(p: int) -> GSpMat:
    q4 = p ** 4
    return GSpMat([
        [0, 0, 0, Fraction(-1, q4)],
        [0, 1, 0, 0],
        [0, 0, 1, 0],
        [q4, 0, 0, 0],
    ], JPRIME_REAL)


def eta_prime(p: int) -> GSpMat:
    return GSpMat([
        [Fraction(1, p), 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, p, 0],
        [0, 0, 0, 1],
    ], J_REAL)


def tau_prime(p: int) -> GSpMat:
    return GSpMat([
        [1, 0, 0, 0],
        [0, Fraction(1, p), 0, 0],
        [0, 0, 1, 0],
        [0, 0, 0, p],
    ], J_REAL)


def convert_realization(g: GSpMat) -> GSpMat:
    """Conjugate by C (swap of the last two coordinates); flips the tag."""
    target = JPRIME_REAL if g.realization == J_REAL else J_REAL
    return GSpMat(mat4_mul(C_MAT, mat4_mul(g.entries, C_MAT)), target)


def padic_val(x, ell: int):
    """ell-adic valuation of a rational; +inf for 0."""
    x = Fraction(x)
    if x == 0:
        return math.inf
    v = 0
    num, den = x.numerator, x.denominator
    while num % ell == 0:
        num //= ell
        v += 1
    while den % ell == 0:
        den //= ell
        v -= 1
    return v


def block_upper_decompose(g: GSpMat):
    """Write a block-upper-triangular g as U(Q) A(P) mu(lam).

    Returns (Q, P, lam) with Q symmetric 2x2, P invertible 2x2 (tuples of
    Fractions), or None when the lower-left block is nonzero.  Only sensible
    in the J realization, where the coefficient-wise slash action applies.
    """
    if g.realization != J_REAL:
        raise ValueError("decomposition is for J-realization matrices")
    e = g.entries
    if any(e[i][j] != 0 for i in (2, 3) for j in (0, 1)):
        return None
    lam = g.multiplier
    p = ((e[0][0], e[0][1]), (e[1][0], e[1][1]))
    b = ((e[0][2], e[0][3]), (e[1][2], e[1][3]))
    # B = lam * Q * t(P)^{-1}  =>  Q = (1/lam) * B * t(P)
    pt = ((p[0][0], p[1][0]), (p[0][1], p[1][1]))
    q = tuple(
        tuple(sum(b[i][k] * pt[k][j] for k in range(2)) / lam for j in range(2))
        for i in range(2)
    )
    if q[0][1] != q[1][0]:
        raise NotSymplecticSimilitudeError("upper block is not symmetric-compatible")
    return q, p, lam
