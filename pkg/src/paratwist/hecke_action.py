"""Hecke operators and the Atkin-Lehner involution on expansions.

The first Hecke operator acts exactly on coefficients at levels prime to
ell, because all its representatives are block upper triangular.  The
second operator's displayed representatives are not, so its generic action
is numeric; at level one, though, every representative can be rotated into
block-upper form by an integral symplectic left factor (which the slash
action absorbs), giving an exact coefficient action that the commutation
suite uses to build comparison expansions.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath

from .characters import char_value
from .cyclotomic import Cyclotomic, scalar_is_zero
from .errors import ParatwistError
from .fourier import CoefficientOracle, SiegelExpansion, slash_monomial_value, slash_numeric
from .groups import atkin_lehner_matrix
from .hecke_cosets import T1, T2, global_reps
from .matgsp import GSpMat, J_REAL, block_upper_decompose


def _rationalize(x):
    if isinstance(x, Cyclotomic) and x.is_rational():
        return x.rational_value()
    return x


def _slash_sum_oracle(source, reps, normalization: Fraction, ell: int,
                      name: str) -> CoefficientOracle:
    k = source.weight
    decos = []
    for g in reps:
        deco = block_upper_decompose(g)
        if deco is None:
            raise ParatwistError("representative is not block upper triangular")
        decos.append(deco)

    def fn(n: int, r: int, m: int):
        total = Fraction(0)
        for q, pmat, lam in decos:
            term = slash_monomial_value(source, k, q, pmat, lam, n, r, m,
                                        zeta_pe=(ell, 1))
            if term is None:
                raise ParatwistError("source window exhausted")
            total = term + total
        return _rationalize(normalization * total
                            if not isinstance(total, Cyclotomic)
                            else total * normalization)

    return CoefficientOracle(k, source.level, fn, cuspidal=source.cuspidal,
                             zeta_order=source.zeta_order, name=name)


def t1_oracle(source, ell: int) -> CoefficientOracle:
    """T(1,1,ell,ell) as an exact coefficient oracle; needs ell prime to level."""
    if source.level % ell == 0:
        raise ParatwistError("exact action needs ell prime to the level; "
                             "use the numeric path at deeper level")
    reps = global_reps(T1, ell, 0)
    k = source.weight
    return _slash_sum_oracle(source, reps, Fraction(ell) ** (k - 3), ell,
                             f"T1_{ell}({source.__class__.__name__})")


# -- integral symplectic upper-triangularization --------------------------------


def _emb_sl2(pair: tuple[int, int], a, b, c, d) -> GSpMat:
    rows = [[Fraction(1 if i == j else 0) for j in range(4)] for i in range(4)]
    i, j = pair
    rows[i][i], rows[i][j] = Fraction(a), Fraction(b)
    rows[j][i], rows[j][j] = Fraction(c), Fraction(d)
    return GSpMat(rows, J_REAL)


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


def _pair_kill_gamma(g: GSpMat, pair: tuple[int, int], col: int):
    """Integral SL2 on a hyperbolic pair zeroing entry (pair[1], col), or None."""
    i, j = pair
    x = g.entries[i][col]
    y = g.entries[j][col]
    assert x.denominator == 1 and y.denominator == 1
    x, y = x.numerator, y.numerator
    if y == 0:
        return None
    gden, u, v = _xgcd(x, y)
    # [[u, v], [-y/g, x/g]] has determinant 1 and sends (x, y) to (g, 0)
    return _emb_sl2(pair, u, v, -y // gden, x // gden)


def left_upper_triangularize(g: GSpMat) -> GSpMat:
    """gamma in Sp(4, Z) with gamma * g block upper triangular.

    Rotate (3,1) into row 1 and (4,1) into row 2 on the hyperbolic pairs,
    clear (2,1) with a GL2 block mix (which preserves the zeros below), and
    clear (4,2) on the second pair.  The first column is then d e1, and the
    symplectic pairing of columns 1 and 2 forces the remaining (3,2) entry
    to vanish.  Works for any integral invertible similitude matrix.
    """
    acc = GSpMat([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
                 J_REAL)
    cur = g
    for pair, col in (((0, 2), 0), ((1, 3), 0)):
        gamma = _pair_kill_gamma(cur, pair, col)
        if gamma is not None:
            acc, cur = gamma * acc, gamma * cur
    # clear (2,1) with A(V): rows 1,2 mix by V, rows 3,4 by t(V)^-1, which
    # keeps the zeros at (3,1), (4,1)
    x = cur.entries[0][0].numerator
    y = cur.entries[1][0].numerator
    if y != 0:
        from .matgsp import a_mat
        gden, u, v = _xgcd(x, y)
        gamma = a_mat(u, v, -y // gden, x // gden)
        acc, cur = gamma * acc, gamma * cur
    gamma = _pair_kill_gamma(cur, (1, 3), 1)
    if gamma is not None:
        acc, cur = gamma * acc, gamma * cur
    if any(cur.entries[i][j] != 0 for i in (2, 3) for j in (0, 1)):
        raise ParatwistError("upper triangularization failed")
    assert acc.multiplier == 1
    assert all(x.denominator == 1 for row in acc.entries for x in row)
    return acc


def t2_oracle_level1(source, ell: int) -> CoefficientOracle:
    """Exact T(1,ell,ell,ell^2) action, valid for level-1 sources only.

    Left-rotates each representative into block-upper form by an integral
    symplectic element, which the slash action of a level-1 invariant form
    absorbs.
    """
    if source.level != 1:
        raise ParatwistError("exact second-operator action is level-1 only")
    reps = []
    for g in global_reps(T2, ell, 0):
        gamma = left_upper_triangularize(g)
        rotated = gamma * g
        assert block_upper_decompose(rotated) is not None
        reps.append(rotated)
    k = source.weight
    return _slash_sum_oracle(source, reps, Fraction(ell) ** (2 * (k - 3)),
                             ell, f"T2_{ell}")


# -- numeric paths ----------------------------------------------------------------


def apply_t1_numeric(expansion: SiegelExpansion, ell: int, z, dps: int = 30):
    k = expansion.weight
    total = mpmath.mpc(0)
    tail = mpmath.mpf(0)
    for g in global_reps(T1, ell, 0):
        val, t = slash_numeric(expansion, g, z, dps)
        total += val
        tail += t
    with mpmath.workdps(dps):
        norm = mpmath.mpf(ell) ** (k - 3)
    return norm * total, norm * tail


def apply_t2_numeric(expansion: SiegelExpansion, ell: int, z, dps: int = 30):
    k = expansion.weight
    total = mpmath.mpc(0)
    tail = mpmath.mpf(0)
    for g in global_reps(T2, ell, 0):
        val, t = slash_numeric(expansion, g, z, dps)
        total += val
        tail += t
    with mpmath.workdps(dps):
        norm = mpmath.mpf(ell) ** (2 * (k - 3))
    return norm * total, norm * tail


def apply_atkin_lehner_numeric(expansion: SiegelExpansion, ell: int,
                               level: int, z, dps: int = 30, variant: int = 0):
    u = atkin_lehner_matrix(level, ell, variant=variant)
    return slash_numeric(expansion, u, z, dps)


# -- commutation suite -------------------------------------------------------------


def commutation_suite(lift_source, p: int, ell: int, engine,
                      check_indices, sample_points=(), window=(6, 6),
                      dps: int = 40) -> dict:
    """The three commutation relations for a level-1 source.

    (i)  first Hecke operator against the twist: exact on check_indices;
    (ii) second Hecke operator: numeric at sample_points, comparing the
         slash-sum applied to the twisted window against the twist of the
         exact (level-1) second-operator image;
    (iii) Atkin-Lehner at ell: the level-1 exponent is zero and the
         untwisted involution is trivial, so both sides reduce to the
         twisted form; the numeric content is its invariance under a
         nontrivial valid gamma lift at the output level.
    Returns a report with per-relation status and maximal deviations.
    """
    if lift_source.level != 1:
        raise ParatwistError("suite expects a level-1 source")
    k = lift_source.weight
    chi_ell = char_value(p, ell)
    out_level = lift_source.level * p ** 4
    report: dict = {"p": p, "ell": ell}

    # (i) exact: T1(twist F) == chi(ell) * twist(T1 F) coefficientwise
    t1f = t1_oracle(lift_source, ell)
    twisted = _twist_oracle(engine, lift_source)
    t1_twisted = t1_oracle(twisted, ell)
    lhs_vals = {}
    rhs_vals = {}
    for idx in check_indices:
        lhs_vals[idx] = t1_twisted.value(*idx)
        val, comp, _ = engine.coefficient(t1f, idx, k=k)
        assert comp
        rhs_vals[idx] = _rationalize(val * chi_ell)
    exact_ok = all(_eq(lhs_vals[i], rhs_vals[i]) for i in check_indices)
    nonzero = sum(1 for i in check_indices if not scalar_is_zero(lhs_vals[i]))
    report["relation_i"] = {"exact_equal": exact_ok,
                            "indices": len(check_indices),
                            "nonzero_values": nonzero,
                            "factor": chi_ell}

    if sample_points:
        n_max, m_max = window
        g_window = twisted.window(n_max * p ** 4, m_max)
        t2f = t2_oracle_level1(lift_source, ell)
        twist_t2f = _twist_oracle(engine, t2f)
        rhs_window = twist_t2f.window(n_max * p ** 4, m_max)

        # (ii) numeric at sample points
        devs = []
        for z in sample_points:
            lhs_val, lhs_tail = apply_t2_numeric(g_window, ell, z, dps)
            rhs_val, rhs_tail = _evaluate(rhs_window, z, dps)
            scale = max(abs(lhs_val), abs(rhs_val), mpmath.mpf(10) ** (-dps))
            devs.append(float(abs(lhs_val - rhs_val) / scale))
            _ = lhs_tail, rhs_tail
        report["relation_ii"] = {"max_rel_dev": max(devs),
                                 "points": len(sample_points)}

        # (iii) numeric: twisted form invariant under a valid nontrivial
        # gamma lift at the output level (exponent chi(ell)^0 = 1)
        devs3 = []
        for z in sample_points:
            base, tail = _evaluate(g_window, z, dps)
            moved, tail2 = apply_atkin_lehner_numeric(
                g_window, ell, out_level, z, dps, variant=1)
            scale = max(abs(base), abs(moved), mpmath.mpf(10) ** (-dps))
            devs3.append(float(abs(base - moved) / scale))
            _ = tail, tail2
        report["relation_iii"] = {"max_rel_dev": max(devs3),
                                  "points": len(sample_points),
                                  "exponent": 0}
    return report


def _evaluate(expansion: SiegelExpansion, z, dps: int):
    from .fourier import evaluate
    return evaluate(expansion, z, dps)


def _twist_oracle(engine, source) -> CoefficientOracle:
    p = engine.p

    def fn(n, r, m):
        val, comp, _ = engine.coefficient(source, (n, r, m))
        if not comp:
            raise ParatwistError("twist pull incomplete on an oracle source")
        return val

    return CoefficientOracle(source.weight, source.level * p ** 4, fn,
                             cuspidal=source.cuspidal, zeta_order=(p, 4),
                             name=f"twist({source.level})")


def _eq(a, b) -> bool:
    if isinstance(a, Cyclotomic) or isinstance(b, Cyclotomic):
        if not isinstance(a, Cyclotomic):
            a, b = b, a
        return a == b
    return Fraction(a) == Fraction(b)
