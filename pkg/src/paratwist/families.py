"""The fourteen monomial families of the degree-2 quadratic twisting operator.

Two table-driven presentations of the same operator are transcribed
independently:

* the "unipotent" form: sums of U(Q) A(P) with P upper triangular, acting
  coefficientwise on Fourier expansions (this is what the engine applies);
* the "translation" form: sums of prefixed A([[1,c],[0,1]]) U(S) elements
  whose inverses must reproduce the first form as weighted coset sums.

Conventions used for every formula in both tables (and by the local tables
in localfamilies.py): summation parameters take canonical representatives
in [0, p^e); modular inverses are the canonical representative of the
inverse mod the parameter's own modulus; composite expressions are then
evaluated in plain integer arithmetic, with no further reduction.  Any
consistent convention yields the same operator; consistency is what the
verification needs.

Entry functions are written with +, -, * only so they accept either ints
or numpy arrays.  `d("name")` values are precomputed modular inverses.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import LevelError

# -- parameter domains -------------------------------------------------------

FULL = "full"
UNIT = "unit"
UNIT_NOT1 = "unit_not1"


def domain_list(p: int, exp: int, kind: str) -> list[int]:
    mod = p ** exp
    if kind == FULL:
        return list(range(mod))
    if kind == UNIT:
        return [v for v in range(mod) if v % p != 0]
    if kind == UNIT_NOT1:
        return [v for v in range(mod) if v % p != 0 and v % p != 1]
    raise ValueError(f"unknown domain kind {kind}")


def domain_size(p: int, exp: int, kind: str) -> int:
    mod = p ** exp
    if kind == FULL:
        return mod
    if kind == UNIT:
        return mod - mod // p
    if kind == UNIT_NOT1:
        return mod - 2 * (mod // p)
    raise ValueError(f"unknown domain kind {kind}")


# Each family:
#   const_exp: the constant is p^const_exp
#   params:    ordered (name, exponent, kind)
#   derived:   (name, source expression fn, modulus exponent) -> canonical inverse
#   chi:       fn(v) -> integer argument of the quadratic character
#   q:         ((fn, den_exp) | None) for q11, q12, q22; entry = fn / p^den_exp
#   p_shape:   (alpha_exp, beta_exp, (fn, den_exp) | None) with
#              P = [[p^alpha_exp, fn/p^den_exp], [0, p^beta_exp]]
#   collapse:  (name, eps) parameters summed in closed form by the fast
#              engine: enter Q linearly only, never P; eps=1 when the chi
#              argument contains the parameter as a plain (odd-power) factor.

FAMILIES: dict[int, dict] = {
    1: dict(
        const_exp=-11,
        params=[("a", 3, UNIT), ("b", 3, UNIT), ("x", 3, UNIT), ("z", 4, FULL)],
        derived=[("xi", lambda v, p: v["x"], 3)],
        chi=lambda v: v["a"] * v["b"],
        q=((lambda v, p: v["z"], 4),
           (lambda v, p: -v["b"], 2),
           (lambda v, p: -v["xi"], 1)),
        p_shape=(0, 0, (lambda v, p: v["a"] + v["x"] * v["b"], 1)),
        collapse=[("z", 0)],
    ),
    2: dict(
        const_exp=-11,
        params=[("a", 3, UNIT), ("b", 3, UNIT),
                ("x", 3, UNIT_NOT1), ("y", 3, UNIT_NOT1)],
        derived=[("bi", lambda v, p: v["b"], 3),
                 ("omyi", lambda v, p: 1 - v["y"], 3),
                 ("omxi", lambda v, p: 1 - v["x"], 3)],
        chi=lambda v: v["a"] * v["b"] * v["x"] * v["y"],
        q=((lambda v, p: -v["a"] * v["b"] * (1 - v["omyi"] * v["x"]), 3),
           (lambda v, p: -v["a"], 2),
           (lambda v, p: -v["a"] * v["bi"] * v["omxi"], 1)),
        p_shape=(1, 0, (lambda v, p: v["b"], 1)),
        collapse=[("a", 1)],
    ),
    3: dict(
        const_exp=-6,
        params=[("a", 2, UNIT), ("b", 3, UNIT), ("z", 1, UNIT_NOT1)],
        derived=[("bi", lambda v, p: v["b"], 3)],
        chi=lambda v: v["b"] * (1 - v["z"]),
        q=((lambda v, p: -v["b"], 3),
           (lambda v, p: v["a"], 2),
           (lambda v, p: -v["a"] * v["a"] * v["bi"] * v["z"], 1)),
        p_shape=(1, 0, None),
        collapse=[],
    ),
    4: dict(
        const_exp=-10,
        params=[("a", 4, FULL), ("b", 3, UNIT), ("x", 4, UNIT)],
        derived=[],
        chi=lambda v: v["b"],
        q=((lambda v, p: v["a"] * v["x"] - v["b"] * p, 4),
           (lambda v, p: v["a"], 2),
           None),
        p_shape=(1, 0, (lambda v, p: v["x"], 2)),
        collapse=[("a", 0)],
    ),
    5: dict(
        const_exp=-9,
        params=[("a", 3, UNIT), ("b", 3, UNIT), ("x", 3, FULL)],
        derived=[],
        chi=lambda v: v["b"],
        q=((lambda v, p: v["a"] * v["x"] - v["b"], 3),
           (lambda v, p: v["a"], 2),
           None),
        p_shape=(1, 0, (lambda v, p: v["x"], 1)),
        collapse=[("a", 0), ("b", 1)],
    ),
    6: dict(
        const_exp=-6,
        params=[("a", 2, UNIT), ("b", 2, UNIT), ("x", 1, UNIT)],
        derived=[("bi", lambda v, p: v["b"], 2)],
        chi=lambda v: v["b"] * v["x"],
        q=((lambda v, p: v["b"] * (1 + v["x"] * p), 2),
           (lambda v, p: v["a"], 2),
           (lambda v, p: v["a"] * v["a"] * v["bi"], 2)),
        p_shape=(2, 0, None),
        collapse=[("x", 1)],
    ),
    7: dict(
        const_exp=-7,
        params=[("a", 3, UNIT), ("b", 1, UNIT), ("z", 4, FULL)],
        derived=[],
        chi=lambda v: v["a"] * v["b"],
        q=((lambda v, p: v["z"], 4),
           (lambda v, p: v["b"], 1),
           None),
        p_shape=(0, 1, (lambda v, p: -v["a"], 1)),
        collapse=[("z", 0)],
    ),
    8: dict(
        const_exp=-9,
        params=[("a", 3, UNIT), ("b", 3, UNIT), ("z", 3, UNIT_NOT1)],
        derived=[],
        chi=lambda v: v["a"] * v["b"] * v["z"] * (1 - v["z"]),
        q=((lambda v, p: v["a"] * v["b"] * (1 - v["z"]), 3),
           (lambda v, p: v["a"], 1),
           None),
        p_shape=(1, 1, (lambda v, p: v["b"], 1)),
        collapse=[("a", 1)],
    ),
    9: dict(
        const_exp=-6,
        params=[("a", 2, UNIT), ("b", 1, UNIT), ("x", 1, UNIT)],
        derived=[],
        chi=lambda v: v["b"],
        q=((lambda v, p: v["b"], 1),
           None,
           (lambda v, p: v["x"], 1)),
        p_shape=(2, 1, (lambda v, p: v["a"], 0)),
        collapse=[("b", 1), ("x", 0)],
    ),
    10: dict(
        const_exp=-6,
        params=[("a", 2, UNIT), ("b", 1, UNIT)],
        derived=[],
        chi=lambda v: v["b"],
        q=((lambda v, p: v["b"], 1), None, None),
        p_shape=(2, 2, (lambda v, p: v["a"], 0)),
        collapse=[("b", 1)],
    ),
    11: dict(
        const_exp=-10,
        params=[("a", 2, UNIT), ("b", 4, UNIT), ("x", 3, FULL), ("z", 4, FULL)],
        derived=[],
        chi=lambda v: v["a"] * v["b"],
        q=((lambda v, p: v["z"], 4),
           (lambda v, p: v["a"] * p + v["x"] * v["b"], 3),
           (lambda v, p: v["x"], 2)),
        p_shape=(0, -1, (lambda v, p: v["b"], 2)),
        collapse=[("z", 0), ("x", 0)],
    ),
    12: dict(
        const_exp=-12,
        params=[("y", 4, FULL), ("a", 4, UNIT), ("b", 3, UNIT),
                ("z", 3, UNIT_NOT1)],
        derived=[("ai", lambda v, p: v["a"], 4)],
        chi=lambda v: v["a"] * v["b"] * v["z"] * (1 - v["z"]),
        q=((lambda v, p: v["a"] * (v["y"] - v["b"] * (1 - v["z"]) * p), 4),
           (lambda v, p: v["y"], 3),
           (lambda v, p: v["ai"] * (v["y"] + v["b"] * p), 2)),
        p_shape=(1, -1, (lambda v, p: v["a"], 2)),
        collapse=[("y", 0), ("b", 1)],
    ),
    13: dict(
        const_exp=-6,
        params=[("a", 2, UNIT), ("b", 3, UNIT), ("x", 1, UNIT)],
        derived=[("bi", lambda v, p: v["b"], 3)],
        chi=lambda v: v["b"] * v["x"],
        q=((lambda v, p: v["b"] * (1 + v["x"]), 1),
           (lambda v, p: v["a"], 2),
           (lambda v, p: v["a"] * v["a"] * v["bi"], 3)),
        p_shape=(2, -1, None),
        collapse=[("x", 1)],
    ),
    14: dict(
        const_exp=-6,
        params=[("a", 2, UNIT), ("b", 1, UNIT), ("x", 4, FULL)],
        derived=[],
        chi=lambda v: v["b"],
        q=((lambda v, p: v["b"], 1),
           (lambda v, p: v["a"], 2),
           (lambda v, p: v["x"], 4)),
        p_shape=(2, -2, None),
        collapse=[("x", 0), ("b", 1)],
    ),
}


# The translation form: prefix diag(p^-ie, 1, p^ie, 1) * diag(1, p^-jt, 1, p^jt)
# times A([[1, c], [0, 1]]) U(S).  c and S transcribed per display.

COR_FAMILIES: dict[int, dict] = {
    1: dict(
        const_exp=-11, prefix=(0, 0),
        params=FAMILIES[1]["params"], derived=FAMILIES[1]["derived"],
        chi=FAMILIES[1]["chi"],
        c=(lambda v, p: -(v["a"] + v["x"] * v["b"]), 1),
        s=((lambda v, p: v["z"], 4),
           (lambda v, p: v["b"], 2),
           (lambda v, p: v["xi"], 1)),
    ),
    2: dict(
        const_exp=-11, prefix=(1, 0),
        params=FAMILIES[2]["params"], derived=FAMILIES[2]["derived"],
        chi=FAMILIES[2]["chi"],
        c=(lambda v, p: v["b"], 1),
        s=((lambda v, p: v["a"] * v["b"] * (1 - v["omyi"] * v["x"]), 3),
           (lambda v, p: -v["a"], 2),
           (lambda v, p: v["a"] * v["bi"] * v["omxi"], 1)),
    ),
    3: dict(
        const_exp=-6, prefix=(1, 0),
        params=FAMILIES[3]["params"], derived=FAMILIES[3]["derived"],
        chi=FAMILIES[3]["chi"],
        c=None,
        s=((lambda v, p: v["b"], 3),
           (lambda v, p: v["a"], 2),
           (lambda v, p: v["a"] * v["a"] * v["bi"] * v["z"], 1)),
    ),
    4: dict(
        const_exp=-10, prefix=(1, 0),
        params=FAMILIES[4]["params"], derived=FAMILIES[4]["derived"],
        chi=FAMILIES[4]["chi"],
        c=(lambda v, p: v["x"], 2),
        s=((lambda v, p: v["b"] * p - v["a"] * v["x"], 4),
           (lambda v, p: v["a"], 2),
           None),
    ),
    5: dict(
        const_exp=-9, prefix=(1, 0),
        params=FAMILIES[5]["params"], derived=FAMILIES[5]["derived"],
        chi=FAMILIES[5]["chi"],
        c=(lambda v, p: v["x"], 1),
        s=((lambda v, p: v["b"] - v["a"] * v["x"], 3),
           (lambda v, p: v["a"], 2),
           None),
    ),
    6: dict(
        const_exp=-6, prefix=(2, 0),
        params=FAMILIES[6]["params"], derived=FAMILIES[6]["derived"],
        chi=FAMILIES[6]["chi"],
        c=None,
        s=((lambda v, p: v["b"] * (1 - v["x"] * p), 2),
           (lambda v, p: v["a"], 2),
           (lambda v, p: v["a"] * v["a"] * v["bi"], 2)),
    ),
    7: dict(
        const_exp=-7, prefix=(0, 1),
        params=FAMILIES[7]["params"], derived=FAMILIES[7]["derived"],
        chi=FAMILIES[7]["chi"],
        c=(lambda v, p: -v["a"], 2),
        s=((lambda v, p: v["z"], 4),
           (lambda v, p: v["b"], 1),
           None),
    ),
    8: dict(
        const_exp=-9, prefix=(1, 1),
        params=FAMILIES[8]["params"], derived=FAMILIES[8]["derived"],
        chi=FAMILIES[8]["chi"],
        c=(lambda v, p: v["b"], 2),
        s=((lambda v, p: -v["a"] * v["b"] * (1 - v["z"]), 3),
           (lambda v, p: v["a"], 1),
           None),
    ),
    9: dict(
        const_exp=-6, prefix=(2, 1),
        params=FAMILIES[9]["params"], derived=FAMILIES[9]["derived"],
        chi=FAMILIES[9]["chi"],
        c=(lambda v, p: v["a"], 1),
        s=((lambda v, p: -v["b"], 1),
           None,
           (lambda v, p: v["x"], 1)),
    ),
    10: dict(
        const_exp=-6, prefix=(2, 2),
        params=FAMILIES[10]["params"], derived=FAMILIES[10]["derived"],
        chi=FAMILIES[10]["chi"],
        c=(lambda v, p: v["a"], 2),
        s=((lambda v, p: -v["b"], 1), None, None),
    ),
    11: dict(
        const_exp=-10, prefix=(0, -1),
        params=FAMILIES[11]["params"], derived=FAMILIES[11]["derived"],
        chi=FAMILIES[11]["chi"],
        c=(lambda v, p: v["b"], 1),
        s=((lambda v, p: v["z"], 4),
           (lambda v, p: v["x"] * v["b"] + v["a"] * p, 3),
           (lambda v, p: -v["x"], 2)),
    ),
    12: dict(
        const_exp=-12, prefix=(1, -1),
        params=FAMILIES[12]["params"], derived=FAMILIES[12]["derived"],
        chi=FAMILIES[12]["chi"],
        c=(lambda v, p: v["a"], 1),
        s=((lambda v, p: v["a"] * (v["b"] * (1 - v["z"]) * p - v["y"]), 4),
           (lambda v, p: v["y"], 3),
           (lambda v, p: -v["ai"] * (v["y"] + v["b"] * p), 2)),
    ),
    13: dict(
        const_exp=-6, prefix=(2, -1),
        params=FAMILIES[13]["params"], derived=FAMILIES[13]["derived"],
        chi=FAMILIES[13]["chi"],
        c=None,
        s=((lambda v, p: v["b"] * (1 - v["x"]), 1),
           (lambda v, p: v["a"], 2),
           (lambda v, p: v["a"] * v["a"] * v["bi"], 3)),
    ),
    14: dict(
        const_exp=-6, prefix=(2, -2),
        params=FAMILIES[14]["params"], derived=FAMILIES[14]["derived"],
        chi=FAMILIES[14]["chi"],
        c=None,
        s=((lambda v, p: -v["b"], 1),
           (lambda v, p: v["a"], 2),
           (lambda v, p: v["x"], 4)),
    ),
}


def require_odd_prime(p: int) -> None:
    if p == 2:
        raise LevelError("the quadratic twisting character needs an odd prime")
    d = 2
    while d * d <= p:
        if p % d == 0:
            raise LevelError(f"{p} is not prime")
        d += 1
    if p < 2:
        raise LevelError(f"{p} is not prime")


def family_size(i: int, p: int) -> int:
    require_odd_prime(p)
    fam = FAMILIES[i]
    size = 1
    for _, exp, kind in fam["params"]:
        size *= domain_size(p, exp, kind)
    return size


def scalar_values(fam: dict, p: int, values: dict[str, int]) -> dict[str, int]:
    """Complete a parameter assignment with canonical modular inverses."""
    v = dict(values)
    for name, fn, exp in fam["derived"]:
        mod = p ** exp
        v[name] = pow(int(fn(v, p)) % mod, -1, mod)
    return v


def iter_param_tuples(fam: dict, p: int):
    """Cartesian product of parameter domains, slow reference order."""
    names = [name for name, _, _ in fam["params"]]
    doms = [domain_list(p, exp, kind) for _, exp, kind in fam["params"]]

    def rec(idx, acc):
        if idx == len(names):
            yield dict(zip(names, acc))
            return
        for val in doms[idx]:
            yield from rec(idx + 1, acc + [val])

    yield from rec(0, [])


def theorem_monomials(i: int, p: int):
    """Slow reference enumeration of (chi_sign, Q, P) for family i.

    Q = ((q11, q12), (q12, q22)) and P = ((alpha, gamma), (0, beta)) as exact
    Fractions.  chi_sign is the Legendre value of the character argument.
    """
    from .characters import char_value

    require_odd_prime(p)
    fam = FAMILIES[i]
    q11s, q12s, q22s = fam["q"]
    alpha_e, beta_e, gamma_s = fam["p_shape"]
    for raw in iter_param_tuples(fam, p):
        v = scalar_values(fam, p, raw)
        sign = char_value(p, int(fam["chi"](v)))
        if sign == 0:
            continue

        def entry(spec):
            if spec is None:
                return Fraction(0)
            fn, e = spec
            return Fraction(int(fn(v, p)), p ** e)

        q11, q12, q22 = entry(q11s), entry(q12s), entry(q22s)
        gamma = entry(gamma_s)
        alpha = Fraction(p) ** alpha_e
        beta = Fraction(p) ** beta_e
        yield sign, ((q11, q12), (q12, q22)), ((alpha, gamma), (Fraction(0), beta))


def monomial_matrix(q, pmat) -> tuple:
    """4x4 entries of U(Q) A(P) in the J realization, P upper triangular."""
    (q11, q12), (_, q22) = q
    (alpha, gamma), (_, beta) = pmat
    inv_a = 1 / alpha
    inv_b = 1 / beta
    w = -gamma * inv_a * inv_b          # t(P)^{-1} lower-left entry
    return (
        (alpha, gamma, q11 * inv_a + q12 * w, q12 * inv_b),
        (0, beta, q12 * inv_a + q22 * w, q22 * inv_b),
        (0, 0, inv_a, 0),
        (0, 0, w, inv_b),
    )


def monomial_inverse_matrix(q, pmat) -> tuple:
    """4x4 entries of (U(Q) A(P))^-1 = A(P^-1) U(-Q), P upper triangular."""
    (q11, q12), (_, q22) = q
    (alpha, gamma), (_, beta) = pmat
    ia, ib = 1 / alpha, 1 / beta
    w = -gamma * ia * ib                 # P^{-1} upper-right entry
    # -P^{-1} Q with P^{-1} = [[ia, w], [0, ib]]
    b11 = -(ia * q11 + w * q12)
    b12 = -(ia * q12 + w * q22)
    b21 = -(ib * q12)
    b22 = -(ib * q22)
    return (
        (ia, w, b11, b12),
        (0, ib, b21, b22),
        (0, 0, alpha, 0),
        (0, 0, gamma, beta),
    )


def corollary_matrix(i: int, p: int, v: dict) -> tuple:
    """4x4 entries of the translation-form element for one parameter tuple."""
    fam = COR_FAMILIES[i]
    ie, jt = fam["prefix"]
    pe = Fraction(p)

    def entry(spec):
        if spec is None:
            return Fraction(0)
        fn, e = spec
        return Fraction(int(fn(v, p)), p ** e)

    c = entry(fam["c"])
    s11, s12, s22 = (entry(s) for s in fam["s"])
    # A(P_c) U(S) with P_c = [[p^-ie, p^-ie * c], [0, p^-jt]]
    a11 = pe ** (-ie)
    a22 = pe ** (-jt)
    # t(P_c)^{-1} = [[p^ie, 0], [-c p^ie... ]] computed directly:
    det = a11 * a22
    t11 = a22 / det
    t21 = -(a11 * c) / det
    t22 = a11 / det
    # upper-right block = P_c * S
    b11 = a11 * s11 + a11 * c * s12
    b12 = a11 * s12 + a11 * c * s22
    b21 = a22 * s12
    b22 = a22 * s22
    return (
        (a11, a11 * c, b11, b12),
        (0, a22, b21, b22),
        (0, 0, t11, 0),
        (0, 0, t21, t22),
    )


def corollary_monomials(i: int, p: int):
    """Slow reference enumeration of (chi_sign, matrix) for the translation form."""
    from .characters import char_value

    require_odd_prime(p)
    fam = COR_FAMILIES[i]
    for raw in iter_param_tuples(fam, p):
        v = scalar_values(fam, p, raw)
        sign = char_value(p, int(fam["chi"](v)))
        if sign == 0:
            continue
        yield sign, corollary_matrix(i, p, v)


def family_constant(i: int, p: int) -> Fraction:
    return Fraction(p) ** FAMILIES[i]["const_exp"]


def corollary_constant(i: int, p: int) -> Fraction:
    return Fraction(p) ** COR_FAMILIES[i]["const_exp"]
