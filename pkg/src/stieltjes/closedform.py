"""Closed-form series: Catalan numbers, the S/T families, and the mod-4 right-hand sides."""

from __future__ import annotations

from dataclasses import dataclass

from .ring import ZZ, Domain, Poly, Series, Zmod, series_sqrt_exact, substitute_power

__all__ = [
    "AuxiliaryFamily",
    "RouteDisagreement",
    "catalan_mod4",
    "catalan_numbers",
    "phi_series",
    "auxiliary_poly",
    "auxiliary_series",
    "infinite_level",
    "verify_section2_equalities",
    "theorem1_rhs",
    "theorem2_rhs",
    "theorem2_routes",
    "s_infinity_identities",
    "s_infinity_sides",
    "sqrt_one_minus_4x_phi",
    "paperfolding_lemma_forms",
    "rudin_shapiro_lemma_forms",
]

MOD4 = Zmod(4)


class RouteDisagreement(ArithmeticError):
    """The two constructions of sqrt(1 - 4x phi) disagree mod 4."""


def catalan_mod4(n: int) -> int:
    """C_n mod 4 from the binary shape of n + 1."""
    if n < 0:
        raise ValueError("n must be >= 0")
    ones = bin(n + 1).count("1")
    return {1: 1, 2: 2}.get(ones, 0)


def catalan_numbers(N: int) -> list[int]:
    """C_0..C_N via C_{n+1} = C_n * 2(2n+1) / (n+2)."""
    out = [1]
    for n in range(N):
        out.append(out[-1] * 2 * (2 * n + 1) // (n + 2))
    return out


def phi_series(N: int, domain: Domain = ZZ) -> Series:
    """Catalan generating function to order N, computed over Z then reduced."""
    return Series(catalan_numbers(N), N, ZZ).reduce(domain)


@dataclass(frozen=True)
class AuxiliaryFamily:
    kind: str
    level: int | None
    order: int


def _exponents(kind: str, level: int) -> list[int]:
    if kind == "S":
        return [2**i for i in range(level + 1)]
    if kind == "S_even":
        return [4**i for i in range(level + 1)]
    if kind == "S_odd":
        return [2 * 4**i for i in range(level + 1)]
    if kind == "T":
        return [2**i + 2**k for i in range(3, level + 1) for k in range(2, i)]
    raise ValueError(f"unknown auxiliary family {kind!r}")


def auxiliary_poly(kind: str, level: int, domain: Domain = MOD4) -> Poly:
    """Finite-level member of S, S_even, S_odd or T as a polynomial."""
    if level < 0:
        raise ValueError(f"level must be >= 0, got {level}")
    if kind == "T" and level < 2:
        raise ValueError("T_n is defined for n >= 2")
    exps = _exponents(kind, level)
    if not exps:
        return Poly.zero(domain)
    coeffs = [0] * (max(exps) + 1)
    for e in exps:
        coeffs[e] += 1
    return Poly(coeffs, domain)


def infinite_level(N: int) -> int:
    """A level whose finite sum already contains every exponent <= N."""
    return max(N, 1).bit_length() + 1


def auxiliary_series(kind: str, level: int | None, N: int, domain: Domain = MOD4) -> Series:
    """Level-n member truncated to order N; ``level=None`` means the infinite sum."""
    if N < 1:
        raise ValueError("order must be >= 1")
    if level is None:
        level = infinite_level(N)
    return auxiliary_poly(kind, level, domain).to_series(N)


# -- identities among the S/T families -------------------------------------------

def _x(e: int, N: int, d: Domain = MOD4, c: int = 1) -> Series:
    return Series.from_terms({e: c}, N, d)


def verify_section2_equalities(n: int, N: int, *, S=None, T=None) -> dict[str, bool]:
    """Four mod-4 identities linking S_{n-1}, S_n, S_{n+1}, T_{n-1}, T_n.

    ``S`` and ``T`` may be replaced by other callables ``(level, N) -> Series``
    to run negative controls.
    """
    if n < 3:
        raise ValueError("level must be >= 3 (T_{n-1} needs n-1 >= 2)")
    if N < 2 ** (n + 1):
        raise ValueError(f"order {N} too small for level {n}; need {2 ** (n + 1)}")
    S = S or (lambda k, M: auxiliary_series("S", k, M))
    T = T or (lambda k, M: auxiliary_series("T", k, M))
    x = _x(1, N)
    xn = _x(2**n, N)
    Sn, Sn1, Snm1 = S(n, N), S(n + 1, N), S(n - 1, N)
    two = lambda s: s * 2  # noqa: E731
    square = two(Sn * Sn) == two(Sn1 - x) and two(Sn * Sn) == two(substitute_power(Sn, 2))
    adjacent = two(Snm1 * Sn) == two(Sn1 - x) + two(xn * Sn)
    t_step = two(T(n, N)) == two(T(n - 1, N)) + two(xn * (Snm1 - x - _x(2, N)))
    low = Series.from_terms({1: 3, 2: 2, 3: 2, 4: 2}, N, MOD4)
    expansion = Sn * Sn == low + two(Series.from_terms({1: 1, 2: 1}, N, MOD4) * Sn) + Sn1 + two(T(n, N))
    return {
        "square": bool(square),
        "adjacent_product": bool(adjacent),
        "t_step": bool(t_step),
        "square_expansion": bool(expansion),
    }


def theorem1_rhs(N: int) -> Series:
    """2x + (3x + 2x^3) phi(x) mod 4."""
    if N < 1:
        raise ValueError("order must be >= 1")
    phi = phi_series(N, MOD4)
    return _x(1, N, c=2) + Series.from_terms({1: 3, 3: 2}, N, MOD4) * phi


def _theorem2_base(N: int) -> Series:
    phi = phi_series(N, MOD4)
    return Series.from_terms({1: 1, 2: 2, 3: 2}, N, MOD4) + Series.from_terms({1: 3, 3: 2}, N, MOD4) * phi


def sqrt_one_minus_4x_phi(N: int) -> tuple[Series, bool]:
    """Exact sqrt(1 - 4x phi(x)) over Q and its integrality flag."""
    phi = phi_series(N, ZZ)
    return series_sqrt_exact(Series.one(N, ZZ) - phi.shift(1) * 4)


def theorem2_routes(N: int) -> tuple[Series, Series, bool]:
    """Both constructions of the Rudin-Shapiro right-hand side.

    Route (a) uses the exact square root reduced mod 4, route (b) replaces
    the root by ``1 + 2 S_even`` mod 4.  Returns ``(a, b, integral)``.
    """
    if N < 1:
        raise ValueError("order must be >= 1")
    root, integral = sqrt_one_minus_4x_phi(N)
    base = _theorem2_base(N)
    if not integral:
        raise RouteDisagreement("sqrt(1 - 4x phi) has a non-integer coefficient")
    route_a = base + root.reduce(MOD4).shift(1)
    se = auxiliary_series("S_even", None, N)
    route_b = base + (Series.one(N, MOD4) + se * 2).shift(1)
    return route_a, route_b, integral


def theorem2_rhs(N: int) -> Series:
    """x + 2x^2 + 2x^3 + (3x + 2x^3) phi + x sqrt(1 - 4x phi), mod 4."""
    a, b, integral = theorem2_routes(N)
    if a != b:
        raise RouteDisagreement(f"routes disagree first at x^{a.first_difference(b)}")
    return a


def s_infinity_sides(N: int, phi: Series | None = None) -> dict[str, tuple[Series, Series]]:
    """Left and right sides of the three mod-4 relations between S_inf, T_inf and phi.

    The first is stated after multiplying through by x.
    """
    if N < 8:
        raise ValueError("order must be >= 8")
    phi = phi if phi is not None else phi_series(N, MOD4)
    S = auxiliary_series("S", None, N)
    T = auxiliary_series("T", None, N)
    x = _x(1, N)
    xphi = phi.shift(1)
    rhs20 = S + T * 2 + (x * (Series.one(N, MOD4) + x) * S) * 2 + Series.from_terms({2: 2, 3: 2, 4: 2}, N, MOD4)
    return {
        "phi_from_s": (xphi, rhs20),
        "squares_match": (S * S, xphi * xphi),
        "fourth_power": (S, xphi**4 + x + _x(2, N)),
    }


def s_infinity_identities(N: int, phi: Series | None = None) -> dict[str, bool]:
    return {k: bool(a == b) for k, (a, b) in s_infinity_sides(N, phi).items()}


# -- convergent closed forms (mod 4) ----------------------------------------------
#
# Each item maps to (track, is_b, block_level, ell, rhs) and states
#   F_{2^level - ell} == rhs  (mod 4)
# where F is P, Q, P^b or Q^b.

def _p(terms: dict[int, int]) -> Poly:
    coeffs = [0] * (max(terms) + 1)
    for e, c in terms.items():
        coeffs[e] += c
    return Poly(coeffs, MOD4)


def _S(k):
    return auxiliary_poly("S", k)


def _T(k):
    return auxiliary_poly("T", k)


def _Se(k):
    return auxiliary_poly("S_even", k)


def _So(k):
    return auxiliary_poly("S_odd", k)


def _mono(e: int) -> Poly:
    return Poly.monomial(e, 1, MOD4)


def paperfolding_lemma_forms(n: int) -> dict[int, tuple[str, bool, int, int, Poly]]:
    """Closed forms for P, Q, P^b, Q^b at indices 2^n - 1, 2^n - 2 (n >= 4)."""
    if n < 4:
        raise ValueError("closed forms hold for n >= 4")
    x = _p({1: 1})
    one = _p({0: 1})
    S2, S1, T2 = _S(n - 2), _S(n - 1), _T(n - 2)
    low = _p({1: 2, 2: 2, 3: 2, 4: 2})
    head = _p({1: 3, 5: 2})
    return {
        1: ("Q", False, n, 2, one + low + _p({0: 2, 1: 2, 2: 2}) * S2 + T2 * 2),
        2: ("Q", False, n, 1, one + _p({0: 1, 1: 2}) * S2 + _mono(2 ** (n - 1)) * 3),
        3: ("P", False, n, 2, x * S2 * 2 + S1),
        4: ("P", False, n, 1, head + _p({1: 2, 3: 2}) * S2 + S1 * 2 + _p({0: 2, 1: 2}) * T2),
        5: ("Q", True, n, 2, one + low + _p({1: 2, 2: 2}) * S2 + T2 * 2),
        6: ("Q", True, n, 1, _p({0: 1, 1: 2}) + x * S2 * 2 + S1),
        7: ("P", True, n, 2, _p({1: 2}) + _p({0: 2, 1: 2}) * S2 + S1),
        8: ("P", True, n, 1, head + _p({0: 2, 3: 2}) * S2 + _p({0: 2, 1: 2}) * T2),
    }


def rudin_shapiro_lemma_forms(j: int) -> dict[int, tuple[str, bool, int, int, Poly]]:
    """Closed forms for the Rudin-Shapiro convergents at 2^{2j}, 2^{2j+1} (j >= 2)."""
    if j < 2:
        raise ValueError("closed forms hold for j >= 2")
    x = _p({1: 1})
    one = _p({0: 1})
    ev, od = 2 * j, 2 * j + 1
    Sa, Sb = _S(2 * j - 2), _S(2 * j - 1)
    Ta, Tb = _T(2 * j - 2), _T(2 * j - 1)
    top_a, top_b = _mono(2 ** (2 * j - 1)), _mono(2 ** (2 * j))
    opx2 = _p({0: 2, 1: 2})
    c25 = _p({2: 2, 5: 2})
    three = _p({0: 3, 3: 2})
    one2 = _p({0: 1, 3: 2})
    x3 = _p({3: 2})
    x2 = x * 2
    return {
        1: ("Q", False, ev, 2, one + x2 + opx2 * Sa),
        2: ("Q", False, od, 2, one + opx2 * Sb),
        3: ("Q", False, ev, 1, one + c25 + x2 * _So(j - 2) + three * Sa + opx2 * Ta + top_a),
        4: ("Q", False, od, 1, one + c25 + x2 * _Se(j - 1) + three * Sb + opx2 * Tb + top_b),
        5: ("P", False, ev, 2, c25 + one2 * Sa + opx2 * Ta + x2 * _So(j - 2) + top_a),
        6: ("P", False, od, 2, c25 + one2 * Sb + opx2 * Tb + x2 * _Se(j - 1) + top_b),
        7: ("P", False, ev, 1, _p({1: 1, 2: 2, 3: 2, 4: 2, 5: 2}) + x3 * Sa + x2 * Ta + x2 * _So(j - 2)),
        8: ("P", False, od, 1, _p({1: 1, 3: 2, 4: 2, 5: 2}) + x3 * Sb + x2 * Tb + x2 * _Se(j - 1)),
        9: ("Q", True, ev, 2, one + opx2 * Sa),
        10: ("Q", True, od, 2, one + x2 + opx2 * Sb),
        11: ("Q", True, ev, 1, one + c25 + three * Sa + opx2 * Ta + x2 * _Se(j - 1) + top_a),
        12: ("Q", True, od, 1, one + c25 + three * Sb + opx2 * Tb + x2 * _So(j - 1) + top_b),
        13: ("P", True, ev, 2, c25 + one2 * Sa + opx2 * Ta + x2 * _Se(j - 1) + top_a),
        14: ("P", True, od, 2, c25 + one2 * Sb + opx2 * Tb + x2 * _So(j - 1) + top_b),
        15: ("P", True, ev, 1, _p({1: 1, 3: 2, 4: 2, 5: 2}) + x2 * _Se(j - 1) + x3 * Sa + x2 * Ta),
        16: ("P", True, od, 1, _p({1: 1, 2: 2, 3: 2, 4: 2, 5: 2}) + x2 * _So(j - 1) + x3 * Sb + x2 * Tb),
    }
