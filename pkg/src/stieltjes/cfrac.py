"""Stieltjes continued fractions: convergents, b-blocks, coefficient tables.

The n-th convergent is read off the product

    [[0, c_0 x], [1, 1]] @ [[0, c_1 x], [1, 1]] @ ... @ [[0, c_n x], [1, 1]]
        = [[P_{n-1}, P_n], [Q_{n-1}, Q_n]]

so ``P_{-1} = 0`` and ``Q_{-1} = 1`` seed the three-term recurrence
``F_n = F_{n-1} + c_n x F_{n-2}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .ring import ZZ, Domain, Poly, Series, series_inverse
from .seq import ResourceError, as_values, get_sequence

__all__ = [
    "ConvergentPair",
    "CoefficientTable",
    "StabilizationError",
    "convergents",
    "convergent",
    "matrix_product_convergents",
    "block_product",
    "b_convergents",
    "expand_stieltjes",
    "coefficient_table",
    "table_to_text",
    "table_from_text",
    "convergent_to_text",
    "convergent_from_text",
    "MAX_TABLE_ROWS",
    "MAX_TABLE_COLS",
]

MAX_TABLE_ROWS = 4096
MAX_TABLE_COLS = 2048


class StabilizationError(ArithmeticError):
    """Consecutive convergents disagree below the order they must share."""


@dataclass(frozen=True)
class ConvergentPair:
    index: int
    P: Poly
    Q: Poly
    domain: Domain


def _elementary_step(prev2: np.ndarray, prev1: np.ndarray, c: int, d: Domain) -> np.ndarray:
    # F_n = F_{n-1} + c x F_{n-2}
    n = max(len(prev1), len(prev2) + 1)
    out = d.zeros(n)
    out[: len(prev1)] += prev1
    out[1 : len(prev2) + 1] += c * prev2
    return d.normalize(out)


def convergents(c, n_max: int, domain: Domain = ZZ) -> Iterator[ConvergentPair]:
    """Yield ``(P_n, Q_n)`` for ``n = 0..n_max`` via the three-term recurrence."""
    vals = as_values(c, n_max + 1)
    d = domain
    p_prev, p_cur = d.zeros(0), d.array([0, int(vals[0])])
    q_prev, q_cur = d.array([1]), d.array([1])
    yield ConvergentPair(0, Poly(p_cur, d, _raw=True), Poly(q_cur, d, _raw=True), d)
    for n in range(1, n_max + 1):
        cn = int(vals[n])
        p_prev, p_cur = p_cur, _elementary_step(p_prev, p_cur, cn, d)
        q_prev, q_cur = q_cur, _elementary_step(q_prev, q_cur, cn, d)
        yield ConvergentPair(n, Poly(p_cur, d, _raw=True), Poly(q_cur, d, _raw=True), d)


def convergent(c, n: int, domain: Domain = ZZ) -> ConvergentPair:
    for pair in convergents(c, n, domain):
        pass
    return pair


def _matmul(a, b):
    return (
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    )


def _factor(ci: int, d: Domain):
    return (Poly.zero(d), Poly.monomial(1, ci, d), Poly.one(d), Poly.one(d))


def block_product(values, start: int, stop: int, domain: Domain = ZZ) -> tuple[Poly, Poly, Poly, Poly]:
    """Full 2x2 product of the factors for indices ``start..stop-1``.

    Returned row-major: ``(top-left, top-right, bottom-left, bottom-right)``.
    The product is formed by a balanced split so it shares no code path
    with :func:`convergents`.
    """
    if stop <= start:
        raise ValueError("empty block")
    vals = as_values(values, stop)

    def prod(lo, hi):
        if hi - lo == 1:
            return _factor(int(vals[lo]), domain)
        mid = (lo + hi) // 2
        return _matmul(prod(lo, mid), prod(mid, hi))

    return prod(start, stop)


def matrix_product_convergents(c, n: int, domain: Domain = ZZ) -> tuple[Poly, Poly, Poly, Poly]:
    """``(P_{n-1}, P_n, Q_{n-1}, Q_n)`` from the explicit matrix product."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return block_product(c, 0, n + 1, domain)


def b_convergents(seq_name: str, n: int, domain: Domain = ZZ) -> tuple[Poly, Poly, Poly, Poly]:
    """``(P^b_{2^n-2}, P^b_{2^n-1}, Q^b_{2^n-2}, Q^b_{2^n-1})``.

    The product runs over the partial quotients with indices ``2^n .. 2^{n+1}-1``.
    """
    if n < 2:
        raise ValueError("b-convergents are defined for n >= 2")
    seq = get_sequence(seq_name, 2 ** (n + 1))
    return block_product(seq, 2**n, 2 ** (n + 1), domain)


def _expand(pair: ConvergentPair, order: int, domain: Domain) -> Series:
    q = pair.Q.reduce(domain).to_series(order)
    p = pair.P.reduce(domain).to_series(order)
    return p * series_inverse(q)


def expand_stieltjes(c, order: int, domain: Domain = ZZ) -> Series:
    """Coefficients ``x^0..x^order`` of the infinite continued fraction.

    Convergent ``order`` already agrees with the limit through ``x^{order+1}``;
    convergent ``order+1`` is expanded as well and must match.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    vals = as_values(c, order + 2)
    pairs = list(convergents(vals, order + 1, domain))
    main = _expand(pairs[order], order, domain)
    check = _expand(pairs[order + 1], order, domain)
    if main != check:
        k = main.first_difference(check)
        raise StabilizationError(f"convergents {order} and {order + 1} differ at x^{k}")
    return main


@dataclass(frozen=True)
class CoefficientTable:
    """Dense grid ``entries[n, i]`` of the ``x^i`` coefficient of ``F_n``."""

    track: str
    domain: Domain
    entries: np.ndarray

    @property
    def n_max(self) -> int:
        return self.entries.shape[0] - 1

    @property
    def i_max(self) -> int:
        return self.entries.shape[1] - 1

    def column(self, i: int) -> np.ndarray:
        return self.entries[:, i]

    def row(self, n: int) -> np.ndarray:
        return self.entries[n]


def coefficient_table(c, n_max: int, i_max: int, domain: Domain = ZZ, track: str = "Q") -> CoefficientTable:
    """Fill ``a_{n,i}`` with ``a_{n,i} = a_{n-1,i} + c_n a_{n-2,i-1}``.

    Rows 0 and 1 are the initial ``F_0, F_1`` of the chosen track.
    """
    if track not in ("P", "Q"):
        raise ValueError("track must be 'P' or 'Q'")
    if n_max > MAX_TABLE_ROWS or i_max > MAX_TABLE_COLS:
        raise ResourceError(f"table up to ({n_max}, {i_max}) exceeds ({MAX_TABLE_ROWS}, {MAX_TABLE_COLS})")
    vals = as_values(c, max(n_max, 1) + 1)
    d = domain
    a = np.empty((n_max + 1, i_max + 1), dtype=np.int64 if d._native else object)
    a[:] = 0
    c0, c1 = int(vals[0]), int(vals[1])
    if track == "P":
        init = ([0, c0], [0, c0])
    else:
        init = ([1], [1, c1])
    for n in range(min(2, n_max + 1)):
        for i, v in enumerate(init[n][: i_max + 1]):
            a[n, i] = v
        a[n] = d.normalize(a[n])
    for n in range(2, n_max + 1):
        cn = int(vals[n])
        a[n, 0] = a[n - 1, 0]
        a[n, 1:] = a[n - 1, 1:] + cn * a[n - 2, :-1]
        a[n] = d.normalize(a[n])
    a.flags.writeable = False
    return CoefficientTable(track, d, a)


# -- text formats ---------------------------------------------------------------

def table_to_text(table: CoefficientTable) -> str:
    return "\n".join(" ".join(str(int(v)) for v in row) for row in table.entries)


def table_from_text(text: str, track: str = "Q", domain: Domain = ZZ) -> CoefficientTable:
    rows = [[int(t) for t in line.split()] for line in text.strip().splitlines()]
    arr = np.array(rows, dtype=np.int64 if domain._native else object)
    return CoefficientTable(track, domain, arr)


def convergent_to_text(pair: ConvergentPair) -> str:
    from .ring import poly_to_text

    return f"P: {poly_to_text(pair.P)}\nQ: {poly_to_text(pair.Q)}"


def convergent_from_text(text: str, index: int = -1, domain: Domain | None = None) -> ConvergentPair:
    from .ring import poly_from_text

    lines = dict(line.split(":", 1) for line in text.strip().splitlines())
    P = poly_from_text(lines["P"], domain)
    Q = poly_from_text(lines["Q"], domain)
    return ConvergentPair(index, P, Q, P.domain)
