"""Instance-by-instance checking of the convergent identities and closed forms.

Every check produces :class:`Instance` records; a failing instance carries
the lowest exponent where the two sides differ and both coefficients there.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable

import gmpy2
import numpy as np

from . import closedform as cf
from .cfrac import b_convergents, block_product, coefficient_table, convergents, expand_stieltjes
from .ring import ZZ, Domain, Poly, Series, Zmod, negate_argument
from .seq import KernelReport, SignSequence, get_sequence, kernel_estimate

MOD4 = Zmod(4)

__all__ = [
    "Instance",
    "VerificationReport",
    "verify_paperfolding_lemma",
    "verify_rs_lemma",
    "verify_pb_relations",
    "hankel_direct",
    "hankel_heilermann",
    "double_running_product",
    "verify_heilermann",
    "column_automaticity_probe",
    "stieltjes_kernel_probe",
    "squares_control_probe",
    "verify_columns",
    "verify_theorem",
    "verify_section2",
    "verify_s_infinity",
    "verify_catalan",
    "catalan_convolution",
    "TARGETS",
    "run_target",
]


@dataclass(frozen=True)
class Instance:
    target: str
    item: object
    param: object
    passed: bool
    exponent: int | None = None
    lhs: object = None
    rhs: object = None

    def line(self) -> str:
        s = f"{self.target} item={self.item} param={self.param}: {'PASS' if self.passed else 'FAIL'}"
        if not self.passed and self.exponent is not None:
            s += f" (x^{self.exponent}: {self.lhs} != {self.rhs})"
        return s

    def record(self) -> dict:
        rec = asdict(self)
        rec["status"] = "PASS" if self.passed else "FAIL"
        del rec["passed"]
        for k in ("lhs", "rhs", "param", "item"):
            v = rec[k]
            if v is not None and not isinstance(v, (int, str)):
                rec[k] = str(v)
        return rec


@dataclass
class VerificationReport:
    target: str
    instances: list[Instance] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(i.passed for i in self.instances)

    @property
    def first_failure(self) -> Instance | None:
        return next((i for i in self.instances if not i.passed), None)

    def add(self, inst: Instance) -> None:
        self.instances.append(inst)

    def lines(self) -> list[str]:
        return [i.line() for i in self.instances]

    def records(self) -> list[dict]:
        return [i.record() for i in self.instances]

    def to_jsonl(self) -> str:
        return "\n".join(json.dumps(r, sort_keys=True) for r in self.records())


def _compare(target, item, param, lhs, rhs) -> Instance:
    """Coefficientwise comparison of two Polys or two Series."""
    a = np.asarray(lhs.coeffs)
    b = np.asarray(rhs.coeffs)
    n = max(len(a), len(b))
    if isinstance(lhs, Series):
        n = min(lhs.order, rhs.order) + 1
    pa = np.zeros(n, dtype=object)
    pb = np.zeros(n, dtype=object)
    pa[: min(n, len(a))] = a[:n]
    pb[: min(n, len(b))] = b[:n]
    diff = np.flatnonzero(pa != pb)
    if len(diff) == 0:
        return Instance(target, item, param, True)
    e = int(diff[0])
    return Instance(target, item, param, False, e, int(pa[e]), int(pb[e]))


# -- convergent closed forms ----------------------------------------------------------

def _convergents_at(c, indices: Iterable[int], domain: Domain) -> dict[int, tuple[Poly, Poly]]:
    want = set(indices)
    out = {}
    for pair in convergents(c, max(want), domain):
        if pair.index in want:
            out[pair.index] = (pair.P, pair.Q)
    return out


def _b_block(seq_name: str, level: int, domain: Domain):
    if level >= 2:
        return b_convergents(seq_name, level, domain)
    # level 1 lies outside the b-convergent definition but the product is the same
    seq = get_sequence(seq_name, 2 ** (level + 1))
    return block_product(seq, 2**level, 2 ** (level + 1), domain)


def _pick(block, track: str, ell: int) -> Poly:
    # block = (P_{2^L-2}, P_{2^L-1}, Q_{2^L-2}, Q_{2^L-1})
    return block[(0 if track == "P" else 2) + (1 if ell == 1 else 0)]


def _check_lemma(target: str, seq_name: str, params, forms_for, label: str) -> VerificationReport:
    params = sorted(params)
    forms = {p: forms_for(p) for p in params}
    levels = {f[2] for fs in forms.values() for f in fs.values()}
    seq = get_sequence(seq_name, 2 ** (max(levels) + 1))
    conv = _convergents_at(seq, [2**L - e for L in levels for e in (1, 2)], MOD4)
    blocks = {L: _b_block(seq_name, L, MOD4) for L in levels}
    report = VerificationReport(target)
    for p in params:
        for item, (track, is_b, level, ell, rhs) in forms[p].items():
            if is_b:
                lhs = _pick(blocks[level], track, ell)
            else:
                P, Q = conv[2**level - ell]
                lhs = P if track == "P" else Q
            report.add(_compare(target, item, f"{label}={p}", lhs, rhs))
    return report


def verify_paperfolding_lemma(n_range: Iterable[int] = range(4, 11), forms=None) -> VerificationReport:
    """All 8 paperfolding closed forms (mod 4) for each n."""
    return _check_lemma("lemma-pf", "paperfolding", n_range, forms or cf.paperfolding_lemma_forms, "n")


def verify_rs_lemma(j_range: Iterable[int] = range(2, 6), forms=None) -> VerificationReport:
    """All 16 Rudin-Shapiro closed forms (mod 4) for each j."""
    return _check_lemma("lemma-rs", "rudin-shapiro", j_range, forms or cf.rudin_shapiro_lemma_forms, "j")


def verify_pb_relations(
    seq_name: str,
    n_range: Iterable[int] = range(2, 11),
    b_block: Callable[[int, Domain], tuple] | None = None,
) -> VerificationReport:
    """Exact splitting identities over Z for 2^n - 1 and 2^n - 2.

    Items name the left side: ``P``, ``Q`` at ``2^n - l`` split through the
    previous b-block; ``Pb``, ``Qb`` at level ``n`` rebuilt from level ``n-1``.
    ``b_block(level, domain)`` may replace the b-block source (negative controls).
    """
    n_range = sorted(n_range)
    if n_range[0] < 2:
        raise ValueError("splitting identities need n >= 2")
    b_block = b_block or (lambda L, d: _b_block(seq_name, L, d))
    pf = seq_name == "paperfolding"
    target = f"pb-relations-{'pf' if pf else 'rs'}"
    top = max(n_range)
    seq = get_sequence(seq_name, 2 ** (top + 1))
    idx = {2**k - e for k in range(1, top + 1) for e in (1, 2)}
    conv = _convergents_at(seq, idx, ZZ)
    report = VerificationReport(target)
    for n in n_range:
        half = 2 ** (n - 1)
        Pm2, Qm2 = conv[half - 2]
        Pm1, Qm1 = conv[half - 1]
        prev = b_block(n - 1, ZZ)
        cur = b_block(n, ZZ)
        for ell in (1, 2):
            Pb, Qb = _pick(prev, "P", ell), _pick(prev, "Q", ell)
            P, Q = conv[2**n - ell]
            param = f"n={n},l={ell}"
            report.add(_compare(target, "P", param, P, Pm2 * Pb + Pm1 * Qb))
            report.add(_compare(target, "Q", param, Q, Qm2 * Pb + Qm1 * Qb))
            if pf:
                rhs_p = P + Qb * (Pm2 * 2 - Pm1 * 2)
                rhs_q = Q + Qb * (Qm2 * 2 - Qm1 * 2)
            else:
                nPb, nQb = negate_argument(Pb), negate_argument(Qb)
                rhs_p = Pm2 * nPb + Pm1 * nQb
                rhs_q = Qm2 * nPb + Qm1 * nQb
            report.add(_compare(target, "Pb", param, _pick(cur, "P", ell), rhs_p))
            report.add(_compare(target, "Qb", param, _pick(cur, "Q", ell), rhs_q))
    return report


# -- Hankel determinants ----------------------------------------------------------

def hankel_direct(b, n: int) -> int:
    """det(b_{i+j})_{0<=i,j<n} by fraction-free (Bareiss) elimination."""
    if n < 1:
        raise ValueError("order must be >= 1")
    if len(b) < 2 * n - 1:
        raise ValueError(f"need {2 * n - 1} terms, have {len(b)}")
    a = [[int(b[i + j]) for j in range(n)] for i in range(n)]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def hankel_heilermann(a, n: int) -> int:
    """a_0^n (a_1 a_2)^{n-1} ... (a_{2n-3} a_{2n-2})."""
    vals = [int(v) for v in (a.values(2 * n - 1) if isinstance(a, SignSequence) else a[: 2 * n - 1])]
    if len(vals) < 2 * n - 1:
        raise ValueError(f"need {2 * n - 1} partial quotients")
    out = vals[0] ** n
    for k in range(1, n):
        out *= (vals[2 * k - 1] * vals[2 * k]) ** (n - k)
    return out


def double_running_product(a, n_max: int) -> list[int]:
    """H_1..H_{n_max} as running products of b_k = a_0 a_1 ... a_{2k}."""
    vals = [int(v) for v in a[: 2 * n_max - 1]]
    singles = np.cumprod(vals)
    b = singles[0::2]
    return [int(v) for v in np.cumprod(b[:n_max])]


def expansion_hankel(a, n: int) -> int:
    """Hankel determinant of the expansion coefficients of Stiel_a(x)/x."""
    s = expand_stieltjes(a, 2 * n, ZZ)
    return hankel_direct(s.coeffs[1:], n)


def verify_heilermann(samples: int = 100, n_max: int = 8, pf_n_max: int = 64, seed: int = 0) -> VerificationReport:
    report = VerificationReport("heilermann")
    rng = np.random.default_rng(seed)
    for s in range(samples):
        a = rng.choice([-1, 1], size=2 * n_max + 2)
        dets = _hankel_sequence(a, n_max)
        for n in range(1, n_max + 1):
            h = hankel_heilermann(a, n)
            ok = dets[n - 1] == h
            report.add(Instance("heilermann", "random", f"sample={s},n={n}", ok, None, dets[n - 1], h))
    p = get_sequence("paperfolding", 2 * pf_n_max + 2)
    dets = _hankel_sequence(p.prefix, pf_n_max)
    runs = double_running_product(p.prefix, pf_n_max)
    for n in range(1, pf_n_max + 1):
        h = hankel_heilermann(p, n)
        ok = dets[n - 1] == h == runs[n - 1]
        report.add(Instance("heilermann", "paperfolding", f"n={n}", ok, None, dets[n - 1], runs[n - 1]))
    return report


def _hankel_sequence(a, n_max: int) -> list[int]:
    s = expand_stieltjes(a, 2 * n_max, ZZ)
    b = s.coeffs[1:]
    return [hankel_direct(b, n) for n in range(1, n_max + 1)]


# -- automaticity probes ------------------------------------------------------------

def column_automaticity_probe(
    seq_name: str,
    track: str,
    i_max: int = 8,
    n_max: int = 2**12,
    m: int = 4,
    window: int = 16,
    depth: int | None = None,
) -> list[KernelReport]:
    """2-kernel probe of each coefficient column ``(a_{n,i} mod m)_{n <= n_max}``."""
    table = coefficient_table(get_sequence(seq_name, n_max + 2), n_max, i_max, Zmod(m), track)
    if depth is None:
        depth = ((n_max + 1) // window).bit_length() - 1
    return [kernel_estimate(table.column(i), 2, depth, window) for i in range(i_max + 1)]


def stieltjes_kernel_probe(seq_name: str, length: int = 2**14, depth: int = 6, window: int = 128) -> KernelReport:
    s = expand_stieltjes(get_sequence(seq_name, length + 1), length - 1, MOD4)
    return kernel_estimate(s.coeffs, 2, depth, window)


def squares_control_probe(length: int = 2**14, depth: int = 6, window: int = 128) -> KernelReport:
    sq = np.zeros(length, dtype=np.int64)
    k = np.arange(int(np.sqrt(length - 1)) + 1)
    sq[k * k] = 1
    return kernel_estimate(sq, 2, depth, window)


def verify_columns(i_max: int = 8, n_max: int = 2**12, stiel_length: int = 2**14) -> VerificationReport:
    report = VerificationReport("columns")
    for name in ("paperfolding", "rudin-shapiro"):
        r = stieltjes_kernel_probe(name, stiel_length)
        report.add(Instance("columns", f"stiel-{name}", f"len={stiel_length}", r.saturated, None, r.size))
        for track in ("P", "Q"):
            for i, r in enumerate(column_automaticity_probe(name, track, i_max, n_max)):
                report.add(Instance("columns", f"{name}-{track}", f"i={i}", r.saturated, None, r.size))
    ctl = squares_control_probe(stiel_length)
    report.add(Instance("columns", "squares-control", f"len={stiel_length}", not ctl.saturated, None, ctl.size))
    return report


# -- series identities -----------------------------------------------

def verify_theorem(which: int, N: int, rhs: Series | None = None) -> VerificationReport:
    """Expansion of Stiel_p (1) or Stiel_r (2) against the closed form, mod 4."""
    if which not in (1, 2):
        raise ValueError("theorem must be 1 or 2")
    if N < 4:
        raise ValueError("order must be >= 4")
    name = "paperfolding" if which == 1 else "rudin-shapiro"
    lhs = expand_stieltjes(get_sequence(name, N + 2), N, MOD4)
    if rhs is None:
        rhs = cf.theorem1_rhs(N) if which == 1 else cf.theorem2_rhs(N)
    target = f"theorem{which}"
    report = VerificationReport(target)
    report.add(_compare(target, 0, f"N={N}", lhs, rhs))
    return report


def verify_section2(n_range: Iterable[int] = range(3, 9)) -> VerificationReport:
    report = VerificationReport("eqs-2-5")
    for n in n_range:
        res = cf.verify_section2_equalities(n, 2 ** (n + 1))
        for k, ok in res.items():
            report.add(Instance("eqs-2-5", k, f"n={n}", ok))
    return report


def verify_s_infinity(orders: Iterable[int] = (64, 512)) -> VerificationReport:
    report = VerificationReport("s-infinity")
    for N in orders:
        for name, (lhs, rhs) in cf.s_infinity_sides(N).items():
            report.add(_compare("s-infinity", name, f"N={N}", lhs, rhs))
    return report


def catalan_convolution(n_max: int) -> list[int]:
    """Oracle: C_{n+1} = sum_i C_i C_{n-i} over big integers.

    The sum is symmetric, so only half the products are formed.
    """
    c = np.empty(n_max + 1, dtype=object)
    c[0] = gmpy2.mpz(1)
    for n in range(n_max):
        h = (n + 1) // 2
        s = 2 * np.dot(c[:h], c[n : n - h : -1]) if h else 0
        if n % 2 == 0:
            s += c[n // 2] ** 2
        c[n + 1] = s
    return [int(v) for v in c]


def verify_catalan(n_max: int = 2000) -> VerificationReport:
    report = VerificationReport("catalan")
    exact = catalan_convolution(n_max)
    for n, cn in enumerate(exact):
        got = cf.catalan_mod4(n)
        report.add(Instance("catalan", 0, f"n={n}", got == cn % 4, None, got, cn % 4))
    return report


def _theorem_target(which):
    def run(order: int = 512):
        return [verify_theorem(which, order)]

    return run


TARGETS: dict[str, Callable[..., list[VerificationReport]]] = {
    "theorem1": _theorem_target(1),
    "theorem2": _theorem_target(2),
    "lemma-pf": lambda n_max=10: [verify_paperfolding_lemma(range(4, n_max + 1))],
    "lemma-rs": lambda j_max=5: [verify_rs_lemma(range(2, j_max + 1))],
    "pb-relations": lambda n_max=10: [
        verify_pb_relations("paperfolding", range(2, n_max + 1)),
        verify_pb_relations("rudin-shapiro", range(2, n_max + 1)),
    ],
    "eqs-2-5": lambda n_max=8: [verify_section2(range(3, n_max + 1))],
    "s-infinity": lambda order=512: [verify_s_infinity(sorted({64, order}))],
    "catalan": lambda n_max=2000: [verify_catalan(n_max)],
    "heilermann": lambda: [verify_heilermann()],
    "columns": lambda rows=2**12, i_max=8: [verify_columns(i_max, rows)],
}


def run_target(name: str, **params) -> list[VerificationReport]:
    """Run one named suite, or every suite for ``all``.

    Only parameters the suite accepts are forwarded.
    """
    if name == "all":
        out = []
        for t in TARGETS:
            out.extend(run_target(t, **params))
        return out
    try:
        fn = TARGETS[name]
    except KeyError:
        raise KeyError(f"unknown target {name!r}; known: {sorted(TARGETS) + ['all']}") from None
    import inspect

    accepted = inspect.signature(fn).parameters
    return fn(**{k: v for k, v in params.items() if k in accepted and v is not None})
