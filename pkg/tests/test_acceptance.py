"""Acceptance criteria, one test per criterion.

Each check returns ``(passed, detail)``.  Results are collected in
``RESULTS`` and printed one line per criterion at the end of the pytest
run; ``python tests/test_acceptance.py`` prints the same lines directly.
"""

import time
from pathlib import Path

import numpy as np
import pytest

from stieltjes import closedform as cf
from stieltjes.cfrac import coefficient_table, convergents, matrix_product_convergents
from stieltjes.cli import main as cli_main
from stieltjes.render import RenderSpec, render_table
from stieltjes.ring import Poly, Zmod, series_inverse
from stieltjes.verify import (
    column_automaticity_probe,
    squares_control_probe,
    stieltjes_kernel_probe,
    verify_catalan,
    verify_heilermann,
    verify_paperfolding_lemma,
    verify_pb_relations,
    verify_rs_lemma,
    verify_s_infinity,
    verify_section2,
    verify_theorem,
)

Z4 = Zmod(4)
GOLDEN = Path(__file__).parent / "golden" / "paperfolding_q_16x16.ppm"
RESULTS: dict[int, str] = {}


def _fail_text(report):
    bad = [i for i in report.instances if not i.passed]
    return f"{len(bad)} failing, first: {bad[0].line()}" if bad else "all instances pass"


def criterion_1():
    r = verify_theorem(1, 512)
    return r.passed, _fail_text(r)


def criterion_2():
    a, b, integral = cf.theorem2_routes(512)
    if not integral or a != b:
        return False, f"routes agree={a == b} integral={integral}"
    r = verify_theorem(2, 512, rhs=a)
    return r.passed, "routes agree, root integral; " + _fail_text(r)


def criterion_3():
    pf = verify_paperfolding_lemma(range(4, 11))
    rs = verify_rs_lemma(range(2, 6))
    ok = pf.passed and rs.passed and len(pf.instances) == 56 and len(rs.instances) == 64
    return ok, f"paperfolding {_fail_text(pf)}; rudin-shapiro {_fail_text(rs)}"


def criterion_4():
    reps = [verify_pb_relations(name, range(2, 11)) for name in ("paperfolding", "rudin-shapiro")]
    return all(r.passed for r in reps), "; ".join(_fail_text(r) for r in reps)


def criterion_5():
    s2 = verify_section2(range(3, 9))
    si = verify_s_infinity((64, 512))
    return s2.passed and si.passed, f"eqs 2-5: {_fail_text(s2)}; s-infinity: {_fail_text(si)}"


def criterion_6():
    r = verify_catalan(2000)
    return r.passed, _fail_text(r)


def criterion_7():
    r = verify_heilermann(samples=100, n_max=8, pf_n_max=64, seed=2024)
    return r.passed, _fail_text(r)


def _property_failures(c):
    """Every convergent invariant on one sequence; returns failure labels."""
    bad = []
    n_max = len(c) - 1
    pairs = list(convergents(c, n_max))
    prod = 1
    for n, pair in enumerate(pairs):
        prod *= c[n]
        if pair.Q(0) != 1 or pair.P(0) != 0:
            bad.append(f"constant term n={n}")
        if pair.Q.degree > -(-n // 2) or pair.P.degree > -(-(n + 1) // 2):
            bad.append(f"degree n={n}")
        if n == 0:
            continue
        prev = pairs[n - 1]
        if prev.P * pair.Q - pair.P * prev.Q != Poly.monomial(n + 1, (-1) ** (n + 1) * prod):
            bad.append(f"determinant n={n}")
        order = n + 1
        lo = prev.P.to_series(order) * series_inverse(prev.Q.to_series(order))
        hi = pair.P.to_series(order) * series_inverse(pair.Q.to_series(order))
        if lo.first_difference(hi) != n + 1:
            bad.append(f"stabilization n={n}")
    if matrix_product_convergents(c, n_max)[1::2] != (pairs[-1].P, pairs[-1].Q):
        bad.append("matrix product")
    for a, b in zip(pairs, convergents(c, n_max, Z4)):
        if a.P.reduce(Z4) != b.P or a.Q.reduce(Z4) != b.Q:
            bad.append(f"reduction n={a.index}")
            break
    for track in ("P", "Q"):
        e = coefficient_table(c, n_max, n_max // 2 + 2, Z4, track).entries
        # constant step in column i forces a zero two rows up in column i-1
        same = e[2:, 1:] == e[1:-1, 1:]
        if (e[:-2, :-1][same] != 0).any():
            bad.append(f"triangle {track}")
    return bad


def criterion_8():
    rng = np.random.default_rng(8)
    failures = []
    for k in range(200):
        c = rng.choice([-1, 1], size=int(rng.integers(2, 65)))
        for b in _property_failures(c):
            failures.append(f"sample {k}: {b}")
    return not failures, f"{len(failures)} failures" + (f", first: {failures[0]}" if failures else "")


def criterion_9():
    parts = []
    ok = True
    for name in ("paperfolding", "rudin-shapiro"):
        r = stieltjes_kernel_probe(name, 2**14, 6, 128)
        ok &= r.saturated
        parts.append(f"Stiel {name} classes={r.size} saturated={r.saturated}")
        for track in ("P", "Q"):
            reps = column_automaticity_probe(name, track, 8, 2**12)
            sat = sum(r.saturated for r in reps)
            ok &= sat == len(reps)
            parts.append(f"{name} {track} columns saturated {sat}/{len(reps)}")
    ctl = squares_control_probe(2**14, 6, 128)
    ok &= not ctl.saturated
    parts.append(f"squares control saturated={ctl.saturated} counts={list(ctl.counts_by_level)}")
    return ok, "; ".join(parts)


def _perturbed(original, item):
    def forms(p):
        out = dict(original(p))
        track, is_b, level, ell, rhs = out[item]
        out[item] = (track, is_b, level, ell, rhs + Poly.monomial(1, 1, Z4))
        return out

    return forms


def criterion_10():
    golden = render_table(RenderSpec(n_range=(1, 16), i_range=(0, 15))) == GOLDEN.read_bytes()
    code_all = cli_main(["verify", "all", "--out", "/dev/null"])
    flips = []
    for attr, target, items, flag in (
        ("paperfolding_lemma_forms", "lemma-pf", range(1, 9), ["--n-max", "5"]),
        ("rudin_shapiro_lemma_forms", "lemma-rs", range(1, 17), ["--j-max", "3"]),
    ):
        original = getattr(cf, attr)
        clean = cli_main(["verify", target, *flag, "--out", "/dev/null"])
        for item in items:
            setattr(cf, attr, _perturbed(original, item))
            try:
                flips.append(clean == 0 and cli_main(["verify", target, *flag, "--out", "/dev/null"]) != 0)
            finally:
                setattr(cf, attr, original)
    ok = golden and code_all == 0 and all(flips)
    return ok, f"golden={golden} verify-all-exit={code_all} perturbations-detected={sum(flips)}/{len(flips)}"


CRITERIA = {k: globals()[f"criterion_{k}"] for k in range(1, 11)}


def _run(k):
    t0 = time.perf_counter()
    ok, detail = CRITERIA[k]()
    line = f"criterion {k}: {'PASS' if ok else 'FAIL'} ({time.perf_counter() - t0:.1f}s) {detail}"
    RESULTS[k] = line
    print(line)
    return ok, line


@pytest.mark.parametrize("k", range(1, 11))
def test_criterion(k):
    ok, line = _run(k)
    assert ok, line


if __name__ == "__main__":
    import sys

    sys.exit(0 if all([_run(k)[0] for k in CRITERIA]) else 1)
