"""Command-line front end.

Exit status: 0 when every requested check passes, 1 when a verification
fails, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import sys

from .cfrac import b_convergents, coefficient_table, convergent, convergent_to_text, expand_stieltjes, table_to_text
from .ring import ZZ, DomainError, Zmod, poly_to_text, series_to_text
from .render import RenderSpec, render_table
from .seq import ResourceError, SignSequence, get_sequence, kernel_estimate, load_substitution, prefix_to_text
from .verify import TARGETS, hankel_direct, hankel_heilermann, run_target

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SEQUENCES = ("paperfolding", "rudin-shapiro")


class UsageError(Exception):
    pass


def _domain(args):
    if args.mod is None:
        return ZZ
    if args.mod < 2:
        raise UsageError("--mod must be >= 2")
    return Zmod(args.mod)


def _sequence(args, length: int):
    if getattr(args, "config", None):
        return SignSequence.from_substitution(load_substitution(args.config), length)
    name = getattr(args, "seq", None) or getattr(args, "name", None)
    if name is None:
        raise UsageError("give --seq/--name or --config")
    return get_sequence(name, length)


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_seq(args):
    _emit(args, prefix_to_text(_sequence(args, args.len).values(args.len)))
    return EXIT_OK


def cmd_expand(args):
    s = expand_stieltjes(_sequence(args, args.order + 2), args.order, _domain(args))
    _emit(args, series_to_text(s))
    return EXIT_OK


def cmd_convergent(args):
    pair = convergent(_sequence(args, args.index + 1), args.index, _domain(args))
    _emit(args, convergent_to_text(pair))
    return EXIT_OK


def cmd_bconvergent(args):
    if args.config:
        raise UsageError("bconvergent supports the named sequences only")
    block = b_convergents(args.seq, args.index, _domain(args))
    top = 2**args.index
    labels = (f"P{top - 2}", f"P{top - 1}", f"Q{top - 2}", f"Q{top - 1}")
    _emit(args, "\n".join(f"{k}: {poly_to_text(p)}" for k, p in zip(labels, block)))
    return EXIT_OK


def cmd_hankel(args):
    seq = _sequence(args, 2 * args.n_max + 2)
    s = expand_stieltjes(seq, 2 * args.n_max, ZZ)
    lines, ok = [], True
    for n in range(1, args.n_max + 1):
        direct = hankel_direct(s.coeffs[1:], n)
        product = hankel_heilermann(seq, n)
        ok &= direct == product
        lines.append(f"n={n} direct={direct} product={product}")
    _emit(args, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_kernel(args):
    need = args.window * 2**args.depth
    if args.of == "expand":
        vals = expand_stieltjes(_sequence(args, need + 1), need - 1, _domain(args)).coeffs
    else:
        vals = _sequence(args, need).values(need)
        if args.mod is not None:
            vals = vals % args.mod
    r = kernel_estimate(vals, 2, args.depth, args.window)
    counts = " ".join(map(str, r.counts_by_level))
    _emit(args, f"classes={r.size} saturated={'yes' if r.saturated else 'no'} counts={counts}")
    return EXIT_OK


def cmd_table(args):
    seq = _sequence(args, args.n_max + 2)
    _emit(args, table_to_text(coefficient_table(seq, args.n_max, args.i_max, _domain(args), args.track)))
    return EXIT_OK


def cmd_render(args):
    if args.config:
        raise UsageError("render supports the named sequences only")
    spec = RenderSpec(
        track=args.track,
        seq_name=args.seq,
        n_range=(args.n_min, args.n_max),
        i_range=(args.i_min, args.i_max),
        modulus=args.mod or 4,
        scale=args.scale,
    )
    data = render_table(spec, args.out)
    if not args.out:
        sys.stdout.write(data.decode("ascii"))
    return EXIT_OK


def cmd_verify(args):
    reports = run_target(
        args.target, order=args.order, n_max=args.n_max, j_max=args.j_max, i_max=args.i_max, rows=args.rows
    )
    out = []
    for r in reports:
        out.append(r.to_jsonl() if args.json else "\n".join(r.lines()))
    failed = [r for r in reports if not r.passed]
    total = sum(len(r.instances) for r in reports)
    bad = sum(1 for r in reports for i in r.instances if not i.passed)
    if not args.json:
        out.append(f"summary: {total - bad}/{total} instances pass; {'PASS' if not failed else 'FAIL'}")
    _emit(args, "\n".join(out))
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stieltjes", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, *, seq=True, mod=True, out=True):
        sp = sub.add_parser(name, help=help_)
        if seq:
            sp.add_argument("--seq", "--name", dest="seq", choices=SEQUENCES)
            sp.add_argument("--config", help="substitution system file")
        if mod:
            sp.add_argument("--mod", type=int, help="reduce modulo m (default: integers)")
        if out:
            sp.add_argument("--out", help="write to file instead of stdout")
        sp.set_defaults(func=fn)
        return sp

    add("seq", cmd_seq, "print a sequence prefix", mod=False).add_argument("--len", type=int, required=True)
    add("expand", cmd_expand, "power series of the continued fraction").add_argument(
        "--order", type=int, required=True
    )
    add("convergent", cmd_convergent, "P_n and Q_n").add_argument("--index", "-n", type=int, required=True)
    add("bconvergent", cmd_bconvergent, "the b-block convergents of level n").add_argument(
        "--index", "-n", type=int, required=True
    )
    add("hankel", cmd_hankel, "Hankel determinants, direct and by product formula", mod=False).add_argument(
        "--n-max", type=int, default=8
    )

    sp = add("kernel", cmd_kernel, "2-kernel class count of a sequence or its expansion")
    sp.add_argument("--of", choices=("seq", "expand"), default="expand")
    sp.add_argument("--depth", type=int, default=6)
    sp.add_argument("--window", type=int, default=128)

    sp = add("table", cmd_table, "coefficient table of the P or Q track")
    sp.add_argument("--track", choices=("P", "Q"), default="Q")
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--i-max", type=int, required=True)

    sp = add("render", cmd_render, "P3 pixmap of the coefficient table")
    sp.add_argument("--track", choices=("P", "Q"), default="Q")
    sp.add_argument("--n-min", type=int, default=1)
    sp.add_argument("--n-max", type=int, default=16)
    sp.add_argument("--i-min", type=int, default=0)
    sp.add_argument("--i-max", type=int, default=15)
    sp.add_argument("--scale", type=int, default=1)

    sp = add("verify", cmd_verify, "run a verification suite", seq=False, mod=False)
    sp.add_argument("target", choices=sorted(TARGETS) + ["all"])
    sp.add_argument("--order", type=int, help="series order for the full-series checks")
    sp.add_argument("--n-max", type=int, help="largest n for the closed-form, splitting and S/T family checks")
    sp.add_argument("--j-max", type=int, help="largest j for the Rudin-Shapiro closed forms")
    sp.add_argument("--i-max", type=int, help="largest column for the column probe")
    sp.add_argument("--rows", type=int, help="table rows for the column probe")
    sp.add_argument("--json", action="store_true", help="one JSON record per instance")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, DomainError, ResourceError, OSError) as exc:
        print(f"stieltjes {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
