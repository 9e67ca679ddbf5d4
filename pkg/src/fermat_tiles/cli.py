"""Command-line front end: ``fermat-tiles <subcommand> ...``.

Exit status is 0 on success, 2 on usage errors and 1 when a computation fails.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from .context import CACHE_ENV, PrimeContext
from .digits import h_matrix, shift_lemma_report
from .io import (
    csv_text,
    incidence_matrix,
    json_text,
    pgm_bytes,
    scale_residues,
    write_csv,
    write_json,
    write_pgm,
)
from .tiles import (
    BoundingLine,
    box_intersection,
    bounding_line_search,
    check_bounding_line,
    curve_lattice_points,
    primes_in_range,
    roots_of_minus_one,
    theta_statistics,
    tile_points,
)
from .zipper import (
    a_value,
    common_zeros,
    extract_s0,
    h_profiles,
    semilinearity_report,
    zipper_solve,
)

FORMATS = {
    "roots": {"csv"},
    "tile": {"csv", "pgm"},
    "box": {"csv"},
    "theta": {"csv"},
    "bline": {"json"},
    "curve": {"csv"},
    "htable": {"csv", "pgm"},
    "atable": {"csv"},
    "zipper": {"json"},
    "profiles": {"csv"},
    "shift-check": {"json"},
    "s0": {"json"},
}


class UsageError(Exception):
    pass


def parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}")
    return int(lo), int(hi)


def parse_primes(text: str):
    if ".." in text:
        return parse_range(text)
    return [int(v) for v in text.split(",") if v]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fermat-tiles", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="cmd", required=True)

    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("-o", "--output", type=Path, help="output file (stdout when omitted)")
    out.add_argument("--format", choices=["csv", "json", "pgm"])
    out.add_argument("--cache-dir", type=Path, help=f"log-table cache (default ${CACHE_ENV})")

    prime = argparse.ArgumentParser(add_help=False)
    prime.add_argument("-p", type=int, required=True, help="odd prime")
    prime.add_argument("-g", type=int, help="generator override")

    def add(name, help_, *parents):
        return sub.add_parser(name, help=help_, parents=[out, *parents])

    sp = add("roots", "roots of x^n = -1 mod p", prime)
    sp.add_argument("-n", type=int, required=True)

    sp = add("tile", "points of the tile T_n(p; j)", prime)
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-j", type=int, default=1)

    sp = add("box", "tile points inside [0, p]^2", prime)
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-j", type=int)

    sp = add("theta", "theta statistics over a range of primes")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-j", type=int, default=2)
    sp.add_argument("--primes", type=parse_primes, required=True, help="LO..HI or a comma list")

    sp = add("bline", "bounding line for one tile component", prime)
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-j", type=int, required=True)
    sp.add_argument("-x", type=int, required=True, help="root of x^n = -1 mod p")
    sp.add_argument("--range", type=parse_range, dest="a1_range")
    sp.add_argument("--m", type=int, help="numerator of a line to check instead of searching")
    sp.add_argument("--q", type=int, help="denominator of the line to check")

    sp = add("curve", "lattice points on x^n + y^n = z^n")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-z", type=int, required=True)

    sp = add("htable", "value grid of h_j^a", prime)
    sp.add_argument("-a", "--shift", type=int, default=0)
    sp.add_argument("-j", type=int, default=1)
    sp.add_argument("-s", type=int, help="fix s (required for j >= 2)")
    sp.add_argument("--prefix", type=lambda t: tuple(int(v) for v in t.split(",") if v), default=())

    sp = add("atable", "values of A_j^a", prime)
    sp.add_argument("-a", "--shift", type=int, default=0)
    sp.add_argument("-j", type=int, default=1)
    sp.add_argument("-s", type=int, help="fix s (required for j >= 2)")
    sp.add_argument("--prefix", type=lambda t: tuple(int(v) for v in t.split(",") if v), default=())

    sp = add("zipper", "solve the double recursion", prime)
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-a", "--shift", type=int, action="append", help="restrict to this shift")
    sp.add_argument("--max-level", type=int)

    sp = add("profiles", "H profiles and their derivatives (-o names a directory)", prime)
    sp.add_argument("-a", "--shift", type=int, required=True)
    sp.add_argument("--levels", type=lambda t: tuple(int(v) for v in t.split(",")), default=(1, 2))

    sp = add("shift-check", "compare both sides of the digit shift identity", prime)
    sp.add_argument("-a", "--shift", type=int, required=True)
    sp.add_argument("-j", type=int, default=1)

    sp = add("s0", "offset of the slope of the linear forms", prime)
    sp.add_argument("-a", "--shift", type=int, default=0)
    sp.add_argument("-j", type=int, default=1)

    sp = sub.add_parser("reproduce", help="regenerate every published table and grade it")
    sp.add_argument("-o", "--output", type=Path, default=Path("reproduction"))
    sp.add_argument("--cache-dir", type=Path)
    return parser


def _context(args, j_max=None) -> PrimeContext:
    return PrimeContext.create(args.p, args.g, j_max=j_max, cache_dir=args.cache_dir)


def _format(args, name: str) -> str:
    fmt = args.format
    if fmt is None and args.output is not None and args.output.suffix:
        fmt = args.output.suffix.lstrip(".")
    if fmt is None:
        fmt = sorted(FORMATS[name])[0]
    if fmt not in FORMATS[name]:
        raise UsageError(f"format {fmt!r} not supported by {name} (use {', '.join(sorted(FORMATS[name]))})")
    return fmt


def _emit(args, fmt: str, *, header=None, rows=None, obj=None, matrix=None) -> None:
    if fmt == "csv":
        if args.output:
            write_csv(args.output, header, rows)
        else:
            sys.stdout.write(csv_text(header, rows))
    elif fmt == "json":
        if args.output:
            write_json(args.output, obj)
        else:
            sys.stdout.write(json_text(obj))
    else:
        if args.output:
            write_pgm(args.output, matrix)
        else:
            sys.stdout.buffer.write(pgm_bytes(matrix))


def _summary(args, text: str) -> None:
    # With no output file stdout carries the data; keep it clean.
    print(text, file=sys.stdout if args.output else sys.stderr)


def cmd_roots(args):
    fmt = _format(args, "roots")
    rs = roots_of_minus_one(_context(args), args.n)
    line = " ".join(map(str, rs.roots))
    if args.output:
        _emit(args, fmt, header=["exponent", "root"], rows=list(zip(rs.exponents, rs.roots)))
    print(line)


def cmd_tile(args):
    fmt = _format(args, "tile")
    ctx = _context(args, j_max=max(args.j, 1))
    pts = tile_points(ctx, args.n, args.j)
    if fmt == "pgm":
        if args.j != 1 or args.p > 255:
            raise UsageError("pgm output needs j = 1 and p <= 255")
        _emit(args, fmt, matrix=incidence_matrix(pts, args.p))
    else:
        _emit(args, fmt, header=["x", "y"], rows=pts)
    _summary(args, f"T_{args.n}({args.p}; {args.j}): {len(pts)} points")


def cmd_box(args):
    fmt = _format(args, "box")
    j = args.j or args.n
    ctx = _context(args, j_max=max(j, 1))
    box = box_intersection(ctx, args.n, j)
    rows = [(x, y, int((x, y) in box.trivial)) for x, y in box.points]
    _emit(args, fmt, header=["x", "y", "trivial"], rows=rows)
    _summary(args, "nontrivial: " + (" ".join(f"({x},{y})" for x, y in box.nontrivial) or "none"))


def cmd_theta(args):
    fmt = _format(args, "theta")
    if isinstance(args.primes, tuple):
        primes = primes_in_range(*args.primes, n=args.n)
    else:
        primes = args.primes
    table = theta_statistics(args.n, args.j, primes, cache_dir=args.cache_dir)
    _emit(args, fmt, header=table.header(), rows=table.to_rows())
    for p, err in table.errors.items():
        print(f"skipped {p}: {err}", file=sys.stderr)
    sums = table.sums()
    _summary(args, f"{len(table.rows)} primes, sum of theta zero for {sum(1 for v in sums.values() if v == 0)}")


def cmd_bline(args):
    _format(args, "bline")
    ctx = _context(args, j_max=max(args.j, 1))
    rng = args.a1_range or (0, args.p)
    if (args.m is None) != (args.q is None):
        raise UsageError("--m and --q go together")
    if args.m is not None:
        m, q = args.m, args.q
        chk = check_bounding_line(ctx, args.j, args.x, BoundingLine(m, q, args.j, args.p), rng)
        obj = {
            "m": m,
            "q": q,
            "j": args.j,
            "valid": chk.valid,
            "above": chk.above,
            "on": chk.on,
            "below": chk.below,
            "violations": [list(v) for v in chk.violations],
        }
        _emit(args, "json", obj=obj)
        _summary(args, f"line {m}/{q}: {'valid' if chk.valid else f'{len(chk.violations)} violations'}")
        return 0 if chk.valid else 1
    line = bounding_line_search(ctx, args.n, args.j, args.x, rng)
    obj = None if line is None else {"m": line.m, "q": line.q, "j": line.j, "p": line.p}
    _emit(args, "json", obj=obj)
    _summary(args, "no line found" if line is None else f"m={line.m} q={line.q}")


def cmd_curve(args):
    fmt = _format(args, "curve")
    pts = curve_lattice_points(args.n, args.z)
    _emit(args, fmt, header=["x", "y"], rows=pts)
    _summary(args, f"{len(pts)} lattice points")


def cmd_htable(args):
    fmt = _format(args, "htable")
    ctx = _context(args, j_max=args.j + 1)
    if args.j >= 2 and args.s is None:
        raise UsageError("-s is required for j >= 2")
    grid = h_matrix(ctx, args.shift, args.j, s=args.s, prefix=args.prefix)
    if fmt == "pgm":
        _emit(args, fmt, matrix=scale_residues(grid, args.p))
    else:
        _emit(args, fmt, header=["row", *range(len(grid[0]))], rows=[[i, *r] for i, r in enumerate(grid)])
    _summary(args, f"{len(grid)}x{len(grid[0])} grid of h_{args.j}^{args.shift}")


def cmd_atable(args):
    fmt = _format(args, "atable")
    ctx = _context(args, j_max=args.j + 1)
    if args.j == 1:
        rows = [(s, a_value(ctx, args.shift, 1, s)) for s in range(args.p - 1)]
        header = ["s", "A"]
    else:
        if args.s is None:
            raise UsageError("-s is required for j >= 2")
        if len(args.prefix) != args.j - 2:
            raise UsageError(f"--prefix needs {args.j - 2} digits")
        rows = [
            (r, a_value(ctx, args.shift, args.j, args.s, args.prefix + (r,)))
            for r in range(args.p)
        ]
        header = ["r", "A"]
    _emit(args, fmt, header=header, rows=rows)
    _summary(args, " ".join(str(v) for _, v in rows))


def cmd_zipper(args):
    _format(args, "zipper")
    max_level = args.max_level if args.max_level is not None else args.n - 1
    ctx = _context(args, j_max=max_level + 1)
    res = zipper_solve(ctx, args.n, shifts=args.shift, max_level=max_level)
    _emit(args, "json", obj=res.to_json_obj())
    parts = []
    for a in sorted(res.solutions):
        counts = [len(res.survivors(a, k)) for k in range(1, max_level + 1)]
        parts.append(f"a={a}: " + ",".join(f"L{k + 1}={c}" for k, c in enumerate(counts)))
    _summary(args, "; ".join(parts))


def cmd_profiles(args):
    _format(args, "profiles")
    ctx = _context(args, j_max=max(args.levels) + 1)
    profs = h_profiles(ctx, args.shift, args.levels)
    if args.output:
        args.output.mkdir(parents=True, exist_ok=True)
        for prof in profs:
            stem = f"H{prof.i}_{prof.variant}"
            write_csv(args.output / f"{stem}.csv", ["t", "value"], sorted(prof.values.items()))
            write_csv(args.output / f"D_{stem}.csv", ["t", "value"], sorted(prof.derivative.items()))
            write_csv(
                args.output / f"hist_D_{stem}.csv", ["value", "count"], semilinearity_report(prof).histogram
            )
    else:
        header = ["t", *(f"H{pr.i}_{pr.variant}" for pr in profs)]
        rows = [[t, *(pr.values[t] for pr in profs)] for t in range(1, args.p)]
        sys.stdout.write(csv_text(header, rows))
    cz = sorted(common_zeros(profs))
    _summary(args, f"common zeros: {' '.join(map(str, cz)) or 'none'}")


def cmd_shift_check(args):
    _format(args, "shift-check")
    ctx = _context(args, j_max=args.j + 1)
    rep = shift_lemma_report(ctx, args.shift, args.j)
    obj = {
        "p": rep.p,
        "a": rep.a,
        "j": rep.j,
        "total": rep.total,
        "readings": {
            name: {
                "agree": r.agree,
                "disagree": r.disagree,
                "first_counterexample": None
                if r.first_counterexample is None
                else {
                    "s": r.first_counterexample[0],
                    "digits": list(r.first_counterexample[1]),
                    "lhs": r.first_counterexample[2],
                    "rhs": r.first_counterexample[3],
                },
            }
            for name, r in rep.readings.items()
        },
    }
    _emit(args, "json", obj=obj)
    _summary(
        args,
        "; ".join(f"{name}: {r.agree}/{rep.total}" for name, r in rep.readings.items()),
    )


def cmd_s0(args):
    _format(args, "s0")
    ctx = _context(args, j_max=args.j + 1)
    res = extract_s0(ctx, args.shift, args.j)
    obj = {
        "p": args.p,
        "a": args.shift,
        "j": args.j,
        "s0": res.s0,
        "slopes": res.slopes,
        "mismatches": {str(k): v for k, v in res.mismatches.items()},
    }
    _emit(args, "json", obj=obj)
    _summary(args, f"s0 = {res.s0 if res.s0 is not None else 'none'}")


def cmd_reproduce(args):
    from .reproduce import reproduce_all

    out, checks = reproduce_all(args.output, cache_dir=args.cache_dir)
    failed = [c for c in checks if not c.passed]
    for c in checks:
        print(f"{c.status} {c.name} {c.detail}".rstrip())
    print(f"{len(checks) - len(failed)}/{len(checks)} PASS -> {out}")
    return 1 if failed else 0


COMMANDS = {
    "roots": cmd_roots,
    "tile": cmd_tile,
    "box": cmd_box,
    "theta": cmd_theta,
    "bline": cmd_bline,
    "curve": cmd_curve,
    "htable": cmd_htable,
    "atable": cmd_atable,
    "zipper": cmd_zipper,
    "profiles": cmd_profiles,
    "shift-check": cmd_shift_check,
    "s0": cmd_s0,
    "reproduce": cmd_reproduce,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on usage errors
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
    if getattr(args, "cache_dir", None) is None and os.environ.get(CACHE_ENV):
        args.cache_dir = Path(os.environ[CACHE_ENV])
    try:
        rc = COMMANDS[args.cmd](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, OverflowError) as exc:
        print(f"{parser.prog}: {exc}", file=sys.stderr)
        return 1
    return rc or 0


if __name__ == "__main__":
    sys.exit(main())
