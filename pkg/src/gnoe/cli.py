"""Command-line interface.

Exit codes: 0 success, 1 computation error (the error name from the library
contracts is printed), 2 usage or parse error.  Machine output is
line-oriented key=value text with a leading schema version line and is
byte-identical across runs for a fixed seed.
"""

from __future__ import annotations

import argparse
import sys

from .cayley import cayley_tower, multiplication_table
from .errors import AlgebraError, TextError
from .euclid import GeneratorSet, left_reduce, right_reduce
from .rings import RationalField
from .textio import format_poly, load_config, parse_poly
from .verify import chain_experiment, check_gnoe_bijective, classify_extension

SCHEMA = "schema=gnoe.v1"


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gnoe",
        description="Exact twisted-polynomial arithmetic, constructive "
        "division, classification probes, Cayley towers, and chain demos.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, config_required=True):
        if config_required:
            p.add_argument("--config", required=True, help="extension config file")
        p.add_argument("--seed", type=int, default=None, help="probe seed")
        p.add_argument("--bound", type=int, default=None, help="degree bound")
        p.add_argument(
            "--format",
            choices=("human", "machine"),
            default="human",
            dest="fmt",
        )

    p = sub.add_parser("mul", help="multiply two polynomials")
    common(p)
    p.add_argument("left", help="left factor in the polynomial grammar")
    p.add_argument("right", help="right factor in the polynomial grammar")

    p = sub.add_parser("divide", help="reduce a target against generators")
    common(p)
    p.add_argument("--side", choices=("left", "right"), default="left")
    p.add_argument("target")
    p.add_argument("gens", nargs="+", help="generator polynomials")

    p = sub.add_parser("classify", help="run the classification probes")
    common(p)
    p.add_argument("--samples", type=int, default=None)

    p = sub.add_parser("check-gnoe", help="check two-sided basis behavior")
    common(p)
    p.add_argument("--samples", type=int, default=None)

    p = sub.add_parser("cayley", help="print Cayley tower tables")
    common(p, config_required=False)
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--mu", default="-1,-1,-1", help="comma list of scalars")

    p = sub.add_parser("demo", help="run a chain experiment")
    common(p, config_required=False)
    p.add_argument("experiment", choices=("skew-endo-chain", "flipped-chain"))
    p.add_argument("--n", type=int, default=3, help="chain length")
    p.add_argument("--p", type=int, default=2, help="field characteristic")
    p.add_argument("--bound-x", type=int, default=6)
    p.add_argument("--bound-y", type=int, default=16)
    p.add_argument("--orientation", default="auto")
    return parser


def _emit(out, fmt, machine_lines, human_text):
    if fmt == "machine":
        out.write(SCHEMA + "\n")
        for line in machine_lines:
            out.write(line + "\n")
    else:
        out.write(human_text + "\n")


def _cmd_mul(args, out):
    cfg = load_config(args.config)
    ext = cfg.extension
    p = parse_poly(args.left, ext)
    q = parse_poly(args.right, ext)
    prod = p * q
    _emit(
        out,
        args.fmt,
        [f"product={format_poly(prod)}"],
        f"({format_poly(p)}) * ({format_poly(q)}) = {format_poly(prod)}",
    )
    return 0


def _cmd_divide(args, out):
    cfg = load_config(args.config)
    ext = cfg.extension
    target = parse_poly(args.target, ext)
    gens = GeneratorSet(ext, args.side, tuple(parse_poly(g, ext) for g in args.gens))
    reduce_fn = left_reduce if args.side == "left" else right_reduce
    remainder, cert = reduce_fn(gens, target)
    machine = [f"side={args.side}", f"remainder={format_poly(remainder)}"]
    machine.extend(cert.serialize())
    human = [
        f"remainder: {format_poly(remainder)}",
        f"subtracted element: {format_poly(cert.element)}",
    ]
    human.extend("  " + line for line in cert.serialize())
    _emit(out, args.fmt, machine, "\n".join(human))
    return 0


def _cmd_classify(args, out):
    cfg = load_config(args.config)
    report = classify_extension(
        cfg.extension,
        bound=args.bound if args.bound is not None else cfg.bound,
        samples=args.samples if args.samples is not None else cfg.samples,
        seed=args.seed if args.seed is not None else cfg.seed,
    )
    _emit(out, args.fmt, report.machine_lines(), report.human())
    return 0


def _cmd_check_gnoe(args, out):
    cfg = load_config(args.config)
    report = check_gnoe_bijective(
        cfg.extension,
        bound=args.bound if args.bound is not None else cfg.bound,
        samples=args.samples if args.samples is not None else cfg.samples,
        seed=args.seed if args.seed is not None else cfg.seed,
    )
    _emit(out, args.fmt, report.machine_lines(), report.human())
    return 0


def _cmd_cayley(args, out):
    field = RationalField()
    mus = [field.parse_payload(m.strip()) for m in args.mu.split(",") if m.strip()]
    if len(mus) < args.levels:
        raise TextError(
            f"--mu provides {len(mus)} parameters for {args.levels} levels"
        )
    levels = cayley_tower(field, mus[: args.levels])
    machine = []
    human = []
    for lvl in levels:
        machine.extend(lvl.machine_lines())
        human.append(
            f"level {lvl.level}: {lvl.algebra.ring.describe()}  "
            f"commutative={'yes' if lvl.commutative else 'no'}  "
            f"associative={'yes' if lvl.associative else 'no'}"
        )
        labels, table = multiplication_table(lvl.algebra)
        width = max(len(x) for row in table for x in row) + 1
        header = " " * (width + 2) + "".join(lab.rjust(width) for lab in labels)
        human.append(header)
        for lab, row in zip(labels, table):
            human.append(
                lab.rjust(width + 2) + "".join(entry.rjust(width) for entry in row)
            )
            for j, entry in enumerate(row):
                machine.append(f"table.{lvl.level}.{lab}.{labels[j]}={entry}")
    _emit(out, args.fmt, machine, "\n".join(human))
    return 0


def _cmd_demo(args, out):
    seed = args.seed if args.seed is not None else 0
    if args.experiment == "skew-endo-chain":
        report = chain_experiment(
            "skew_endo",
            {"p": args.p},
            n=args.n,
            bound=(args.bound_x, args.bound_y),
            seed=seed,
        )
    else:
        report = chain_experiment(
            "flipped", {"orientation": args.orientation}, n=args.n, seed=seed
        )
    _emit(out, args.fmt, report.machine_lines(), report.human())
    return 0


_COMMANDS = {
    "mul": _cmd_mul,
    "divide": _cmd_divide,
    "classify": _cmd_classify,
    "check-gnoe": _cmd_check_gnoe,
    "cayley": _cmd_cayley,
    "demo": _cmd_demo,
}


def cli_run(argv, out=None):
    """Run one command; returns the exit code and writes to ``out``."""
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return _COMMANDS[args.command](args, out)
    except TextError as exc:
        out.write(f"parse error: {exc}\n")
        return 2
    except AlgebraError as exc:
        out.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1
    except FileNotFoundError as exc:
        out.write(f"error: {exc}\n")
        return 2


def main():
    sys.exit(cli_run(sys.argv[1:]))


if __name__ == "__main__":
    main()
