"""``parrypascal`` command line.

Exit status: 0 on success, 1 for invalid input, 2 when a file cannot be
written.  Data goes to stdout or ``--out``; diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass

from . import geometry as geo
from . import hausdorff as hd
from .binomials import ResidueSpec
from .numeration import (
    CustomLinearSystem,
    NumerationSystem,
    format_word,
    parse_word,
)
from .triangle import pbm_bytes, square_set_svg, triangle_block, u_set
from .verification import run_all

EXIT_OK, EXIT_INVALID, EXIT_IO = 0, 1, 2


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit with status 2
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    dbeta: str
    residue: ResidueSpec
    n: int
    maxlen: int
    iters: int
    out: str | None
    fmt: str | None
    scale: int
    threads: int
    tol: float

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        maxlen = args.maxlen
        if maxlen is None:
            maxlen = 6 if args.command == "verify" else 10
        for name, value in (("n", args.n), ("maxlen", maxlen), ("iters", args.iters)):
            if value < 0:
                raise UsageError(f"--{name} must be non-negative")
        if args.threads < 1:
            raise UsageError("--threads must be at least 1")
        if args.scale < 1:
            raise UsageError("--scale must be at least 1")
        if args.tol <= 0:
            raise UsageError("--tol must be positive")
        return cls(
            dbeta=args.dbeta,
            residue=ResidueSpec(args.mod or 2, args.residue),
            n=args.n,
            maxlen=maxlen,
            iters=args.iters,
            out=args.out,
            fmt=args.format,
            scale=args.scale,
            threads=args.threads,
            tol=args.tol,
        )

    def system(self) -> NumerationSystem:
        return NumerationSystem.from_string(self.dbeta, self.tol)


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--dbeta", default="1,1", help="expansion of 1, e.g. 1,1 or 2;1 (default 1,1)")
    p.add_argument("--mod", type=int, default=None, help="prime modulus q")
    p.add_argument("--residue", type=int, default=1, help="residue r, 1 <= r < q (default 1)")
    p.add_argument("--n", type=int, default=9, help="level of the square set (default 9)")
    p.add_argument("--maxlen", type=int, default=None,
                   help="maximal word length for (*) pairs (default 10; 6 for verify)")
    p.add_argument("--iters", type=int, default=4, help="iterations of the maps c and h")
    p.add_argument("--out", default=None, help="output file (default: stdout)")
    p.add_argument("--format", choices=["pbm", "svg", "csv", "json"], default=None)
    p.add_argument("--scale", type=int, default=1, help="pixels per cell in PBM output")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.add_argument("--tol", type=float, default=1e-12, help="root-finding tolerance for beta")
    p.add_argument("--custom-coeffs", type=_int_list, default=None)
    p.add_argument("--custom-init", type=_int_list, default=None)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="parrypascal", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("describe", parents=[common], help="summary of a numeration system")

    conv = sub.add_parser("convert", parents=[common], help="integer <-> representation")
    conv.add_argument("direction", choices=["rep", "val"])
    conv.add_argument("value")

    tri = sub.add_parser("triangle", parents=[common], help="corner of the Pascal-like triangle")
    tri.add_argument("--rows", type=int, default=8)
    tri.add_argument("--cols", type=int, default=8)

    sub.add_parser("uset", parents=[common], help="square set as PBM or SVG")
    sub.add_parser("segments", parents=[common], help="segment approximation as SVG or JSON")

    conv_rep = sub.add_parser("converge", parents=[common], help="Hausdorff convergence CSV")
    conv_rep.add_argument("--n-min", type=int, default=4, help="first level (default 4)")
    conv_rep.add_argument("--spacing", type=float, default=1e-3, help="segment sampling step")

    sub.add_parser("verify", parents=[common], help="run the property suites")
    return parser


def _emit(data: str | bytes, out: str | None) -> None:
    raw = data.encode("utf-8") if isinstance(data, str) else data
    if out is None:
        sys.stdout.buffer.write(raw)
        sys.stdout.flush()
        return
    with open(out, "wb") as fh:
        fh.write(raw)


def _pick_format(cfg: RunConfig, allowed: tuple[str, ...]) -> str:
    fmt = cfg.fmt or allowed[0]
    if fmt not in allowed:
        raise UsageError(f"--format must be one of {', '.join(allowed)} here")
    return fmt


def cmd_describe(args, cfg: RunConfig) -> str:
    if args.custom_coeffs is not None:
        f = _custom(args)
        values = ",".join(str(f.u(i)) for i in range(10))
        return f"custom linear system\ncoefficients: {args.custom_coeffs}\nU: {values},...\n"
    s = cfg.system()
    lines = [
        f"d_beta(1): {s.spec}",
        f"beta: {s.beta:.12f}",
        f"quasi-greedy d*: {s.quasi_greedy}",
        f"C_beta: {s.c_beta}",
        "U: " + ",".join(str(x) for x in s.u_sequence(10)) + ",...",
        f"U(40)/beta^40: {s.growth_constant_estimate(40):.10f}",
        f"automaton: {s.automaton.state_count} states, initial a0",
    ]
    for src, digit, dst in s.automaton.edges():
        lines.append(f"  a{src} --{digit}--> a{dst}")
    return "\n".join(lines) + "\n"


def _custom(args) -> CustomLinearSystem:
    if args.custom_coeffs is None or args.custom_init is None:
        raise UsageError("--custom-coeffs and --custom-init go together")
    return CustomLinearSystem(args.custom_coeffs, args.custom_init)


def cmd_convert(args, cfg: RunConfig) -> str:
    custom = args.custom_coeffs is not None or args.custom_init is not None
    system = _custom(args) if custom else cfg.system()
    if args.direction == "rep":
        try:
            n = int(args.value)
        except ValueError:
            raise UsageError(f"not an integer: {args.value!r}")
        if n < 0:
            raise UsageError("rep needs a non-negative integer")
        return format_word(system.rep(n), "") + "\n"
    word = parse_word(args.value)
    if not custom and word and not system.is_in_language(word):
        raise UsageError(f"{args.value} is not a valid representation")
    if custom and not system.is_normal(word):
        raise UsageError(f"{args.value} is not a normal representation")
    return f"{system.val(word)}\n"


def cmd_triangle(args, cfg: RunConfig) -> str:
    block = triangle_block(cfg.system(), args.rows, args.cols, args.mod, threads=cfg.threads)
    if cfg.fmt is None:
        return block.to_table()
    _pick_format(cfg, ("csv",))
    return block.to_csv()


def cmd_uset(args, cfg: RunConfig) -> bytes | str:
    fmt = _pick_format(cfg, ("pbm", "svg"))
    squares = u_set(cfg.system(), cfg.n, cfg.residue, threads=cfg.threads)
    if fmt == "pbm":
        return pbm_bytes(squares, cfg.scale)
    return square_set_svg(squares)


def cmd_segments(args, cfg: RunConfig) -> str:
    fmt = _pick_format(cfg, ("svg", "json"))
    system = cfg.system()
    segs = geo.an_approx(geo.a0_approx(system, cfg.maxlen, cfg.residue), cfg.iters, system)
    if fmt == "svg":
        return geo.segments_svg(segs)
    return geo.segments_json(segs)


def cmd_converge(args, cfg: RunConfig) -> str:
    _pick_format(cfg, ("csv",))
    if args.n_min < 0 or args.n_min > cfg.n:
        raise UsageError("need 0 <= --n-min <= --n")
    if args.spacing <= 0:
        raise UsageError("--spacing must be positive")
    rows = hd.convergence_report(
        cfg.system(), cfg.residue, range(args.n_min, cfg.n + 1),
        a_maxlen=cfg.maxlen, a_iters=cfg.iters, segment_spacing=args.spacing,
        threads=cfg.threads,
    )
    return hd.report_csv(rows)


def cmd_verify(args, cfg: RunConfig) -> tuple[str, bool]:
    checks = run_all(cfg.system(), cfg.residue, cfg.maxlen, cfg.threads)
    text = "\n".join(c.line() for c in checks)
    failed = sum(not c.ok for c in checks)
    text += f"\n{len(checks) - failed}/{len(checks)} checks passed\n"
    return text, failed == 0


COMMANDS = {
    "describe": cmd_describe,
    "convert": cmd_convert,
    "triangle": cmd_triangle,
    "uset": cmd_uset,
    "segments": cmd_segments,
    "converge": cmd_converge,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = RunConfig.from_args(args)
        if args.command == "verify":
            text, ok = cmd_verify(args, cfg)
            _emit(text, cfg.out)
            return EXIT_OK if ok else EXIT_INVALID
        _emit(COMMANDS[args.command](args, cfg), cfg.out)
        return EXIT_OK
    except OSError as exc:
        print(f"parrypascal: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, ArithmeticError, RuntimeError) as exc:
        print(f"parrypascal: error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
