"""Command-line front end.

Exit codes: 0 on success, 1 when a checked property is falsified, 2 on bad
input.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import io
from .approximate import QPRIME_RULES, approximate_extreme
from .classify import classify
from .common import NotApproximable, UnequalTailSlopes
from .complex import slack_reports
from .convert import cgf_to_gdff, gdff_to_cgf, strongly_maximal_from_cgf
from .cuts import IPRow, generate_cut, verify_cut_bruteforce
from .families import make_bj1, make_linear, make_phi_s_delta
from .plotting import (FIGURE_FORMATS, function_csv, render_functions, render_slack,
                       render_stages)
from .pwl import PwlFunction

EXIT_OK, EXIT_FALSIFIED, EXIT_INPUT = 0, 1, 2

FAMILIES = {
    "linear": (make_linear, ["c"]),
    "identity": (lambda: PwlFunction.identity(), []),
    "bj1": (make_bj1, ["C"]),
    "phi_s_delta": (make_phi_s_delta, ["s", "delta"]),
}


class InputError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return io.parse_rational(text)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _range(text: str) -> tuple[Fraction, Fraction]:
    try:
        lo, hi = text.split(":")
        lo, hi = io.parse_rational(lo), io.parse_rational(hi)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"range must look like lo:hi, got {text!r}") from exc
    if not lo < hi:
        raise argparse.ArgumentTypeError("range needs lo < hi")
    return lo, hi


def _read(path) -> PwlFunction:
    try:
        return io.read_function(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except (ValueError, TypeError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _emit(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


# -- subcommands -------------------------------------------------------------

def cmd_check(args) -> int:
    f = _read(args.input)
    report = classify(f, trials=args.trials, seed=args.seed)
    _emit(report.report(), args.output)
    if args.slack_dump:
        Path(args.slack_dump).write_text(io.format_slack_csv(slack_reports(f)))
    return EXIT_OK


def cmd_construct(args) -> int:
    maker, names = FAMILIES[args.family]
    if len(args.params) != len(names):
        raise InputError(f"{args.family} takes {len(names)} parameter(s): {' '.join(names) or 'none'}")
    try:
        values = [io.parse_rational(p) for p in args.params]
        f = maker(*values)
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from exc
    _emit(io.dumps(f), args.output)
    return EXIT_OK


def cmd_convert(args) -> int:
    f = _read(args.input)
    try:
        if args.direction == "to-cgf":
            g = gdff_to_cgf(f, _need(args.lam, "--lambda"))
        elif args.direction == "to-gdff":
            g = cgf_to_gdff(f, _need(args.lam, "--lambda"))
        else:
            g = strongly_maximal_from_cgf(f)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    _emit(io.dumps(g), args.output)
    return EXIT_OK


def _need(value, flag):
    if value is None:
        raise InputError(f"{flag} is required for this direction")
    return value


def cmd_approximate(args) -> int:
    f = _read(args.input)
    try:
        cert = approximate_extreme(f, args.epsilon, rule=args.rule)
    except NotApproximable as exc:
        print(f"not approximable: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    stages = {"input": cert.phi_pwl, "loose": cert.phi_loose,
              "fill_in": cert.phi_fill_in, "extreme": cert.phi_ext}
    for name, g in stages.items():
        io.write_function(g, out / f"{name}.json")
    (out / "manifest.txt").write_text(cert.manifest())
    lo, hi = cert.window
    (out / "stages.csv").write_text(function_csv(list(stages.values()), list(stages), lo, hi))
    render_stages(cert, out / f"stages.{args.format}")
    sys.stdout.write(cert.manifest())
    return EXIT_OK


def _rows(args) -> list[IPRow]:
    lines = list(args.row or [])
    if args.rows_file:
        try:
            text = Path(args.rows_file).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {args.rows_file}: {exc.strerror}") from exc
        lines += [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise InputError("give at least one row with --row or --rows-file")
    try:
        return [IPRow(*io.parse_row(ln)) for ln in lines]
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def cmd_cut(args) -> int:
    f = _read(args.input)
    rows = _rows(args)
    out, status = [], EXIT_OK
    for row in rows:
        try:
            cut = generate_cut(f, row)
            res = verify_cut_bruteforce(cut, row, args.box)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        verdict = "valid" if res.ok else "violated at " + ",".join(map(str, res.witness))
        out.append(f"{io.format_row(cut.coefficients, cut.rhs)} ; {verdict}\n")
        if not res.ok:
            status = EXIT_FALSIFIED
    _emit("".join(out), args.output)
    return status


def cmd_plot(args) -> int:
    if args.slack_input:
        try:
            rows = io.parse_slack_csv(Path(args.slack_input).read_text())
        except OSError as exc:
            raise InputError(f"cannot read {args.slack_input}: {exc.strerror}") from exc
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        if args.format == "csv":
            raise InputError("a slack dump is already CSV; pick svg or png")
        if args.output is None:
            raise InputError("figure formats need --output")
        render_slack(rows, args.output)
        return EXIT_OK
    if not args.input:
        raise InputError("plot needs --input or --slack-input")
    fns = [_read(p) for p in args.input]
    names = [Path(p).stem for p in args.input]
    lo, hi = args.range
    csv = function_csv(fns, names, lo, hi)
    if args.format == "csv":
        _emit(csv, args.output)
        return EXIT_OK
    if args.output is None:
        raise InputError("figure formats need --output")
    target = Path(args.output)
    render_functions(fns, names, target, lo, hi)
    target.with_suffix(".csv").write_text(csv)
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gdff", description="Exact toolkit for general dual feasible functions.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="classify a function")
    c.add_argument("-i", "--input", required=True)
    c.add_argument("-o", "--output")
    c.add_argument("--trials", type=int, default=1000)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--slack-dump", help="write x,y,slack for every complex vertex")
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("construct", help="write a named family member")
    c.add_argument("family", choices=sorted(FAMILIES))
    c.add_argument("params", nargs="*")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_construct)

    c = sub.add_parser("convert", help="convert between gDFFs and cut-generating functions")
    c.add_argument("-i", "--input", required=True)
    c.add_argument("-o", "--output")
    c.add_argument("--direction", choices=["to-cgf", "to-gdff", "strongly"], default="to-cgf")
    c.add_argument("--lambda", dest="lam", type=_rational)
    c.set_defaults(func=cmd_convert)

    c = sub.add_parser("approximate", help="approximate by an extreme 2-slope function")
    c.add_argument("-i", "--input", required=True)
    c.add_argument("-o", "--output", required=True, help="certificate directory")
    c.add_argument("--epsilon", type=_rational, required=True)
    c.add_argument("--rule", choices=QPRIME_RULES, default="budget")
    c.add_argument("--format", choices=FIGURE_FORMATS, default="svg")
    c.set_defaults(func=cmd_approximate)

    c = sub.add_parser("cut", help="generate and brute-force verify cuts")
    c.add_argument("-i", "--input", required=True)
    c.add_argument("--row", action="append", help='row literal "a1 a2 | b"')
    c.add_argument("--rows-file")
    c.add_argument("--box", type=int, default=10)
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_cut)

    c = sub.add_parser("plot", help="sample or draw functions, or draw a slack dump")
    c.add_argument("-i", "--input", nargs="+")
    c.add_argument("--slack-input")
    c.add_argument("-o", "--output")
    c.add_argument("--format", choices=("csv", *FIGURE_FORMATS), default="csv")
    c.add_argument("--range", type=_range, default=(Fraction(-1, 2), Fraction(3, 2)))
    c.set_defaults(func=cmd_plot)
    return p


def _glue_range(argv: list[str]) -> list[str]:
    # "--range -1/2:3/2" would otherwise read the value as an option
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--range" and i + 1 < len(argv):
            out.append("--range=" + argv[i + 1])
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = _glue_range(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except UnequalTailSlopes as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
