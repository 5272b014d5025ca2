"""Text formats: function files, slack dumps and integer-program rows.

Function files are JSON objects whose rationals are ``"p/q"`` strings in
lowest terms, so a write/read round trip is exact.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .pwl import PwlFunction, as_fraction


def format_rational(x) -> str:
    x = as_fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s) -> Fraction:
    try:
        return as_fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {s!r}") from exc


def function_to_dict(f: PwlFunction) -> dict:
    d = {
        "breakpoints": [format_rational(b) for b in f.breakpoints],
        "values": [format_rational(v) for v in f.values],
        "left_tail_slope": format_rational(f.left_tail_slope),
        "right_tail_slope": format_rational(f.right_tail_slope),
    }
    if not f.breakpoints:
        d["anchor"] = format_rational(f.anchor)
    return d


def function_from_dict(d: dict) -> PwlFunction:
    missing = {"breakpoints", "values", "left_tail_slope", "right_tail_slope"} - d.keys()
    if missing:
        raise ValueError(f"function file lacks fields: {sorted(missing)}")
    return PwlFunction(
        tuple(parse_rational(b) for b in d["breakpoints"]),
        tuple(parse_rational(v) for v in d["values"]),
        parse_rational(d["left_tail_slope"]),
        parse_rational(d["right_tail_slope"]),
        parse_rational(d.get("anchor", "0")),
    )


def dumps(f: PwlFunction) -> str:
    return json.dumps(function_to_dict(f), indent=2) + "\n"


def loads(text: str) -> PwlFunction:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed function file: {exc}") from exc
    if not isinstance(data, dict):
        raise ValueError("function file must hold a single JSON object")
    return function_from_dict(data)


def write_function(f: PwlFunction, path) -> None:
    Path(path).write_text(dumps(f))


def read_function(path) -> PwlFunction:
    return loads(Path(path).read_text())


def format_slack_csv(reports) -> str:
    """One ``x,y,slack`` line per :class:`~gdff.complex.SlackReport`."""
    return "".join(
        f"{format_rational(r.vertex.x)},{format_rational(r.vertex.y)},{format_rational(r.slack)}\n"
        for r in reports
    )


def parse_slack_csv(text: str) -> list[tuple[Fraction, Fraction, Fraction]]:
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(",")
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected x,y,slack")
        rows.append(tuple(parse_rational(p) for p in parts))
    return rows


def parse_row(line: str) -> tuple[list[Fraction], Fraction]:
    """Parse ``"a1 a2 ... | b"``."""
    if line.count("|") != 1:
        raise ValueError(f"row must contain exactly one '|': {line!r}")
    lhs, rhs = line.split("|")
    coeffs = [parse_rational(tok) for tok in lhs.split()]
    if not coeffs:
        raise ValueError("row has no coefficients")
    return coeffs, parse_rational(rhs)


def format_row(coeffs, rhs) -> str:
    return " ".join(format_rational(a) for a in coeffs) + " | " + format_rational(rhs)
