"""Constructors for the named function families."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .pwl import Number, PwlFunction, as_fraction


@dataclass(frozen=True)
class BJParams:
    C: Fraction

    def __post_init__(self):
        c = as_fraction(self.C)
        if c < 1:
            raise ValueError(f"BJ1 needs C >= 1, got {c}")
        object.__setattr__(self, "C", c)


@dataclass(frozen=True)
class SDeltaParams:
    s: Fraction
    delta: Fraction

    def __post_init__(self):
        s, d = as_fraction(self.s), as_fraction(self.delta)
        if s <= 1:
            raise ValueError(f"phi_s_delta needs s > 1, got s={s}")
        bound = min((s - 1) / (2 * s), Fraction(1, 3))
        if not 0 < d < bound:
            raise ValueError(f"phi_s_delta needs 0 < delta < {bound}, got delta={d}")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "delta", d)


def make_linear(c: Number) -> PwlFunction:
    c = as_fraction(c)
    if not 0 <= c <= 1:
        raise ValueError(f"linear gDFF needs 0 <= c <= 1, got {c}")
    return PwlFunction.linear(c)


def bj1_value(C: Number, x: Number) -> Fraction:
    """Closed-form BJ1 value, usable anywhere on the line."""
    C, x = as_fraction(C), as_fraction(x)
    fc = C - math.floor(C)
    cx = C * x
    frac = cx - math.floor(cx)
    bump = max(Fraction(0), (frac - fc) / (1 - fc)) if fc else Fraction(0)
    return (math.floor(cx) + bump) / math.floor(C)


def bj1_rising_slope(C: Number) -> Fraction:
    C = as_fraction(C)
    fc = C - math.floor(C)
    return C / (math.floor(C) * (1 - fc))


def make_bj1(p: Union[BJParams, Number]) -> PwlFunction:
    """BJ1 as a finite pwl function, exact on ``[-(1-{C})/C, 1 + (1-{C})/C]``.

    The closed form has period ``1/C``: flat on ``[k/C, (k+{C})/C]`` and
    rising with slope ``s = C/(floor(C)(1-{C}))`` on the rest.  Both ends of
    the stored range sit inside rising pieces through 0 and 1, and the tails
    simply continue slope ``s``.  Carrying more periods before switching to
    an affine tail would break superadditivity far out on the negative axis,
    because the closed form stays above ``s*x`` there.
    """
    if not isinstance(p, BJParams):
        p = BJParams(p)
    C = p.C
    if C.denominator == 1:
        return PwlFunction.identity()
    fc = C - math.floor(C)
    lo = -(1 - fc) / C
    hi = 1 - lo
    xs = sorted({x for k in range(-1, math.ceil(C) + 2)
                 for x in (Fraction(k) / C, (k + fc) / C) if lo <= x <= hi})
    s = bj1_rising_slope(C)
    return PwlFunction(tuple(xs), tuple(bj1_value(C, x) for x in xs), s, s)


def make_phi_s_delta(p: Union[SDeltaParams, Number], delta: Number = None) -> PwlFunction:
    """The seven-piece function with plateaus on ``[0, d]`` and ``[1-d, 1]``."""
    if not isinstance(p, SDeltaParams):
        p = SDeltaParams(p, delta)
    s, d = p.s, p.delta
    pts = [(-d, -2 * s * d), (0, 0), (d, 0), (1 - d, 1), (1, 1), (1 + d, 1 + 2 * s * d)]
    return PwlFunction.from_points(pts, s, s)
