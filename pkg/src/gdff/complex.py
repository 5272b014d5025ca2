"""Superadditivity slack over the two-dimensional polyhedral complex.

For a continuous pwl function ``f`` with breakpoints ``B`` the slack
``f(x+y) - f(x) - f(y)`` is affine on every cell cut out by the lines
``x = b``, ``y = b`` and ``x + y = b`` (``b`` in ``B``).  When both tails
share one slope, the slack is also constant along every unbounded edge, so
its infimum over the plane is attained at a vertex of that arrangement.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Optional, Sequence

import numpy as np

from .common import Check, require_equal_tails
from .pwl import PwlFunction, as_fraction

_INT64_SAFE = 2 ** 61
_CHUNK = 1 << 21  # vertices evaluated per numpy batch


class Provenance(enum.Enum):
    PAIR = "breakpoint x breakpoint"
    DIFFERENCE = "breakpoint x (breakpoint - breakpoint)"
    TAIL_FACE = "vertex of an unbounded edge"


@dataclass(frozen=True, order=True)
class ComplexVertex:
    x: Fraction
    y: Fraction
    provenance: frozenset = frozenset()


@dataclass(frozen=True)
class SlackReport:
    vertex: ComplexVertex
    slack: Fraction


@dataclass(frozen=True)
class ExclusionRegion:
    """The open set of points with ``|x| < delta``, ``|y| < delta`` or ``|x+y-1| < delta``."""

    delta: Fraction

    def __post_init__(self):
        d = as_fraction(self.delta)
        if d <= 0:
            raise ValueError("delta must be positive")
        object.__setattr__(self, "delta", d)

    def __contains__(self, point) -> bool:
        x, y = point
        d = self.delta
        return -d < x < d or -d < y < d or 1 - d < x + y < 1 + d


def delta_slack(f: PwlFunction, x, y) -> Fraction:
    x, y = as_fraction(x), as_fraction(y)
    return f(x + y) - f(x) - f(y)


def tail_face_vertices(f: PwlFunction) -> list[tuple[ComplexVertex, tuple[int, int]]]:
    """Vertex and recession direction of every unbounded edge of the complex.

    Edges have one of ``x``, ``y``, ``x + y`` pinned to a breakpoint while
    the other two coordinates run through the same unbounded tail.
    """
    require_equal_tails(f)
    if not f.breakpoints:
        return []
    lo, hi = f.breakpoints[0], f.breakpoints[-1]
    tag = frozenset({Provenance.TAIL_FACE})
    out = []
    for b in f.breakpoints:
        up = max(hi, hi - b)  # y and b + y both in the right tail
        down = min(lo, lo - b)  # y and b + y both in the left tail
        out.append((ComplexVertex(b, up, tag), (0, 1)))
        out.append((ComplexVertex(b, down, tag), (0, -1)))
        out.append((ComplexVertex(up, b, tag), (1, 0)))
        out.append((ComplexVertex(down, b, tag), (-1, 0)))
        # x + y = b, x in the right tail, y in the left tail (and mirrored)
        x0 = max(hi, b - lo)
        out.append((ComplexVertex(x0, b - x0, tag), (1, -1)))
        out.append((ComplexVertex(b - x0, x0, tag), (-1, 1)))
    return out


def enumerate_vertices(f: PwlFunction) -> list[ComplexVertex]:
    """All zero-dimensional faces of the complex, deduplicated and sorted."""
    require_equal_tails(f)
    bps = f.breakpoints
    found: dict[tuple[Fraction, Fraction], set] = {}

    def add(x, y, tag):
        found.setdefault((x, y), set()).add(tag)

    for a in bps:
        for b in bps:
            add(a, b, Provenance.PAIR)
            add(a, b - a, Provenance.DIFFERENCE)
            add(b - a, a, Provenance.DIFFERENCE)
    for v, _ in tail_face_vertices(f):
        add(v.x, v.y, Provenance.TAIL_FACE)
    return [ComplexVertex(x, y, frozenset(tags)) for (x, y), tags in sorted(found.items())]


def slack_reports(f: PwlFunction) -> list[SlackReport]:
    return [SlackReport(v, delta_slack(f, v.x, v.y)) for v in enumerate_vertices(f)]


# -- vectorised exact minimisation -----------------------------------------

def _lcm_of_denominators(values: Iterable[Fraction]) -> int:
    return reduce(math.lcm, (v.denominator for v in values), 1)


class _ScaledEvaluator:
    """Evaluates ``E * f(p / D)`` exactly on integer arrays ``p``."""

    def __init__(self, f: PwlFunction, scale: int, max_arg: int):
        self.n = len(f.breakpoints)
        piece = f.piece_slopes()
        slope_over_d = [s / scale for s in piece]
        self.E = _lcm_of_denominators([*f.values, f.anchor, *slope_over_d])
        b = [int(x * scale) for x in f.breakpoints]
        v = [int(x * self.E) for x in f.values]
        m = [int(s * self.E) for s in slope_over_d]
        anchor = int(f.anchor * self.E)
        biggest = max([abs(anchor), *map(abs, v)], default=0) + \
            max(map(abs, m)) * (max_arg + max(map(abs, b), default=0))
        self.dtype = np.int64 if 4 * biggest < _INT64_SAFE and max_arg < _INT64_SAFE else object
        self.B = np.array(b, dtype=self.dtype)
        self.V = np.array(v, dtype=self.dtype)
        self.M = np.array(m, dtype=self.dtype)
        self.anchor = anchor

    def __call__(self, p: np.ndarray) -> np.ndarray:
        if self.n == 0:
            return self.anchor + self.M[0] * p
        idx = np.searchsorted(self.B, p, side="right") - 1
        a = np.clip(idx, 0, self.n - 1)
        return self.V[a] + self.M[idx + 1] * (p - self.B[a])


def _min_slack_on_arrangement(f: PwlFunction, xs: Sequence[Fraction], ss: Sequence[Fraction],
                              region: Optional[ExclusionRegion]):
    """Minimum slack over vertices of the line arrangement ``x, y in xs``, ``x + y in ss``.

    Returns ``(slack, x, y)`` or ``None`` when every vertex is excluded.
    The arrangement is symmetric under swapping ``x`` and ``y`` and so is the
    slack, so only one of each mirrored pair of vertex families is scanned.
    """
    scale = _lcm_of_denominators([*xs, *ss, *f.breakpoints])
    dtype = np.int64 if max(abs(v) for v in (*xs, *ss)) * scale * 4 < _INT64_SAFE else object
    X = np.array([int(v * scale) for v in xs], dtype=dtype)
    S = np.array([int(v * scale) for v in ss], dtype=dtype)
    max_arg = 2 * int(max(abs(v) for v in (*xs, *ss)) * scale)
    ev = _ScaledEvaluator(f, scale, max_arg)
    if ev.dtype is object:
        X, S = X.astype(object), S.astype(object)

    best = None
    d = int(region.delta * scale) if region is not None else 0
    step = max(1, _CHUNK // max(len(X), len(S)))
    for start in range(0, len(X), step):
        xb = X[start:start + step]
        families = (
            (np.repeat(xb, len(X)), np.tile(X, len(xb))),  # x = b, y = b'
            (np.repeat(xb, len(S)), np.tile(S, len(xb)) - np.repeat(xb, len(S))),  # x = b, x+y = b'
        )
        for px, py in families:
            if region is not None:
                s = px + py
                keep = ~(((-d < px) & (px < d)) | ((-d < py) & (py < d))
                         | ((scale - d < s) & (s < scale + d)))
                px, py = px[keep], py[keep]
            if len(px) == 0:
                continue
            slack = ev(px + py) - ev(px) - ev(py)
            i = int(np.argmin(slack))
            value = Fraction(int(slack[i]), ev.E)
            if best is None or value < best[0]:
                best = (value, Fraction(int(px[i]), scale), Fraction(int(py[i]), scale))
    return best


def _global_min(f: PwlFunction, region: Optional[ExclusionRegion]) -> Optional[SlackReport]:
    require_equal_tails(f)
    if not f.breakpoints:
        # slack is the constant -f(0)
        v = ComplexVertex(Fraction(0), Fraction(0))
        if region is not None and (0, 0) in region:
            v = ComplexVertex(1 + region.delta, 1 + region.delta)
        return SlackReport(v, -f.anchor)
    xs = list(f.breakpoints)
    ss = list(f.breakpoints)
    if region is not None:
        d = region.delta
        # refine by the boundary of the excluded strips so every remaining cell is closed
        xs = sorted({*xs, -d, d})
        ss = sorted({*ss, 1 - d, 1 + d})
    best = _min_slack_on_arrangement(f, xs, ss, region)
    if best is None:
        return None
    value, x, y = best
    return SlackReport(ComplexVertex(x, y), value)


def minimum_slack(f: PwlFunction) -> SlackReport:
    """The vertex of smallest slack; its slack is the infimum over the plane."""
    return _global_min(f, None)


def is_superadditive(f: PwlFunction) -> Check:
    """Certify ``f(x+y) >= f(x) + f(y)`` on the whole plane.

    On failure the witness is the most violated vertex as a SlackReport.
    """
    worst = minimum_slack(f)
    if worst.slack >= 0:
        return Check(True)
    return Check(False, worst)


def is_subadditive(f: PwlFunction) -> Check:
    res = is_superadditive(-f)
    if res.ok:
        return res
    w = res.witness
    return Check(False, SlackReport(w.vertex, -w.slack))


def min_slack_outside(f: PwlFunction, region: ExclusionRegion) -> Optional[Fraction]:
    """Exact infimum of the slack over the plane minus ``region``."""
    rep = _global_min(f, region)
    return None if rep is None else rep.slack


def worst_vertex_outside(f: PwlFunction, region: ExclusionRegion) -> Optional[SlackReport]:
    return _global_min(f, region)
