"""Exact continuous piecewise-linear functions on the real line.

A :class:`PwlFunction` is stored as the interpolation of finitely many
breakpoint values plus two affine tails.  All coordinates, values and slopes
are :class:`fractions.Fraction`; nothing here ever touches a float.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from numbers import Rational
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]

#: Returned by :func:`sup_norm_distance` when the tails diverge.
UNBOUNDED = math.inf


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings; floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"expected an exact rational, got {type(x).__name__}: {x!r}")


@dataclass(frozen=True)
class PwlFunction:
    """Continuous piecewise-linear function with affine tails.

    Instances are canonical: collinear breakpoints are pruned on
    construction, so two instances compare equal exactly when they describe
    the same function.  ``anchor`` always holds the value at 0; it carries
    information only when there are no breakpoints.
    """

    breakpoints: tuple[Fraction, ...]
    values: tuple[Fraction, ...]
    left_tail_slope: Fraction
    right_tail_slope: Fraction
    anchor: Fraction = Fraction(0)
    _slopes: tuple[Fraction, ...] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        bps = tuple(as_fraction(b) for b in self.breakpoints)
        vals = tuple(as_fraction(v) for v in self.values)
        left = as_fraction(self.left_tail_slope)
        right = as_fraction(self.right_tail_slope)
        if len(bps) != len(vals):
            raise ValueError("breakpoints and values differ in length")
        if any(b >= c for b, c in zip(bps, bps[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if not bps and left != right:
            raise ValueError("a function without breakpoints needs one global slope")

        interior = [(vals[i + 1] - vals[i]) / (bps[i + 1] - bps[i]) for i in range(len(bps) - 1)]
        # prune breakpoints whose neighbouring slopes agree
        keep = []
        for i in range(len(bps)):
            before = left if i == 0 else interior[i - 1]
            after = right if i == len(bps) - 1 else interior[i]
            if before != after:
                keep.append(i)
        if len(keep) < len(bps):
            anchor = _eval_raw(bps, vals, interior, left, right, Fraction(0)) if bps else as_fraction(self.anchor)
            bps = tuple(bps[i] for i in keep)
            vals = tuple(vals[i] for i in keep)
            interior = [(vals[i + 1] - vals[i]) / (bps[i + 1] - bps[i]) for i in range(len(bps) - 1)]
            if not bps:
                anchor_value = anchor
            else:
                anchor_value = _eval_raw(bps, vals, interior, left, right, Fraction(0))
        elif bps:
            anchor_value = _eval_raw(bps, vals, interior, left, right, Fraction(0))
        else:
            anchor_value = as_fraction(self.anchor)

        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "left_tail_slope", left)
        object.__setattr__(self, "right_tail_slope", right)
        object.__setattr__(self, "anchor", anchor_value)
        object.__setattr__(self, "_slopes", tuple(interior))

    # -- construction -----------------------------------------------------

    @classmethod
    def linear(cls, slope: Number, intercept: Number = 0) -> "PwlFunction":
        slope = as_fraction(slope)
        return cls((), (), slope, slope, as_fraction(intercept))

    @classmethod
    def identity(cls) -> "PwlFunction":
        return cls.linear(1)

    @classmethod
    def from_points(cls, points: Iterable[tuple[Number, Number]], left_slope: Number,
                    right_slope: Number) -> "PwlFunction":
        """Build from ``(x, value)`` pairs in any order; duplicates must agree."""
        table: dict[Fraction, Fraction] = {}
        for x, y in points:
            x, y = as_fraction(x), as_fraction(y)
            if table.setdefault(x, y) != y:
                raise ValueError(f"conflicting values at x={x}: a jump is not representable")
        xs = sorted(table)
        return cls(tuple(xs), tuple(table[x] for x in xs), as_fraction(left_slope),
                   as_fraction(right_slope))

    # -- evaluation -------------------------------------------------------

    def __call__(self, x: Number) -> Fraction:
        return _eval_raw(self.breakpoints, self.values, self._slopes, self.left_tail_slope,
                         self.right_tail_slope, as_fraction(x), self.anchor)

    @property
    def interior_slopes(self) -> tuple[Fraction, ...]:
        return self._slopes

    def piece_slopes(self) -> tuple[Fraction, ...]:
        """Slopes of all pieces from left to right, tails included."""
        if not self.breakpoints:
            return (self.left_tail_slope,)
        return (self.left_tail_slope, *self._slopes, self.right_tail_slope)

    def slope_right_of(self, x: Number) -> Fraction:
        """Slope of the piece immediately to the right of ``x``."""
        x = as_fraction(x)
        i = bisect_right(self.breakpoints, x)
        return self.piece_slopes()[i] if self.breakpoints else self.left_tail_slope

    def slope_left_of(self, x: Number) -> Fraction:
        """Slope of the piece immediately to the left of ``x``."""
        x = as_fraction(x)
        if not self.breakpoints:
            return self.left_tail_slope
        i = bisect_right(self.breakpoints, x)
        if i > 0 and self.breakpoints[i - 1] == x:
            i -= 1
        return self.piece_slopes()[i]

    def is_linear(self) -> bool:
        return not self.breakpoints

    @property
    def has_equal_tails(self) -> bool:
        return self.left_tail_slope == self.right_tail_slope

    def common_denominator(self) -> int:
        """Least q with every breakpoint in (1/q)Z."""
        return reduce(math.lcm, (b.denominator for b in self.breakpoints), 1)

    # -- algebra ----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, PwlFunction):
            return affine_combine([1, 1], [self, other])
        c = as_fraction(other)
        return PwlFunction(self.breakpoints, tuple(v + c for v in self.values),
                           self.left_tail_slope, self.right_tail_slope, self.anchor + c)

    __radd__ = __add__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, c):
        if isinstance(c, PwlFunction):
            return NotImplemented
        c = as_fraction(c)
        return PwlFunction(self.breakpoints, tuple(c * v for v in self.values),
                           c * self.left_tail_slope, c * self.right_tail_slope, c * self.anchor)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self * (1 / as_fraction(c))

    def reflect(self, center: Number = 1) -> "PwlFunction":
        """The function ``x -> f(center - x)``."""
        c = as_fraction(center)
        if not self.breakpoints:
            return PwlFunction.linear(-self.left_tail_slope, self(c))
        return PwlFunction(tuple(c - b for b in reversed(self.breakpoints)),
                           tuple(reversed(self.values)),
                           -self.right_tail_slope, -self.left_tail_slope)

    def __str__(self):
        if not self.breakpoints:
            return f"PwlFunction(linear: slope {self.left_tail_slope}, value {self.anchor} at 0)"
        pts = ", ".join(f"({b}, {v})" for b, v in zip(self.breakpoints, self.values))
        return (f"PwlFunction(left slope {self.left_tail_slope}; {pts}; "
                f"right slope {self.right_tail_slope})")


def _eval_raw(bps, vals, slopes, left, right, x, anchor=Fraction(0)):
    if not bps:
        return anchor + left * x
    i = bisect_right(bps, x) - 1
    if i < 0:
        return vals[0] + left * (x - bps[0])
    if i >= len(bps) - 1:
        return vals[-1] + right * (x - bps[-1])
    return vals[i] + slopes[i] * (x - bps[i])


def affine_combine(coeffs: Sequence[Number], fns: Sequence[PwlFunction]) -> PwlFunction:
    """Exact pointwise linear combination ``sum(c_k * f_k)``."""
    if not coeffs or len(coeffs) != len(fns):
        raise ValueError("coefficient and function lists must be nonempty and of equal length")
    cs = [as_fraction(c) for c in coeffs]
    xs = merged_breakpoints(fns)
    left = sum((c * f.left_tail_slope for c, f in zip(cs, fns)), Fraction(0))
    right = sum((c * f.right_tail_slope for c, f in zip(cs, fns)), Fraction(0))
    if not xs:
        return PwlFunction.linear(left, sum((c * f.anchor for c, f in zip(cs, fns)), Fraction(0)))
    vals = tuple(sum((c * f(x) for c, f in zip(cs, fns)), Fraction(0)) for x in xs)
    return PwlFunction(tuple(xs), vals, left, right)


def merged_breakpoints(fns: Iterable[PwlFunction]) -> list[Fraction]:
    return sorted(set().union(*(f.breakpoints for f in fns)))


def slopes(f: PwlFunction) -> set[Fraction]:
    """Distinct slope values, both tails included."""
    return set(f.piece_slopes())


def min_slope(f: PwlFunction) -> Fraction:
    return min(f.piece_slopes())


def max_slope(f: PwlFunction) -> Fraction:
    return max(f.piece_slopes())


def sup_norm_distance(f: PwlFunction, g: PwlFunction):
    """``sup |f - g|`` over the whole line, or :data:`UNBOUNDED`."""
    if f.left_tail_slope != g.left_tail_slope or f.right_tail_slope != g.right_tail_slope:
        return UNBOUNDED
    h = f - g
    if not h.breakpoints:
        return abs(h.anchor)
    return max(abs(v) for v in h.values)


def sup_norm_on(f: PwlFunction, g: PwlFunction, lo: Number, hi: Number) -> Fraction:
    """``max |f - g|`` over the closed window ``[lo, hi]``; always finite."""
    lo, hi = as_fraction(lo), as_fraction(hi)
    if lo > hi:
        raise ValueError("empty window")
    h = f - g
    pts = [lo, hi, *(b for b in h.breakpoints if lo < b < hi)]
    return max(abs(h(x)) for x in pts)


def restrict_and_interpolate(f: PwlFunction, q: int, window: tuple[Number, Number]) -> PwlFunction:
    """Interpolate ``f`` through the grid ``(1/q)Z`` inside ``window``.

    The tails of ``f`` are carried over unchanged, which is consistent
    because every breakpoint of ``f`` must lie inside the window.
    """
    if q < 1:
        raise ValueError("q must be a positive integer")
    lo, hi = (as_fraction(w) for w in window)
    if (lo * q).denominator != 1 or (hi * q).denominator != 1:
        raise ValueError("window ends must lie on the grid (1/q)Z")
    if not lo < 0 < 1 < hi:
        raise ValueError("window must satisfy lo < 0 < 1 < hi")
    if f.breakpoints and (f.breakpoints[0] < lo or f.breakpoints[-1] > hi):
        raise ValueError("window too small: f has breakpoints outside it")
    lo_k, hi_k = int(lo * q), int(hi * q)
    grid = [Fraction(k, q) for k in range(lo_k, hi_k + 1)]
    return PwlFunction(tuple(grid), tuple(f(x) for x in grid), f.left_tail_slope, f.right_tail_slope)
