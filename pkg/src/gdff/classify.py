"""The maximality ladder and randomized validity falsification."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .common import Check, Verdict, require_equal_tails
from .complex import is_superadditive
from .pwl import PwlFunction, as_fraction, slopes

Witness = tuple[str, object]


# -- individual conditions ---------------------------------------------------

def _zero_at_origin(f: PwlFunction) -> Optional[Witness]:
    v = f(0)
    return None if v == 0 else ("f(0)=0", f"f(0) = {v}")


def _superadditive(f: PwlFunction) -> Optional[Witness]:
    res = is_superadditive(f)
    if res.ok:
        return None
    w = res.witness
    return ("superadditive", f"slack {w.slack} at (x, y) = ({w.vertex.x}, {w.vertex.y})")


def nonnegative_on_positive_axis(f: PwlFunction) -> Check:
    """Exact test of ``f >= 0`` on ``[0, inf)``; the witness is a negative point."""
    if f(0) < 0:
        return Check(False, Fraction(0))
    for b in f.breakpoints:
        if b > 0 and f(b) < 0:
            return Check(False, b)
    if f.right_tail_slope < 0:
        start = max([Fraction(0), *f.breakpoints])
        # the first integer step past the zero crossing of the tail
        x = start + (f(start) / -f.right_tail_slope) + 1
        return Check(False, x)
    return Check(True)


def symmetry_defect(f: PwlFunction) -> Optional[Fraction]:
    """A point where ``f(x) + f(1-x) != 1``, or None if the identity holds."""
    g = f + f.reflect(1)
    if g.is_linear() and g.left_tail_slope == 0 and g.anchor == 1:
        return None
    for x in (Fraction(0), Fraction(1, 2), *g.breakpoints, Fraction(1)):
        if g(x) != 1:
            return x
    # g is not constant, so it differs from 1 somewhere near its breakpoints
    return (g.breakpoints[0] - 1) if g.breakpoints else Fraction(1)


def _symmetric(f: PwlFunction) -> Optional[Witness]:
    x = symmetry_defect(f)
    if x is None:
        return None
    return ("symmetry", f"f(x) + f(1-x) = {f(x) + f(1 - x)} at x = {x}")


def _is_scaled_identity(f: PwlFunction) -> bool:
    return f.is_linear() and f.anchor == 0 and 0 <= f.left_tail_slope < 1


@lru_cache(maxsize=256)
def _base_conditions(f: PwlFunction) -> tuple[Witness, ...]:
    require_equal_tails(f)
    out = []
    for cond in (_zero_at_origin, _superadditive):
        w = cond(f)
        if w is not None:
            out.append(w)
    nonneg = nonnegative_on_positive_axis(f)
    if not nonneg.ok:
        x = nonneg.witness
        out.append(("nonnegative on R+", f"f({x}) = {f(x)}"))
    return tuple(out)


@lru_cache(maxsize=256)
def _symmetry_condition(f: PwlFunction) -> Optional[Witness]:
    return _symmetric(f)


# -- the ladder --------------------------------------------------------------

def check_maximal(f: PwlFunction) -> Check:
    """f(0)=0, superadditive, nonnegative on R+, and symmetric or ``a*x`` with ``0 <= a < 1``."""
    witnesses = list(_base_conditions(f))
    sym = _symmetry_condition(f)
    if sym is not None and not _is_scaled_identity(f):
        witnesses.append(sym)
    return Check(not witnesses, witnesses)


def check_restricted_maximal(f: PwlFunction) -> Check:
    witnesses = list(_base_conditions(f))
    sym = _symmetry_condition(f)
    if sym is not None:
        witnesses.append(sym)
    return Check(not witnesses, witnesses)


def check_strongly_maximal(f: PwlFunction) -> Check:
    res = check_restricted_maximal(f)
    witnesses = list(res.witness)
    s = f.slope_right_of(0)
    if s != 0:
        witnesses.append(("slope 0 at 0+", f"right slope at 0 is {s}"))
    return Check(not witnesses, witnesses)


def check_extreme_2slope(f: PwlFunction) -> Check:
    """The sufficient condition: ``f = id``, or strongly maximal with two slope values."""
    require_equal_tails(f)
    if f == PwlFunction.identity():
        return Check(True, [])
    res = check_strongly_maximal(f)
    witnesses = list(res.witness)
    n = len(slopes(f))
    if n != 2:
        witnesses.append(("two slope values", f"{n} distinct slopes"))
    return Check(not witnesses, witnesses)


def extremality(f: PwlFunction) -> Verdict:
    """Extremality where it is decidable from known results, UNKNOWN otherwise."""
    if check_extreme_2slope(f).ok:
        return Verdict.CERTIFIED
    if f == PwlFunction.linear(0):
        return Verdict.CERTIFIED
    if not check_maximal(f).ok:
        return Verdict.FALSIFIED  # extreme functions are maximal
    s = f.slope_right_of(0)
    if 0 < s < 1:
        # f = s*x + (1-s)*g with g maximal, a proper convex combination
        return Verdict.FALSIFIED
    return Verdict.UNKNOWN


# -- validity ----------------------------------------------------------------

def _random_multiset(rng: random.Random, size: int, tight: bool) -> list[Fraction]:
    d = rng.randint(1, 64)
    xs = [Fraction(rng.randint(-2 * d, 2 * d), d) for _ in range(size - 1)]
    target = Fraction(1) if tight else 1 - Fraction(rng.randint(1, d), d)
    xs.append(target - sum(xs, Fraction(0)))
    return xs


def falsify_validity(f: PwlFunction, trials: int = 10_000, max_multiset: int = 6,
                     seed: int = 0) -> Optional[list[Fraction]]:
    """Search for a multiset with sum at most 1 whose image sums above 1.

    Trial ``i`` has ``1 + i % max_multiset`` elements; even trials sum to
    exactly 1, so the very first trial is the multiset ``{1}``.
    """
    if trials <= 0 or max_multiset <= 0:
        raise ValueError("trials and max_multiset must be positive")
    rng = random.Random(seed)
    for i in range(trials):
        xs = _random_multiset(rng, 1 + i % max_multiset, tight=i % 2 == 0)
        if sum((f(x) for x in xs), Fraction(0)) > 1:
            return sorted(xs)
    return None


# -- generalized symmetry ----------------------------------------------------

@dataclass(frozen=True)
class SymmetryGap:
    """``min_{k<=K} (1/k)(1 - f(1-kr)) - f(r)`` together with the exact infimum over all k."""

    r: Fraction
    K: int
    gap: Fraction
    argmin_k: int
    infimum_gap: Fraction
    infimum_attained: bool
    certified: bool  # no k > K lowers the bounded minimum


def _ratio(f: PwlFunction, r: Fraction, k: int) -> Fraction:
    return (1 - f(1 - k * r)) / k


def ratio_extremum(f: PwlFunction, r: Fraction, largest: bool = False):
    """Exact ``inf`` (or ``sup``) over all positive k of ``(1/k)(1 - f(1-kr))``.

    Once ``1 - k*r`` leaves the breakpoint range, ``f`` is affine there and
    the ratio becomes ``c/k + t*r``, monotone in k, so only finitely many k
    need inspecting.  Returns ``(value, attained)``; an unattained value is
    the limit ``t*r``.
    """
    t = f.left_tail_slope
    bps = f.breakpoints
    if r == 0:
        k0, c, limit = 1, 1 - f(1), Fraction(0)
    else:
        if not bps:
            k0 = 1
        elif r > 0:
            k0 = max(1, math.ceil((1 - bps[0]) / r))  # least k with 1 - k*r <= x_1
        else:
            k0 = max(1, math.ceil((bps[-1] - 1) / -r))  # least k with 1 - k*r >= x_n
        edge = (bps[0] if r > 0 else bps[-1]) if bps else Fraction(0)
        c = 1 - (f(edge) + t * (1 - edge))  # 1 minus the tail line at x = 1
        limit = t * r
    head = [_ratio(f, r, k) for k in range(1, k0)]
    pick = max if largest else min
    # c/k moves toward 0 as k grows: away from the extremum when c has the "good" sign
    tail_attained = (c >= 0) if largest else (c <= 0)
    tail = _ratio(f, r, k0) if tail_attained else limit
    value = pick(head + [tail])
    attained = tail_attained or value in head
    return value, attained


def generalized_symmetry_gap(f: PwlFunction, r, K: int) -> SymmetryGap:
    """Bounded generalized-symmetry diagnostic with an exact termination test."""
    require_equal_tails(f)
    if K < 1:
        raise ValueError("K must be at least 1")
    r = as_fraction(r)
    fr = f(r)
    best, best_k = min((_ratio(f, r, k), k) for k in range(1, K + 1))
    inf_value, attained = ratio_extremum(f, r)
    return SymmetryGap(r, K, best - fr, best_k, inf_value - fr, attained, best == inf_value)


# -- the full report ---------------------------------------------------------

@dataclass
class Classification:
    is_valid_certified: Verdict
    is_maximal: bool
    is_restricted_maximal: bool
    is_strongly_maximal: bool
    is_extreme_2slope: bool
    extremality: Verdict
    witnesses: list[Witness] = field(default_factory=list)

    def report(self) -> str:
        lines = [
            f"valid: {self.is_valid_certified}",
            f"maximal: {str(self.is_maximal).lower()}",
            f"restricted_maximal: {str(self.is_restricted_maximal).lower()}",
            f"strongly_maximal: {str(self.is_strongly_maximal).lower()}",
            f"extreme_2slope: {str(self.is_extreme_2slope).lower()}",
            f"extreme: {self.extremality}",
        ]
        lines += [f"witness.{prop}: {detail}" for prop, detail in self.witnesses]
        return "\n".join(lines) + "\n"


def classify(f: PwlFunction, trials: int = 1000, seed: int = 0) -> Classification:
    maximal = check_maximal(f)
    restricted = check_restricted_maximal(f)
    strongly = check_strongly_maximal(f)
    two_slope = check_extreme_2slope(f)

    witnesses: list[Witness] = []
    for _, res in (("maximal", maximal), ("restricted", restricted),
                   ("strongly", strongly), ("2slope", two_slope)):
        for w in res.witness:
            if w not in witnesses:
                witnesses.append(w)

    if maximal.ok:
        valid = Verdict.CERTIFIED
    else:
        bad = falsify_validity(f, trials=trials, seed=seed)
        if bad is None:
            valid = Verdict.UNKNOWN
        else:
            valid = Verdict.FALSIFIED
            value = sum((f(x) for x in bad), Fraction(0))
            witnesses.append(("valid", f"multiset {{{', '.join(map(str, bad))}}} maps to {value} > 1"))
    return Classification(valid, maximal.ok, restricted.ok, strongly.ok, two_slope.ok,
                          extremality(f), witnesses)
