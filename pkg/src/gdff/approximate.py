"""Approximating a restricted maximal pwl gDFF by an extreme 2-slope one.

The pipeline has three stages.  ``loosen`` mixes in a little of
``phi_{t,delta}`` so the slack is bounded below away from the strip
``E_delta``.  ``two_slope_fill_in`` replaces the result on ``[0, 1]`` by
the largest function with slopes ``{0, s+}`` through its values on a fine
grid.  ``symmetrize`` reflects the left half about ``(1/2, 1/2)``.  Every
stage error is measured exactly, and the output is re-verified by the
vertex scan rather than trusted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional

from .classify import check_extreme_2slope, check_restricted_maximal
from .common import NotApproximable
from .complex import ExclusionRegion, is_superadditive, min_slack_outside
from .families import make_phi_s_delta
from .pwl import (Number, PwlFunction, affine_combine, as_fraction, max_slope,
                  sup_norm_distance, sup_norm_on)

QPRIME_RULES = ("budget", "gamma")


class Loosened(NamedTuple):
    phi_loose: PwlFunction
    delta: Optional[Fraction]
    gamma: Optional[Fraction]
    t: Fraction
    coefficient: Fraction = Fraction(0)


class FillIn(NamedTuple):
    phi_fill_in: PwlFunction
    q_prime: int
    s_plus: Fraction


def _positive(eps) -> Fraction:
    eps = as_fraction(eps)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    return eps


def choose_delta(t: Fraction, q: int) -> Fraction:
    """``1/m`` with ``m = 2 max(q, ceil(2t/(t-1)), 3)``, strictly below every required bound."""
    m = 2 * max(q, math.ceil(2 * t / (t - 1)), 3)
    return Fraction(1, m)


def loosen(phi_pwl: PwlFunction, epsilon: Number, q: Optional[int] = None) -> Loosened:
    """Mix ``phi_pwl`` with ``phi_{t,delta}`` so the slack off ``E_delta`` is at least gamma.

    The mixing weight starts at ``eps/(3(t-1))`` (capped at 1/2) and is
    halved until the measured distance to ``phi_pwl`` is strictly below
    ``eps/3``.
    """
    eps = _positive(epsilon)
    t = phi_pwl.right_tail_slope
    if t <= 1:
        return Loosened(phi_pwl, None, None, t)
    if q is None:
        q = phi_pwl.common_denominator()
    delta = choose_delta(t, q)
    bump = make_phi_s_delta(t, delta)
    c = min(eps / (3 * (t - 1)), Fraction(1, 2))
    while True:
        loose = affine_combine([1 - c, c], [phi_pwl, bump])
        if sup_norm_distance(loose, phi_pwl) < eps / 3:
            break
        c /= 2
    gamma = c * delta
    slack = min_slack_outside(loose, ExclusionRegion(delta))
    if slack is None or slack < gamma:
        raise RuntimeError(f"loosened function has slack {slack} < gamma = {gamma} off E_delta")
    return Loosened(loose, delta, gamma, t, c)


def choose_q_prime(phi_loose: PwlFunction, s_plus: Fraction, epsilon: Fraction,
                   gamma: Optional[Fraction] = None, rule: str = "budget") -> int:
    """Smallest multiple of ``lcm(2, breakpoint denominators)`` meeting the rule's bound.

    ``"budget"`` asks for ``s+/q' < eps/3``; ``"gamma"`` additionally asks
    for ``s+/q' < gamma/3``.
    """
    if rule not in QPRIME_RULES:
        raise ValueError(f"unknown q' rule {rule!r}")
    bound = epsilon / 3
    if rule == "gamma":
        if gamma is None:
            raise ValueError("the 'gamma' rule needs gamma")
        bound = min(bound, gamma / 3)
    base = math.lcm(2, phi_loose.common_denominator())
    need = math.floor(s_plus / bound) + 1  # least integer with s+/q' < bound
    return base * -(-need // base)


def _left_linear_piece(f: PwlFunction, s_plus: Fraction) -> bool:
    return f(0) == 0 and f.slope_left_of(0) == s_plus


def two_slope_fill_in(phi_loose: PwlFunction, epsilon: Number, delta=None, t=None,
                      gamma=None, rule: str = "budget", q_prime: Optional[int] = None) -> FillIn:
    """Largest ``{0, s+}``-slope function through ``phi_loose`` on the grid ``(1/q')Z``.

    On each grid cell ``[u, u + 1/q']`` the maximum over all grid points
    reduces to two candidates, ``phi(u)`` and ``phi(u + 1/q') - s+ (u + 1/q' - x)``,
    because ``phi_loose`` is nondecreasing with slopes at most ``s+``.  The
    function is built on ``[0, 1]`` and continued with slope ``s+`` on both
    sides, which is where ``phi_loose`` itself has slope ``s+`` near 0.
    """
    eps = _positive(epsilon)
    s_plus = max_slope(phi_loose)
    if s_plus <= 0:
        raise NotApproximable("largest slope must be positive")
    if not _left_linear_piece(phi_loose, s_plus):
        raise NotApproximable("phi_loose is not s+ * x on a left neighbourhood of 0")
    if q_prime is None:
        q_prime = choose_q_prime(phi_loose, s_plus, eps, gamma, rule)
    elif any((b * q_prime).denominator != 1 for b in (*phi_loose.breakpoints, Fraction(1, 2))):
        raise ValueError("q' grid must contain every breakpoint and 1/2")
    grid = [Fraction(k, q_prime) for k in range(q_prime + 1)]
    vals = [phi_loose(u) for u in grid]
    pts = [(grid[0], vals[0])]
    for k in range(q_prime):
        a, b = vals[k], vals[k + 1]
        if b > a:
            pts.append((grid[k + 1] - (b - a) / s_plus, a))
        pts.append((grid[k + 1], b))
    fill = PwlFunction.from_points(pts, s_plus, s_plus)
    return FillIn(fill, q_prime, s_plus)


def symmetrize(phi_fill_in: PwlFunction) -> PwlFunction:
    """Keep ``(-inf, 1/2]`` and replace the rest by ``1 - f(1 - x)``."""
    half = Fraction(1, 2)
    mid = phi_fill_in(half)
    if mid != half:
        raise ValueError(f"f(1/2) = {mid}, symmetrization needs 1/2")
    pts = [(half, half)]
    for b in phi_fill_in.breakpoints:
        if b < half:
            pts.append((b, phi_fill_in(b)))
            pts.append((1 - b, 1 - phi_fill_in(b)))
    tail = phi_fill_in.left_tail_slope
    return PwlFunction.from_points(pts, tail, tail)


# -- full pipeline -----------------------------------------------------------

@dataclass
class ApproxCertificate:
    input: PwlFunction
    epsilon: Fraction
    phi_pwl: PwlFunction
    phi_loose: PwlFunction
    phi_fill_in: PwlFunction
    phi_ext: PwlFunction
    t: Fraction
    delta: Optional[Fraction]
    q: int
    q_prime: int
    s_plus: Fraction
    gamma: Optional[Fraction]
    achieved_error: Fraction
    coefficient: Fraction = Fraction(0)
    window: tuple[Fraction, Fraction] = (Fraction(0), Fraction(1))
    stage_errors: dict = field(default_factory=dict)
    tails_match: bool = True
    q_prime_rule: str = "budget"
    meets_gamma_bound: bool = True

    def manifest(self) -> str:
        def fmt(v):
            return "none" if v is None else str(v)

        rows = [
            ("epsilon", self.epsilon), ("t", self.t), ("q", self.q), ("delta", self.delta),
            ("coefficient", self.coefficient), ("gamma", self.gamma), ("s_plus", self.s_plus),
            ("q_prime", self.q_prime), ("q_prime_rule", self.q_prime_rule),
            ("meets_gamma_bound", str(self.meets_gamma_bound).lower()),
            ("window", f"{self.window[0]}:{self.window[1]}"),
            ("tails_match", str(self.tails_match).lower()),
        ]
        rows += [(f"error.{k}", v) for k, v in self.stage_errors.items()]
        rows.append(("achieved_error", self.achieved_error))
        return "".join(f"{k}: {fmt(v)}\n" for k, v in rows)


def approximate_extreme(phi: PwlFunction, epsilon: Number, rule: str = "budget") -> ApproxCertificate:
    """Run the three stages and check the result.

    The error is the exact sup norm over ``[-delta, 1 + delta]``; beyond
    that the output has tail slope ``s+`` while the input has ``t``.
    """
    eps = _positive(epsilon)
    identity = PwlFunction.identity()
    if phi.is_linear():
        if phi == identity:
            z = Fraction(0)
            return ApproxCertificate(phi, eps, phi, phi, phi, phi, Fraction(1), None, 1, 1,
                                     Fraction(1), None, z, stage_errors={"loose": z, "fill_in": z,
                                                                         "symmetrize": z})
        raise NotApproximable("a*x with a != 1 has no extreme approximation")
    res = check_restricted_maximal(phi)
    if not res.ok:
        raise NotApproximable(f"input is not restricted maximal: {res.witness}")

    q = phi.common_denominator()
    loose = loosen(phi, eps, q)
    fill = two_slope_fill_in(loose.phi_loose, eps, loose.delta, loose.t, loose.gamma, rule=rule)
    ext = symmetrize(fill.phi_fill_in)

    d = loose.delta
    lo, hi = -d, 1 + d
    errors = {
        "loose": sup_norm_distance(phi, loose.phi_loose),
        "fill_in": sup_norm_on(loose.phi_loose, fill.phi_fill_in, 0, 1),
        "symmetrize": sup_norm_on(fill.phi_fill_in, ext, lo, hi),
        "loose_vs_ext": sup_norm_on(loose.phi_loose, ext, lo, hi),
    }
    achieved = sup_norm_on(phi, ext, lo, hi)
    cert = ApproxCertificate(
        phi, eps, phi, loose.phi_loose, fill.phi_fill_in, ext, loose.t, d, q, fill.q_prime,
        fill.s_plus, loose.gamma, achieved, loose.coefficient, (lo, hi), errors,
        ext.right_tail_slope == phi.right_tail_slope, rule,
        fill.s_plus / fill.q_prime < loose.gamma / 3,
    )
    if not achieved < eps:
        raise RuntimeError(f"achieved error {achieved} is not below epsilon {eps}")
    if not is_superadditive(ext).ok or not check_extreme_2slope(ext).ok:
        raise RuntimeError("symmetrized fill-in failed the extreme 2-slope check")
    return cert

