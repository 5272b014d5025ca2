"""Conversions between gDFFs and cut-generating functions for ``Y_{=1}``.

``pi_lambda = (x - (1 - lambda) phi) / lambda`` and its inverse
``phi_lambda = (x - lambda pi) / (1 - lambda)`` are exact affine maps on
pwl functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from .classify import ratio_extremum, symmetry_defect
from .common import Verdict, require_equal_tails
from .complex import is_subadditive
from .pwl import Number, PwlFunction, as_fraction


@dataclass(frozen=True)
class ConversionParams:
    lam: Fraction

    def __post_init__(self):
        lam = as_fraction(self.lam)
        if not 0 < lam < 1:
            raise ValueError(f"lambda must lie in (0, 1), got {lam}")
        object.__setattr__(self, "lam", lam)


class CgfVerdict(NamedTuple):
    verdict: Verdict
    witness: Optional[str] = None


def gdff_to_cgf(phi: PwlFunction, lam: Number) -> PwlFunction:
    lam = ConversionParams(lam).lam
    return (PwlFunction.identity() - (1 - lam) * phi) / lam


def max_admissible_lambda(pi: PwlFunction) -> Fraction:
    """Largest lambda keeping ``phi_lambda`` nonnegative just right of 0."""
    s = pi.slope_right_of(0)
    return 1 / s if s > 1 else Fraction(1)


def cgf_to_gdff(pi: PwlFunction, lam: Number) -> PwlFunction:
    """``phi_lambda``; lambda may equal the admissible threshold but not exceed it."""
    lam = ConversionParams(lam).lam
    bound = max_admissible_lambda(pi)
    if lam > bound:
        raise ValueError(f"lambda = {lam} exceeds the admissible threshold {bound}")
    return (PwlFunction.identity() - lam * pi) / (1 - lam)


def _breakpoint_symmetry_scan(pi: PwlFunction) -> Optional[str]:
    """Compare ``pi(r)`` with the exact ``sup_k (1/k)(1 - pi(1-kr))`` at the breakpoints."""
    for r in sorted({Fraction(0), Fraction(1), *pi.breakpoints}):
        sup, _ = ratio_extremum(pi, r, largest=True)
        if pi(r) < sup:
            return f"invalid: some k gives (1/k)(1 - pi(1-kr)) > pi(r) at r = {r}"
        if pi(r) > sup:
            return f"pi({r}) = {pi(r)} exceeds the symmetric supremum {sup}"
    return None


def check_minimal_cgf(pi: PwlFunction, K: int = 8) -> CgfVerdict:
    """Certify, refute or leave undecided minimality of a cut-generating function.

    Certification needs ``pi(0) = 0``, subadditivity and either the plain
    symmetry ``pi(x) + pi(1-x) = 1`` or ``pi = a*x`` with ``a >= 1``; both
    imply the sup form of generalized symmetry.  ``K`` bounds an extra scan
    of small multipliers at the breakpoints.
    """
    require_equal_tails(pi)
    if K < 1:
        raise ValueError("K must be at least 1")
    if pi(0) != 0:
        return CgfVerdict(Verdict.FALSIFIED, f"pi(0) = {pi(0)}")
    sub = is_subadditive(pi)
    if not sub.ok:
        w = sub.witness
        return CgfVerdict(Verdict.FALSIFIED,
                          f"not subadditive at ({w.vertex.x}, {w.vertex.y}), slack {w.slack}")
    for r in pi.breakpoints:
        for k in range(1, K + 1):
            if k * pi(r) + pi(1 - k * r) < 1:
                return CgfVerdict(Verdict.FALSIFIED, f"k*pi(r) + pi(1-kr) < 1 at r = {r}, k = {k}")
    if symmetry_defect(pi) is None:
        return CgfVerdict(Verdict.CERTIFIED)
    if pi.is_linear() and pi.left_tail_slope >= 1:
        return CgfVerdict(Verdict.CERTIFIED)
    problem = _breakpoint_symmetry_scan(pi)
    if problem is not None:
        return CgfVerdict(Verdict.FALSIFIED, problem)
    return CgfVerdict(Verdict.UNKNOWN, "generalized symmetry holds at breakpoints only")


def check_restricted_minimal_cgf(pi: PwlFunction, K: int = 8) -> CgfVerdict:
    res = check_minimal_cgf(pi, K)
    if pi(1) != 1:
        return CgfVerdict(Verdict.FALSIFIED, f"pi(1) = {pi(1)}")
    return res


def strongly_maximal_from_cgf(pi: PwlFunction) -> PwlFunction:
    """``phi_lambda`` at ``lambda = 1/s``, s the right slope of ``pi`` at 0."""
    if pi.is_linear():
        raise ValueError("pi is linear; no strongly maximal gDFF arises from it")
    res = check_restricted_minimal_cgf(pi)
    if res.verdict is not Verdict.CERTIFIED:
        raise ValueError(f"pi is not certified restricted minimal ({res.verdict}: {res.witness})")
    s = pi.slope_right_of(0)
    if s <= 1:
        raise ValueError(f"right slope of pi at 0 is {s}; need s > 1")
    return cgf_to_gdff(pi, 1 / s)
