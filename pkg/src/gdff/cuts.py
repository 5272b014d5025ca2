"""Valid inequalities from maximal gDFFs, and the ``Y_{<=1}`` / ``Y_{=1}`` models."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Callable, Iterable, Mapping, Sequence

from .classify import check_maximal
from .common import Check
from .pwl import Number, PwlFunction, as_fraction

Solution = dict  # finite-support map r -> positive integer multiplicity


@dataclass(frozen=True)
class IPRow:
    """One knapsack-type row ``sum a_j x_j <= b`` over nonnegative integers."""

    coefficients: tuple[Fraction, ...]
    rhs: Fraction

    def __post_init__(self):
        coeffs = tuple(as_fraction(a) for a in self.coefficients)
        if not coeffs:
            raise ValueError("a row needs at least one variable")
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "rhs", as_fraction(self.rhs))

    @property
    def n(self) -> int:
        return len(self.coefficients)


@dataclass(frozen=True)
class GeneratedCut:
    coefficients: tuple[Fraction, ...]
    rhs: Fraction

    def lhs(self, x: Sequence[int]) -> Fraction:
        return sum((c * v for c, v in zip(self.coefficients, x)), Fraction(0))


def generate_cut(phi: PwlFunction, row: IPRow) -> GeneratedCut:
    """``sum phi(a_j) x_j <= phi(b)``, valid whenever ``phi`` is maximal."""
    res = check_maximal(phi)
    if not res.ok:
        raise ValueError(f"phi is not certified maximal: {res.witness}")
    return GeneratedCut(tuple(phi(a) for a in row.coefficients), phi(row.rhs))


def _scaled(values: Iterable[Fraction]) -> tuple[list[int], int]:
    values = list(values)
    den = reduce(math.lcm, (v.denominator for v in values), 1)
    return [int(v * den) for v in values], den


def verify_cut_bruteforce(cut: GeneratedCut, row: IPRow, box: int) -> Check:
    """Enumerate every feasible ``x`` in ``{0..box}^n`` and test the cut.

    The witness is the first violating lattice point found.  Raises when the
    box cannot contain every feasible point.
    """
    if box < 1:
        raise ValueError("box must be at least 1")
    if any(a <= 0 for a in row.coefficients):
        raise ValueError("brute force needs positive row coefficients")
    if row.rhs / min(row.coefficients) > box:
        raise ValueError(f"box {box} is too small: some x_j can reach {row.rhs / min(row.coefficients)}")
    a_int, _ = _scaled([*row.coefficients, row.rhs])
    *a, b = a_int
    c_int, _ = _scaled([*cut.coefficients, cut.rhs])
    *c, d = c_int
    n = row.n
    x = [0] * n

    def walk(j: int, room: int, lhs: int):
        if j == n:
            return None if lhs <= d else tuple(x)
        for v in range(0, min(box, room // a[j]) + 1):
            x[j] = v
            found = walk(j + 1, room - v * a[j], lhs + v * c[j])
            if found is not None:
                return found
        x[j] = 0
        return None

    if b < 0:
        return Check(True)  # no feasible point at all
    witness = walk(0, b, 0)
    return Check(witness is None, witness)


# -- the Y models ------------------------------------------------------------

def pairing(fn: Callable[[Fraction], Fraction], y: Mapping[Fraction, int]) -> Fraction:
    """``sum fn(r) y(r)`` over the support of ``y``."""
    return sum((fn(r) * m for r, m in y.items()), Fraction(0))


def _weight(y: Mapping[Fraction, int]) -> Fraction:
    return sum((r * m for r, m in y.items()), Fraction(0))


def in_Yle1(y: Mapping[Fraction, int]) -> bool:
    return all(isinstance(m, int) and m >= 0 for m in y.values()) and _weight(y) <= 1


def in_Yeq1(y: Mapping[Fraction, int]) -> bool:
    return all(isinstance(m, int) and m >= 0 for m in y.values()) and _weight(y) == 1


def _sample(rng: random.Random, max_support: int, exact: bool) -> Solution:
    d = rng.randint(1, 64)
    y: Solution = {}
    for _ in range(rng.randint(0, max(0, max_support - 1))):
        r = Fraction(rng.randint(-2 * d, 2 * d), d)
        y[r] = y.get(r, 0) + rng.randint(1, 3)
    target = Fraction(1) if exact else 1 - Fraction(rng.randint(0, 2 * d), d)
    closing = target - _weight(y)
    if closing != 0 or exact:
        y[closing] = y.get(closing, 0) + 1
    return {r: m for r, m in y.items() if m}


def sample_Yle1(seed: int, count: int, max_support: int = 4) -> list[Solution]:
    """Seeded points of ``Y_{<=1}``; the first one is the origin."""
    if count < 1:
        raise ValueError("count must be at least 1")
    rng = random.Random(seed)
    out: list[Solution] = [{}]
    while len(out) < count:
        out.append(_sample(rng, max_support, exact=False))
    return out


def sample_Yeq1(seed: int, count: int, max_support: int = 4) -> list[Solution]:
    if count < 1:
        raise ValueError("count must be at least 1")
    rng = random.Random(seed)
    return [_sample(rng, max_support, exact=True) for _ in range(count)]


def check_gdff_inequality_on_samples(phi: Callable[[Fraction], Fraction],
                                     samples: Iterable[Mapping[Fraction, int]]) -> Check:
    """``sum phi(r) y(r) <= 1`` on every sample; the witness is the first failure."""
    for y in samples:
        if pairing(phi, y) > 1:
            return Check(False, dict(y))
    return Check(True)


def random_row(rng: random.Random, max_n: int = 3, max_rhs: Number = 2,
               max_den: int = 10) -> IPRow:
    n = rng.randint(1, max_n)
    coeffs = tuple(Fraction(rng.randint(1, 2 * max_den), rng.randint(1, max_den)) for _ in range(n))
    b = Fraction(rng.randint(1, int(as_fraction(max_rhs) * max_den)), max_den)
    return IPRow(coeffs, b)
