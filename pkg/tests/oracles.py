"""Independent reference computations used only by the tests.

These deliberately avoid the package's own vertex enumeration and numpy
paths: they intersect lines pairwise with Cramer's rule, scan a grid with a
lookup table, and evaluate closed forms branch by branch.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

# a line a*x + b*y = c
X_LINE, Y_LINE, S_LINE = (1, 0), (0, 1), (1, 1)


def arrangement_vertices(xs, ys, ss):
    lines = [(X_LINE, c) for c in xs] + [(Y_LINE, c) for c in ys] + [(S_LINE, c) for c in ss]
    pts = set()
    for ((a1, b1), c1), ((a2, b2), c2) in itertools.combinations(lines, 2):
        det = a1 * b2 - a2 * b1
        if det == 0:
            continue
        pts.add((Fraction(c1 * b2 - c2 * b1, 1) / det, Fraction(a1 * c2 - a2 * c1, 1) / det))
    return pts


def slack(f, x, y):
    return f(x + y) - f(x) - f(y)


def grid_min_slack(f, pitch=64, radius=2):
    """Minimum of the slack over the grid ``(1/pitch)Z`` in ``[-radius, radius]^2``."""
    n = radius * pitch
    table = {k: f(Fraction(k, pitch)) for k in range(-2 * n, 2 * n + 1)}
    best = None
    for i in range(-n, n + 1):
        ti = table[i]
        for j in range(i, n + 1):  # slack is symmetric
            v = table[i + j] - ti - table[j]
            if best is None or v < best[0]:
                best = (v, Fraction(i, pitch), Fraction(j, pitch))
    return best


def min_slack_outside_bruteforce(f, delta):
    """Vertex scan of the refined arrangement in plain Fractions, no numpy."""
    bps = list(f.breakpoints)
    xs = bps + [-delta, delta]
    ss = bps + [1 - delta, 1 + delta]
    best = None
    for x, y in arrangement_vertices(xs, xs, ss):
        if -delta < x < delta or -delta < y < delta or 1 - delta < x + y < 1 + delta:
            continue
        v = slack(f, x, y)
        best = v if best is None or v < best else best
    return best


def phi_s_delta_formula(s, d, x):
    """The seven displayed branches."""
    if x < -d:
        return s * x - s * d
    if x < 0:
        return 2 * s * x
    if x < d:
        return Fraction(0)
    if x < 1 - d:
        return x / (1 - 2 * d) - d / (1 - 2 * d)
    if x < 1:
        return Fraction(1)
    if x < 1 + d:
        return 2 * s * x - 2 * s + 1
    return s * x - s + 1 + s * d


def bj1_closed_form(C, x):
    fl = math.floor(C)
    fc = C - fl
    cx = C * x
    fr = cx - math.floor(cx)
    return (math.floor(cx) + max(Fraction(0), (fr - fc) / (1 - fc))) / fl


def fill_in_bruteforce(phi, s_plus, q_prime, x, reach=2):
    lo, hi = math.floor((x - reach) * q_prime), math.ceil((x + reach) * q_prime)
    best = None
    for k in range(lo, hi + 1):
        u = Fraction(k, q_prime)
        v = phi(u) + (s_plus * (x - u) if x < u else 0)
        best = v if best is None or v > best else best
    return best


def lattice_points(coeffs, rhs, box):
    """Every nonnegative integer point of the box satisfying the row."""
    for x in itertools.product(range(box + 1), repeat=len(coeffs)):
        if sum(a * v for a, v in zip(coeffs, x)) <= rhs:
            yield x
