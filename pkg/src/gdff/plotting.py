"""Sampling pwl functions for delimited output and rendering them with matplotlib."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .io import format_rational  # noqa: E402
from .pwl import PwlFunction, as_fraction  # noqa: E402

FIGURE_FORMATS = ("svg", "png")


def _sample_xs(breakpoints, lo, hi) -> list[Fraction]:
    lo, hi = as_fraction(lo), as_fraction(hi)
    if not lo < hi:
        raise ValueError("plot range must satisfy lo < hi")
    knots = sorted({lo, hi, *(b for b in breakpoints if lo < b < hi)})
    xs = [knots[0]]
    for a, b in zip(knots, knots[1:]):
        xs += [(a + b) / 2, b]
    return xs


def sample_points(f: PwlFunction, lo, hi) -> list[tuple[Fraction, Fraction]]:
    """Breakpoints inside ``[lo, hi]``, both ends, and every midpoint between them."""
    return [(x, f(x)) for x in _sample_xs(f.breakpoints, lo, hi)]


def format_plot_csv(columns: Sequence[str], rows: Sequence[Sequence[Fraction]]) -> str:
    lines = [",".join(columns)]
    lines += [",".join(format_rational(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def function_csv(fns: Sequence[PwlFunction], names: Sequence[str], lo, hi) -> str:
    """One row per sample point of the merged breakpoint set."""
    xs = _sample_xs({b for f in fns for b in f.breakpoints}, lo, hi)
    return format_plot_csv(["x", *names], [[x, *(f(x) for f in fns)] for x in xs])


def _polyline(ax, f: PwlFunction, lo, hi, **kw):
    pts = sample_points(f, lo, hi)
    ax.plot([float(x) for x, _ in pts], [float(y) for _, y in pts], **kw)


def render_functions(fns: Sequence[PwlFunction], names: Sequence[str], path, lo, hi,
                     title: str = "") -> None:
    fig, ax = plt.subplots(figsize=(6, 4))
    for f, name in zip(fns, names):
        _polyline(ax, f, lo, hi, label=name, linewidth=1.2)
    ax.axhline(0, color="0.8", linewidth=0.6)
    ax.axvline(0, color="0.8", linewidth=0.6)
    ax.set_xlabel("x")
    if title:
        ax.set_title(title)
    if len(fns) > 1:
        ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def render_panels(fns: Sequence[PwlFunction], titles: Sequence[str], path, lo, hi) -> None:
    """Side-by-side panels, one function each (the layout used for BJ1 at two parameters)."""
    fig, axes = plt.subplots(1, len(fns), figsize=(4 * len(fns), 3.5), squeeze=False)
    for ax, f, title in zip(axes[0], fns, titles):
        _polyline(ax, f, lo, hi, linewidth=1.2)
        ax.set_title(title)
        ax.grid(True, linewidth=0.3)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def render_slack(rows: Sequence[tuple[Fraction, Fraction, Fraction]], path) -> None:
    """Vertices of the complex coloured by their superadditivity slack."""
    fig, ax = plt.subplots(figsize=(5, 4.5))
    xs = [float(r[0]) for r in rows]
    ys = [float(r[1]) for r in rows]
    cs = [float(r[2]) for r in rows]
    sc = ax.scatter(xs, ys, c=cs, cmap="viridis", s=14)
    neg = [(x, y) for x, y, c in zip(xs, ys, cs) if c < 0]
    if neg:
        ax.scatter(*zip(*neg), facecolors="none", edgecolors="red", s=40, label="negative slack")
        ax.legend(fontsize=8)
    fig.colorbar(sc, ax=ax, label="slack")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def render_stages(cert, path) -> None:
    lo, hi = cert.window
    fns = [cert.phi_pwl, cert.phi_loose, cert.phi_fill_in, cert.phi_ext]
    names = ["input", "loose", "fill-in", "extreme"]
    render_functions(fns, names, path, lo, hi,
                     title=f"epsilon = {cert.epsilon}, error = {float(cert.achieved_error):.3g}")


def figure_path(path, fmt: str) -> Path:
    if fmt not in FIGURE_FORMATS:
        raise ValueError(f"figure format must be one of {FIGURE_FORMATS}")
    return Path(path).with_suffix("." + fmt)
