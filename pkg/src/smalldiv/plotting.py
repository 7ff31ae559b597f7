"""Batch figure rendering for the CLI report paths.

Figures are written as PNG files next to the delimited outputs; there is
no interactive backend.  Every function takes explicit data and a target
path and returns the path written.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)
import numpy as np  # noqa: E402

_META = {"Software": "smalldiv"}


def _finish(fig, path) -> str:
    path = str(path)
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=130, metadata=_META)
    plt.close(fig)
    return path


def save_interval_barcode(iset, path, title: str = "excluded intervals") -> str:
    """Barcode of an interval family inside [0, 1]."""
    fig, ax = plt.subplots(figsize=(8, 1.8))
    spans = [(float(lo), float(hi - lo)) for lo, hi in iset.intervals]
    ax.broken_barh(spans, (0.0, 1.0), facecolors="firebrick")
    ax.set_xlim(0.0, 1.0)
    ax.set_yticks([])
    ax.set_xlabel("x")
    ax.set_title(title, fontsize=10)
    return _finish(fig, path)


def save_domain_figure(domain, path, n: int = 2000,
                       title: str = "multiplier domain boundary") -> str:
    """Inner and outer boundary curves of K against the unit circle."""
    fig, ax = plt.subplots(figsize=(6, 6))
    ts = np.linspace(0.0, 1.0, 512)
    circle = np.exp(2j * math.pi * ts)
    ax.plot(circle.real, circle.imag, lw=0.6, color="gray", label="unit circle")
    for side, color in (("inner", "steelblue"), ("outer", "darkorange")):
        z = domain.curve(side, n)
        ax.plot(z.real, z.imag, lw=0.9, color=color, label=f"{side} curve")
    ax.set_aspect("equal")
    ax.legend(fontsize=8, loc="upper right")
    ax.set_title(title, fontsize=10)
    return _finish(fig, path)


def save_profile_figure(profile, path, n: int = 4000,
                        title: str = "distance profile") -> str:
    """The tent profile x -> dist(x, A) over one period."""
    fig, ax = plt.subplots(figsize=(8, 2.4))
    xs = np.linspace(0.0, 1.0, n)
    ax.plot(xs, profile.phi_float(xs), lw=0.8, color="navy")
    ax.set_xlim(0.0, 1.0)
    ax.set_xlabel("x")
    ax.set_ylabel("dist(x, A)")
    ax.set_title(title, fontsize=10)
    return _finish(fig, path)


def save_series_figure(coeffs: Sequence[complex], path,
                       title: str = "coefficient decay") -> str:
    """Magnitudes of power-series coefficients on a log scale."""
    fig, ax = plt.subplots(figsize=(6, 3.2))
    mags = [abs(complex(c)) for c in coeffs]
    ks = [k for k, m in enumerate(mags) if m > 0]
    ax.semilogy(ks, [mags[k] for k in ks], "o-", ms=3, lw=0.8)
    ax.set_xlabel("degree")
    ax.set_ylabel("|coefficient|")
    ax.set_title(title, fontsize=10)
    return _finish(fig, path)


def save_circle_solution_figure(sol, path, grid: int = 512,
                                title: str = "circle-map solution") -> str:
    """Real and imaginary parts of v on the real grid."""
    fig, ax = plt.subplots(figsize=(7, 3.2))
    ts = np.arange(grid) / grid
    vals = sol.v(ts)
    ax.plot(ts, vals.real, lw=0.9, label="Re v")
    ax.plot(ts, vals.imag, lw=0.9, label="Im v")
    ax.set_xlabel("theta")
    ax.legend(fontsize=8)
    ax.set_title(f"{title} (defect {sol.final_defect:.2e})", fontsize=10)
    return _finish(fig, path)


def save_trend_figure(xs: Sequence[float], ys: Sequence[float], path,
                      xlabel: str, ylabel: str, title: str,
                      loglog: bool = False) -> str:
    """Generic decreasing-trend figure (limit tables, gap tables)."""
    fig, ax = plt.subplots(figsize=(6, 3.6))
    plot = ax.loglog if loglog else ax.semilogy
    pairs = [(x, y) for x, y in zip(xs, ys) if y > 0]
    if pairs:
        plot([p for p, _ in pairs], [q for _, q in pairs], "o-", ms=3, lw=0.9)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title, fontsize=10)
    return _finish(fig, path)


def save_whitney_figure(report, path) -> str:
    """Defect-ratio curves across scales, one line per anchor."""
    fig, ax = plt.subplots(figsize=(6.5, 4))
    for i, anchor in enumerate(report.anchors):
        ds = [d for d, _ in anchor.rows]
        rs = [r for _, r in anchor.rows]
        if all(r == 0 for r in rs):
            continue
        label = f"depth {anchor.depth:.3f}"
        style = "o-" if i not in report.flagged else "x--"
        ax.loglog(ds, rs, style, ms=3, lw=0.8, label=label)
    ax.set_xlabel("|q2 - q1|")
    ax.set_ylabel("defect ratio")
    ax.set_title(f"Whitney probe ({report.problem}, M={report.M})", fontsize=10)
    if report.anchors:
        ax.legend(fontsize=7, loc="best")
    return _finish(fig, path)
