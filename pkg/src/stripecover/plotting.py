"""Matplotlib figures written next to the CSV/JSON reports.

Figures are passive artifacts: the format follows the file suffix (``.svg``,
``.png``, ``.pdf``) and SVG output is made reproducible by fixing the hash
salt and dropping the date stamp.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _save(fig, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    meta = {"Date": None} if path.suffix == ".svg" else None
    with plt.rc_context({"svg.hashsalt": "stripecover", "svg.fonttype": "none"}):
        fig.savefig(path, metadata=meta, bbox_inches="tight")
    plt.close(fig)
    return path


def _grid(window, n=401):
    return np.linspace(float(window[0]), float(window[1]), n)


def _draw_arrangement(ax, arrangement, window, color, label=None, alpha=0.25):
    t = _grid(window)
    for k, (f, d) in enumerate(zip(arrangement.curves, arrangement.thicknesses)):
        c = np.array([float(f._eval(_exact(x))) for x in t])
        h = float(d) / 2
        lab = label if k == 0 else None
        if arrangement.axis == 1:
            ax.fill_between(t, c - h, c + h, color=color, alpha=alpha, lw=0)
            ax.plot(t, c, color=color, lw=1, ls="--", label=lab)
        else:
            ax.fill_betweenx(t, c - h, c + h, color=color, alpha=alpha, lw=0)
            ax.plot(c, t, color=color, lw=1, ls="--", label=lab)


def _exact(x: float):
    from .pl import scalar
    return scalar(float(x))


def plot_arrangements(arrangements, path, window=(0, 1), title=""):
    """Overlay ``(arrangement, label)`` pairs: dashed centre curves, shaded stripes."""
    fig, ax = plt.subplots(figsize=(6, 4.5))
    for k, (a, label) in enumerate(arrangements):
        _draw_arrangement(ax, a, window, COLORS[k % len(COLORS)], label)
    ax.set_xlabel("$x_1$")
    ax.set_ylabel("$x_2$")
    if title:
        ax.set_title(title)
    if any(lab for _, lab in arrangements):
        ax.legend(loc="best", frameon=False)
    return _save(fig, path)


def plot_curves(curve_sets, path, window=(0, 1), title=""):
    """Overlay ``(list of Curve, label)`` families as plain graphs."""
    fig, ax = plt.subplots(figsize=(6, 4.5))
    t = _grid(window)
    for k, (curves, label) in enumerate(curve_sets):
        color = COLORS[k % len(COLORS)]
        for i, c in enumerate(curves):
            y = np.array([float(c.f._eval(_exact(x))) for x in t])
            xs, ys = (t, y) if c.axis == 1 else (y, t)
            ax.plot(xs, ys, color=color, lw=1.5 - 0.5 * k, label=label if i == 0 else None)
    if title:
        ax.set_title(title)
    ax.legend(loc="best", frameon=False)
    return _save(fig, path)


def plot_phi(approximator, path, n=121, title=""):
    """Heat map of the coordinate approximator over the window, with stripe outlines."""
    from .stripes import join_point
    t = _grid(approximator.window, n)
    lo, hi = approximator.transverse_range()
    y = np.linspace(float(lo), float(hi), n)
    z = np.empty((n, n))
    for i, yy in enumerate(y):
        for j, tt in enumerate(t):
            z[i, j] = float(approximator(join_point(approximator.axis, _exact(tt), _exact(yy))))
    fig, ax = plt.subplots(figsize=(6, 4.5))
    extent = (t[0], t[-1], y[0], y[-1])
    if approximator.axis == 2:
        z = z.T
        extent = (y[0], y[-1], t[0], t[-1])
    im = ax.imshow(z, origin="lower", extent=extent, aspect="auto", cmap="viridis")
    fig.colorbar(im, ax=ax, label="phi")
    _draw_arrangement(ax, approximator.arrangement, approximator.window, "white", alpha=0.0)
    if title:
        ax.set_title(title)
    return _save(fig, path)


def plot_phi_1d(cover, phi, path):
    a, b = cover.domain
    x = _grid((a, b), 801)
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(x, x - float(a), color="0.6", lw=1, label="identity")
    ax.plot(x, [float(phi._eval(_exact(v))) for v in x], color=COLORS[0], lw=1.5, label="phi")
    for lo, hi in cover.intervals:
        ax.axvspan(float(lo), float(hi), color=COLORS[1], alpha=0.2, lw=0)
    ax.legend(loc="upper left", frameon=False)
    return _save(fig, path)


def plot_projection_report(rows, path):
    """Exact projected length against depth, one line per direction, log scale."""
    fig, ax = plt.subplots(figsize=(6, 4.5))
    cols: dict = {}
    for r in rows:
        if r.set_name == "four-corner":
            cols.setdefault(str(r.direction), []).append((r.depth, float(r.length.exact_unnormalized)))
    for k, (d, pts) in enumerate(sorted(cols.items())):
        pts.sort()
        ax.semilogy([p[0] for p in pts], [p[1] for p in pts], marker="o",
                    color=COLORS[k % len(COLORS)], label=f"({d})")
    ax.set_xlabel("depth")
    ax.set_ylabel("projected length (unnormalized)")
    ax.legend(title="direction", frameon=False)
    return _save(fig, path)
