"""
Figures for simulated distributions and limit densities.

matplotlib is an optional dependency; it is imported only when a figure is
requested and always with the non-interactive Agg backend.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

__all__ = ["render_distribution", "render_density", "render_comparison"]

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _figure(width: float = 6.0):
    try:
        import matplotlib
    except ImportError as exc:  # pragma: no cover - depends on the environment
        raise RuntimeError("plotting needs matplotlib; install the 'plot' extra") from exc
    matplotlib.use("Agg", force=True)
    from matplotlib.figure import Figure

    fig = Figure(figsize=(width, width * GOLDEN))
    ax = fig.add_subplot(1, 1, 1)
    for side in ("top", "right"):
        ax.spines[side].set_visible(False)
    return fig, ax


def _save(fig, path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=150, metadata={"Software": None} if path.suffix == ".png" else None)
    return path


def render_distribution(x_over_t: np.ndarray, p: np.ndarray, t: int, path) -> Path:
    """P(X_t = x) against x/t, parity zeros included."""
    fig, ax = _figure()
    ax.plot(x_over_t, p, lw=0.6, color="tab:blue")
    ax.set_xlabel("x / t")
    ax.set_ylabel(f"P(X_t = x), t = {t}")
    return _save(fig, path)


def render_density(x: np.ndarray, density: np.ndarray, path, label: str = "limit density") -> Path:
    fig, ax = _figure()
    ax.plot(x, density, lw=1.0, color="tab:red", label=label)
    ax.set_xlabel("x")
    ax.set_ylabel("density")
    top = np.nanpercentile(np.where(np.isfinite(density), density, np.nan), 99.5)
    if np.isfinite(top) and top > 0:
        ax.set_ylim(0.0, 1.2 * top)
    return _save(fig, path)


def render_comparison(
    x_over_t: np.ndarray,
    p: np.ndarray,
    t: int,
    x: np.ndarray,
    density: np.ndarray,
    path,
    title: str | None = None,
) -> Path:
    """
    Overlay the distribution of X_t/t (left axis) and the limit density
    (right axis), mirroring the usual comparison figures.

    The two axes differ by the factor t, since P(X_t = x) is a mass on a
    lattice of spacing 1/t in x/t.
    """
    fig, ax = _figure()
    ax.plot(x_over_t, p, lw=0.5, color="tab:blue", label=f"P(X_t/t = x), t = {t}")
    ax.set_xlabel("x")
    ax.set_ylabel("probability")
    twin = ax.twinx()
    twin.plot(x, density, lw=1.0, color="tab:red", label="limit density")
    twin.set_ylabel("density")
    finite = density[np.isfinite(density)]
    if finite.size:
        top = np.percentile(finite, 99.5)
        if top > 0:
            twin.set_ylim(0.0, 1.2 * top)
            ax.set_ylim(0.0, 1.2 * top / t * 2.0)
    if title:
        ax.set_title(title)
    return _save(fig, path)
