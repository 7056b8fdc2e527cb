"""Figure rendering for the report paths (slices and orbits)."""

from __future__ import annotations

import numpy as np

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def render_slice(table, path, title=None):
    """Heat map of the defining value over the slice plane with the unit
    level curve overlaid."""
    xa = sorted({r[0] for r in table.rows})
    xb = sorted({r[1] for r in table.rows})
    vals = np.array([r[2] for r in table.rows]).reshape(len(xa), len(xb))
    fig, ax = plt.subplots(figsize=(5, 4))
    mesh = ax.pcolormesh(
        xb, xa, np.minimum(vals, 2.0), shading="nearest", cmap="viridis"
    )
    fig.colorbar(mesh, ax=ax, label="defining value")
    if len(xa) > 1 and len(xb) > 1:
        ax.contour(xb, xa, vals, levels=[1.0], colors="white", linewidths=1.5)
    ia, ib = table.plane
    ax.set_xlabel("|z^%d|" % ib)
    ax.set_ylabel("|z^%d|" % ia)
    ax.set_title(title or "moduli slice (%d, %d)" % (ia, ib))
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_orbit(result, path, title=None):
    """Boundary-distance gap of the orbit, log scale."""
    steps = [s.step for s in result.steps]
    gaps = [max(s.gap, 1e-300) for s in result.steps]
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.semilogy(steps, gaps, "o-")
    ax.set_xlabel("step")
    ax.set_ylabel("1 - |z_1|^2 - psi")
    ax.set_title(title or "orbit boundary gap")
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
