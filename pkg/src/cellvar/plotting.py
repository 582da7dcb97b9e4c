"""Report figures rendered next to the delimited simulation outputs."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

TINY = 1e-18


def save_conservation_figure(report, path):
    """Per-generator |Noether current| versus diagonal, log scale."""
    fig, ax = plt.subplots(figsize=(7.0, 4.2))
    diagonals = [row.diagonal for row in report.rows]
    for k, name in enumerate(report.generator_names):
        series = [abs(row.currents[k]) + TINY for row in report.rows]
        broken = report.rows and not report.rows[0].symmetric[k]
        ax.semilogy(
            diagonals,
            series,
            marker="o",
            markersize=3,
            linestyle="--" if broken else "-",
            label=f"{name}{' (broken)' if broken else ''}",
        )
    ax.set_xlabel("diagonal index")
    ax.set_ylabel("|Noether current|")
    ax.set_title("Rigid-motion currents over the nested solved region")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(fontsize=8, ncol=2)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def save_residual_figure(report, path):
    """Worst Euler-Lagrange residual on each solved front."""
    fig, ax = plt.subplots(figsize=(7.0, 3.6))
    diagonals = [row.diagonal for row in report.rows]
    residuals = [row.max_el_residual + TINY for row in report.rows]
    ax.semilogy(diagonals, residuals, marker="s", markersize=3, color="tab:red")
    ax.set_xlabel("diagonal index")
    ax.set_ylabel("max Euler-Lagrange residual")
    ax.set_title("Front criticality after each advance")
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)


def save_trajectory_figure(field, grid, path):
    """Element centroid coordinates against time, one line per element."""
    by_element = {}
    for v in field:
        residue = (v[0] - v[1]) % (2 * grid.s_period) if grid.s_period else v[0] - v[1]
        t = grid.node(v)[1]
        r = np.asarray(field[v][0], dtype=float)
        by_element.setdefault(residue, []).append((t, r))
    fig, axes = plt.subplots(3, 1, figsize=(7.0, 6.4), sharex=True)
    labels = ("x", "y", "z")
    for residue in sorted(by_element):
        series = sorted(by_element[residue], key=lambda p: p[0])
        ts = [p[0] for p in series]
        rs = np.array([p[1] for p in series])
        for axis in range(3):
            axes[axis].plot(ts, rs[:, axis], linewidth=0.8, alpha=0.7)
    for axis in range(3):
        axes[axis].set_ylabel(f"r_{labels[axis]}")
        axes[axis].grid(True, alpha=0.3)
    axes[2].set_xlabel("time")
    axes[0].set_title("Element centroid trajectories")
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
