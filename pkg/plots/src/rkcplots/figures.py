"""Render the four experiment figure kinds from headed CSV files.

Inputs come from the integrator CLI:
  heatmap     z,w,rho    stability raster of the coupled model problem
  contour     x,y,absR   complex-plane amplification raster
  timeseries  t,l2N      norm-vs-time curves (one CSV per curve)
  loglog      dt,err     convergence ladder with slope guide lines

Rendering never modifies its inputs; re-rendering a spec is idempotent.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Optional, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

__all__ = [
    "STABILITY_THRESHOLD",
    "FigureSpec",
    "load_columns",
    "pivot_raster",
    "stable_mask",
    "render",
]

# stable iff rho <= 1 + this slack; mirrors the scanner's classification
STABILITY_THRESHOLD = 1e-10

_REQUIRED_COLUMNS = {
    "heatmap": ("z", "w", "rho"),
    "contour": ("x", "y", "absR"),
    "timeseries": ("t", "l2N"),
    "loglog": ("dt", "err"),
}


@dataclass
class FigureSpec:
    """What to draw: input CSVs, figure kind, labels, optional decorations."""

    inputs: Sequence[str]
    kind: str
    output: str
    title: str = ""
    labels: Optional[Sequence[str]] = None
    guide_slopes: Sequence[float] = field(default_factory=lambda: (1.0, 1.5, 2.0))
    box: Optional[Tuple[float, float, float, float]] = None  # (zmin, zmax, wmin, wmax)

    def __post_init__(self):
        if self.kind not in _REQUIRED_COLUMNS:
            raise ValueError(
                f"unknown figure kind {self.kind!r}; expected one of "
                f"{sorted(_REQUIRED_COLUMNS)}"
            )
        if not self.inputs:
            raise ValueError("at least one input CSV is required")


def load_columns(path: str, expected: Sequence[str]) -> Dict[str, np.ndarray]:
    """Read a headed CSV and check it carries exactly the expected columns."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise ValueError(f"{path}: empty file")
        if [h.strip() for h in header] != list(expected):
            raise ValueError(
                f"{path}: expected columns {','.join(expected)}, got {','.join(header)}"
            )
        rows = [[float(v) for v in row] for row in reader if row]
    if not rows:
        raise ValueError(f"{path}: no data rows")
    data = np.asarray(rows)
    return {name: data[:, i] for i, name in enumerate(expected)}


def pivot_raster(u: np.ndarray, v: np.ndarray, values: np.ndarray):
    """Scattered (u, v, value) rows -> sorted axes and a (nv, nu) grid."""
    u_axis = np.unique(u)
    v_axis = np.unique(v)
    grid = np.full((v_axis.size, u_axis.size), np.nan)
    iu = np.searchsorted(u_axis, u)
    iv = np.searchsorted(v_axis, v)
    grid[iv, iu] = values
    if np.isnan(grid).any():
        raise ValueError("raster rows do not fill a complete rectangular grid")
    return u_axis, v_axis, grid


def stable_mask(rho: np.ndarray) -> np.ndarray:
    """Boolean stability classification used for shading the heatmap."""
    return rho <= 1.0 + STABILITY_THRESHOLD


def _render_heatmap(spec: FigureSpec, ax) -> None:
    cols = load_columns(spec.inputs[0], _REQUIRED_COLUMNS["heatmap"])
    z_axis, w_axis, rho = pivot_raster(cols["z"], cols["w"], cols["rho"])
    mask = stable_mask(rho)
    ax.pcolormesh(
        z_axis, w_axis, mask.astype(float), cmap="Blues", vmin=0.0, vmax=1.6,
        shading="nearest",
    )
    box = spec.box or (z_axis.min(), z_axis.max(), w_axis.min(), w_axis.max())
    zmin, zmax, wmin, wmax = box
    ax.plot(
        [zmin, zmax, zmax, zmin, zmin],
        [wmin, wmin, wmax, wmax, wmin],
        "k--", linewidth=1.2,
    )
    ax.set_xlabel("z")
    ax.set_ylabel("w")


def _render_contour(spec: FigureSpec, ax) -> None:
    cols = load_columns(spec.inputs[0], _REQUIRED_COLUMNS["contour"])
    x_axis, y_axis, abs_r = pivot_raster(cols["x"], cols["y"], cols["absR"])
    ax.contourf(x_axis, y_axis, abs_r, levels=[0.0, 1.0], colors=["#9ecae1"])
    ax.contour(x_axis, y_axis, abs_r, levels=[1.0], colors="k", linewidths=1.2)
    ax.axhline(0.0, color="0.6", linewidth=0.6)
    ax.set_xlabel("Re(z)")
    ax.set_ylabel("Im(z)")


def _render_timeseries(spec: FigureSpec, ax) -> None:
    labels = spec.labels or [Path(p).stem for p in spec.inputs]
    for path, label in zip(spec.inputs, labels):
        cols = load_columns(path, _REQUIRED_COLUMNS["timeseries"])
        ax.semilogy(cols["t"], cols["l2N"], marker="x", markevery=5, label=label)
    ax.set_xlabel("t")
    ax.set_ylabel("solution l2 norm")
    ax.legend()


def _render_loglog(spec: FigureSpec, ax) -> None:
    labels = spec.labels or [Path(p).stem for p in spec.inputs]
    anchor = None
    for path, label in zip(spec.inputs, labels):
        cols = load_columns(path, _REQUIRED_COLUMNS["loglog"])
        ax.loglog(cols["dt"], cols["err"], marker="x", label=label)
        if anchor is None:
            anchor = (cols["dt"], cols["err"])
    dt, err = anchor
    styles = ("-", ":", "--")
    for slope, style in zip(spec.guide_slopes, styles * 3):
        guide = err[-1] * (dt / dt[-1]) ** slope
        ax.loglog(dt, guide, style, color="k", linewidth=1.0,
                  label=f"slope {slope:g}")
    ax.set_xlabel("step size")
    ax.set_ylabel("l2 error")
    ax.legend()


_RENDERERS = {
    "heatmap": _render_heatmap,
    "contour": _render_contour,
    "timeseries": _render_timeseries,
    "loglog": _render_loglog,
}


def render(spec: FigureSpec) -> str:
    """Draw the figure described by spec and write it to spec.output."""
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    try:
        _RENDERERS[spec.kind](spec, ax)
        if spec.title:
            ax.set_title(spec.title)
        fig.tight_layout()
        fig.savefig(spec.output)
    finally:
        plt.close(fig)
    return spec.output
