"""Figure rendering for the integrator experiments' CSV outputs."""

from rkcplots.figures import (
    STABILITY_THRESHOLD,
    FigureSpec,
    load_columns,
    pivot_raster,
    render,
    stable_mask,
)

__version__ = "0.1.0"

__all__ = [
    "STABILITY_THRESHOLD",
    "FigureSpec",
    "load_columns",
    "pivot_raster",
    "render",
    "stable_mask",
]
