"""Stability analysis: coupled 2x2 model problem and domain scans.

The model problem is y' = B_theta y with the symmetric nonpositive-definite
matrix B_theta = [[w, u], [u, z]], u = theta*sqrt(z*w), split so that the
second component (eigen-scale z) is the fast part.  Applying one multirate
step with unit step size to the two basis vectors yields the 2x2 iteration
matrix whose spectral radius decides stability at (z, w).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from rkcheb.arkc import SplitOde, arkc_step_fixed
from rkcheb.chebyshev import build_coefficients

__all__ = [
    "ModelProblem",
    "StabilityGrid",
    "RkcDomainGrid",
    "spectral_radius_2x2",
    "iteration_matrix",
    "scan_arkc_domain",
    "scan_rkc_domain",
]


@dataclass(frozen=True)
class ModelProblem:
    """Coupled two-component test problem with coupling strength theta.

    z and w are the nondimensional step-scaled rates of the fast and slow
    components (both nonpositive); theta in [-1, 1] scales the off-diagonal
    coupling u = theta*sqrt(z*w), which keeps the matrix nonpositive
    definite.
    """

    z: float
    w: float
    theta: float

    def __post_init__(self):
        if self.z > 0 or self.w > 0:
            raise ValueError(f"z and w must be nonpositive, got ({self.z}, {self.w})")
        if abs(self.theta) > 1:
            raise ValueError(f"theta must lie in [-1, 1], got {self.theta}")

    @property
    def coupling(self) -> float:
        # product of two nonpositive reals is nonnegative; z*w = 0 gives u = 0
        return self.theta * math.sqrt(self.z * self.w)

    def matrix(self) -> np.ndarray:
        u = self.coupling
        return np.array([[self.w, u], [u, self.z]])

    def split_ode(self) -> SplitOde:
        """Split rhs with the fast part on component 1 (the z row)."""
        b = self.matrix()
        mask = np.array([False, True])
        proj_fast = mask.astype(float)
        proj_slow = 1.0 - proj_fast
        return SplitOde(
            n=2,
            mask=mask,
            f_fast=lambda t, y: proj_fast * (b @ y),
            f_slow=lambda t, y: proj_slow * (b @ y),
            rho_fast=lambda t, y: abs(self.z),
            rho_slow=lambda t, y: abs(self.w),
            y0=np.array([1.0, 1.0]),
        )


def spectral_radius_2x2(m: np.ndarray) -> float:
    """Largest eigenvalue modulus of a real 2x2 matrix, by the quadratic formula.

    A complex pair (negative discriminant) has |lambda|^2 = det.
    """
    a, b = float(m[0, 0]), float(m[0, 1])
    c, d = float(m[1, 0]), float(m[1, 1])
    tr = a + d
    det = a * d - b * c
    # (a-d)^2 + 4bc equals tr^2 - 4 det without the catastrophic cancellation
    # that inflates the root for near-multiple eigenvalues
    disc = (a - d) * (a - d) + 4.0 * b * c
    if disc >= 0.0:
        root = math.sqrt(disc)
        return max(abs(tr + root), abs(tr - root)) / 2.0
    return math.sqrt(det)


def _spectral_radius_batch(m00, m01, m10, m11):
    """Vectorized twin of spectral_radius_2x2 for stacked entries."""
    tr = m00 + m11
    det = m00 * m11 - m01 * m10
    disc = (m00 - m11) * (m00 - m11) + 4.0 * m01 * m10
    real_disc = disc >= 0.0
    root = np.sqrt(np.where(real_disc, disc, 0.0))
    real_case = np.maximum(np.abs(tr + root), np.abs(tr - root)) / 2.0
    complex_case = np.sqrt(np.where(real_disc, 1.0, det))
    return np.where(real_disc, real_case, complex_case)


def iteration_matrix(
    model: ModelProblem, s: int, m: int, order: int, eps: float = 0.05
) -> np.ndarray:
    """One-step map of the multirate scheme on the model problem.

    Column c is the unit-step (tau = 1) output of the fixed-stage multirate
    step started from the c-th standard basis vector; stage counts are fixed
    to (s, m), bypassing stage selection.
    """
    slow = build_coefficients(order, s, eps)
    fast = build_coefficients(order, m, eps)
    problem = model.split_ode()
    cols = [
        arkc_step_fixed(problem, e, 0.0, 1.0, slow, fast)
        for e in (np.array([1.0, 0.0]), np.array([0.0, 1.0]))
    ]
    return np.column_stack(cols)


@dataclass(frozen=True)
class StabilityGrid:
    """Raster of iteration-matrix spectral radii over the (z, w) box.

    ``rho[iw, iz]`` corresponds to (z_axis[iz], w_axis[iw]); scan parameters
    are recorded so consumers can assert they were held fixed.
    """

    z_axis: np.ndarray
    w_axis: np.ndarray
    rho: np.ndarray
    s: int
    m: int
    theta: float
    eps: float
    order: int


def scan_arkc_domain(
    s: int,
    m: int,
    order: int,
    eps: float = 0.05,
    theta: float = 0.0,
    nz: int = 400,
    nw: int = 400,
) -> StabilityGrid:
    """Spectral radius of the iteration matrix over [-ell_m, 0] x [-ell_s, 0].

    The grid is uniform and includes both endpoints of each axis.  All grid
    nodes share one interlacing schedule (it depends only on the coefficient
    sets), so the scan runs the fixed-stage step on a stacked block-diagonal
    system covering many nodes at once; the values equal per-node
    :func:`iteration_matrix` results to rounding.
    """
    if nz < 2 or nw < 2:
        raise ValueError("grid resolution must be at least 2 per axis")
    slow = build_coefficients(order, s, eps)
    fast = build_coefficients(order, m, eps)
    z_axis = np.linspace(-fast.ell, 0.0, nz)
    w_axis = np.linspace(-slow.ell, 0.0, nw)

    ww, zz = np.meshgrid(w_axis, z_axis, indexing="ij")
    z_flat = zz.ravel()
    w_flat = ww.ravel()
    total = z_flat.size
    rho_flat = np.empty(total)

    # chunk so the fast chain's stage history stays within a modest footprint
    chunk = max(1024, 4_000_000 // (s + m + 2))
    for start in range(0, total, chunk):
        zc = z_flat[start : start + chunk]
        wc = w_flat[start : start + chunk]
        uc = theta * np.sqrt(zc * wc)
        n_nodes = zc.size
        mask = np.tile([False, True], n_nodes)

        def f_fast(t, y, uc=uc, zc=zc):
            out = np.zeros_like(y)
            out[1::2] = uc * y[0::2] + zc * y[1::2]
            return out

        def f_slow(t, y, uc=uc, wc=wc):
            out = np.zeros_like(y)
            out[0::2] = wc * y[0::2] + uc * y[1::2]
            return out

        stacked = SplitOde(
            n=2 * n_nodes,
            mask=mask,
            f_fast=f_fast,
            f_slow=f_slow,
            rho_fast=lambda t, y: 0.0,
            rho_slow=lambda t, y: 0.0,
            y0=np.tile([1.0, 1.0], n_nodes),
        )
        col0 = arkc_step_fixed(stacked, np.tile([1.0, 0.0], n_nodes), 0.0, 1.0, slow, fast)
        col1 = arkc_step_fixed(stacked, np.tile([0.0, 1.0], n_nodes), 0.0, 1.0, slow, fast)
        rho_flat[start : start + chunk] = _spectral_radius_batch(
            col0[0::2], col1[0::2], col0[1::2], col1[1::2]
        )
    return StabilityGrid(
        z_axis=z_axis,
        w_axis=w_axis,
        rho=rho_flat.reshape(nw, nz),
        s=s,
        m=m,
        theta=theta,
        eps=eps,
        order=order,
    )


@dataclass(frozen=True)
class RkcDomainGrid:
    """Raster of |R_s| over a complex rectangle; abs_r[iy, ix]."""

    x_axis: np.ndarray
    y_axis: np.ndarray
    abs_r: np.ndarray
    order: int
    s: int
    eps: float


def scan_rkc_domain(
    order: int,
    s: int,
    eps: float,
    re_range: Tuple[float, float],
    im_range: Tuple[float, float],
    nx: int = 400,
    ny: int = 300,
) -> RkcDomainGrid:
    """|amplification factor| of the single-rate scheme on a complex raster.

    Evaluates R_s(z) = a + b*T_s(w0 + w1*z) with the value recurrence run in
    complex arithmetic over the whole raster at once.
    """
    if nx < 2 or ny < 2:
        raise ValueError("resolution must be at least 2 per axis")
    coeffs = build_coefficients(order, s, eps)
    x_axis = np.linspace(re_range[0], re_range[1], nx)
    y_axis = np.linspace(im_range[0], im_range[1], ny)
    zz = x_axis[None, :] + 1j * y_axis[:, None]
    arg = coeffs.w0 + coeffs.w1 * zz
    t_prev = np.ones_like(arg)
    t_cur = arg.copy()
    for _ in range(2, s + 1):
        t_prev, t_cur = t_cur, 2.0 * arg * t_cur - t_prev
    t_s = t_cur if s >= 1 else t_prev
    abs_r = np.abs(coeffs.a_stab + coeffs.b_stab * t_s)
    return RkcDomainGrid(
        x_axis=x_axis, y_axis=y_axis, abs_r=abs_r, order=order, s=s, eps=eps
    )
