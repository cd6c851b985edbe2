"""Heat-equation benchmark on a piecewise-uniform, locally refined mesh.

Method-of-lines discretization of u_t - u_xx = g on [0, e] with homogeneous
Dirichlet ends and the manufactured solution u(x, t) = exp(-t) x (log x - 1),
which is singular at x = 0.  The mesh is uniform with spacing H ~ 1/16 on the
coarse region (0.005e, e) and h ~ H/200 on the refined region (0, 0.005e);
the refined region plus the interface node form the fast partition.  The
convergence study integrates the semidiscrete system with the second-order
multirate scheme over a ladder of step sizes and measures errors against a
single-rate reference on the same mesh, so only time-discretization error is
observed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np
import scipy.sparse as sp

from rkcheb.arkc import SplitOde, arkc_integrate
from rkcheb.rkc import OdeProblem, integrate

__all__ = [
    "Mesh1D",
    "HeatProblem",
    "build_heat_problem",
    "spectral_radius_bounds",
    "reference_solution",
    "convergence_study",
]

DOMAIN_END = math.e
INTERFACE_FRACTION = 0.005
COARSE_RESOLUTION = 2**4          # H ~ 1/2^4
REFINEMENT = 200                  # h ~ H/200
STUDY_EPS = 0.45                  # damping for the convergence study
REFERENCE_TAU = 2.0**-14


@dataclass(frozen=True)
class Mesh1D:
    """Interior nodes of the piecewise-uniform mesh (Dirichlet ends removed)."""

    nodes: np.ndarray
    interface: float
    fine_spacing: float
    coarse_spacing: float
    fine_count: int  # nodes in the closed refined region, interface included


@dataclass
class HeatProblem:
    """Assembled semidiscrete problem y' = A y + F(t).

    ``operator`` is the tridiagonal second-difference matrix, ``mask`` is True
    on nodes of the closed refined region, and the forcing separates as
    F(t) = exp(-t) * forcing_profile for this manufactured solution.
    """

    mesh: Mesh1D
    operator: sp.csr_matrix
    forcing_profile: np.ndarray
    mask: np.ndarray

    def forcing(self, t: float) -> np.ndarray:
        return math.exp(-t) * self.forcing_profile

    @staticmethod
    def exact_solution(x, t: float):
        """Manufactured solution u(x, t) = exp(-t) x (log x - 1)."""
        return math.exp(-t) * x * (np.log(x) - 1.0)

    def exact_on_mesh(self, t: float) -> np.ndarray:
        return self.exact_solution(self.mesh.nodes, t)

    def initial_state(self) -> np.ndarray:
        return self.exact_on_mesh(0.0)

    def full_rhs(self, t: float, y: np.ndarray) -> np.ndarray:
        return self.operator @ y + self.forcing(t)

    def split_ode(self) -> SplitOde:
        rho_fast, rho_slow = spectral_radius_bounds(self)
        fast_proj = self.mask.astype(float)
        slow_proj = 1.0 - fast_proj
        return SplitOde(
            n=self.mesh.nodes.size,
            mask=self.mask.copy(),
            f_fast=lambda t, y: fast_proj * self.full_rhs(t, y),
            f_slow=lambda t, y: slow_proj * self.full_rhs(t, y),
            rho_fast=lambda t, y: rho_fast,
            rho_slow=lambda t, y: rho_slow,
            y0=self.initial_state(),
        )

    def single_rate_ode(self) -> OdeProblem:
        rho = _gershgorin_max(self.operator, np.ones(self.mesh.nodes.size, bool))
        return OdeProblem(
            n=self.mesh.nodes.size,
            rhs=self.full_rhs,
            spectral_radius=lambda t, y: rho,
            y0=self.initial_state(),
        )


def build_heat_problem() -> HeatProblem:
    """Assemble mesh, second-difference operator, forcing and partition mask.

    The nonuniform three-point stencil at node i with left/right spacings
    (hl, hr) is 2/(hl(hl+hr)), -2/(hl hr), 2/(hr(hl+hr)); it reduces to
    (1, -2, 1)/dx^2 on the uniform regions.  Both boundary values vanish for
    this solution, so no boundary lift enters the forcing:
    g(x, t) = du/dt - u_xx = -exp(-t) x (log x - 1) - exp(-t)/x.
    """
    interface = INTERFACE_FRACTION * DOMAIN_END
    n_coarse = math.ceil((DOMAIN_END - interface) * COARSE_RESOLUTION)
    coarse_spacing = (DOMAIN_END - interface) / n_coarse
    n_fine = math.ceil(interface * REFINEMENT * COARSE_RESOLUTION)
    fine_spacing = interface / n_fine

    fine_nodes = interface * np.arange(1, n_fine + 1) / n_fine
    coarse_nodes = interface + (DOMAIN_END - interface) * np.arange(1, n_coarse) / n_coarse
    nodes = np.concatenate([fine_nodes, coarse_nodes])
    mesh = Mesh1D(
        nodes=nodes,
        interface=interface,
        fine_spacing=fine_spacing,
        coarse_spacing=coarse_spacing,
        fine_count=n_fine,
    )

    extended = np.concatenate([[0.0], nodes, [DOMAIN_END]])
    spacings = np.diff(extended)
    hl = spacings[:-1]
    hr = spacings[1:]
    lower = 2.0 / (hl * (hl + hr))
    diag = -2.0 / (hl * hr)
    upper = 2.0 / (hr * (hl + hr))
    operator = sp.diags(
        [lower[1:], diag, upper[:-1]], offsets=[-1, 0, 1], format="csr"
    )

    profile = -nodes * (np.log(nodes) - 1.0) - 1.0 / nodes
    mask = nodes <= interface * (1.0 + 1e-12)
    return HeatProblem(
        mesh=mesh, operator=operator, forcing_profile=profile, mask=mask
    )


def _gershgorin_max(matrix: sp.spmatrix, rows: np.ndarray) -> float:
    """Largest Gershgorin row bound |a_ii| + sum_j |a_ij| over the given rows."""
    csr = matrix.tocsr()
    row_sums = np.asarray(np.abs(csr).sum(axis=1)).ravel()
    selected = row_sums[rows]
    return float(selected.max()) if selected.size else 0.0


def spectral_radius_bounds(problem: HeatProblem) -> Tuple[float, float]:
    """Gershgorin bounds for the masked fast and slow sub-operators.

    Rows outside each mask are zero and contribute nothing; the fast bound is
    4/h^2 and the slow bound 4/H^2 up to interface rows.
    """
    return (
        _gershgorin_max(problem.operator, problem.mask),
        _gershgorin_max(problem.operator, ~problem.mask),
    )


def reference_solution(
    problem: HeatProblem, eps: float = STUDY_EPS, tau_ref: float = REFERENCE_TAU
) -> np.ndarray:
    """Converged single-rate second-order solution at t = 1 on the same mesh."""
    return integrate(problem.single_rate_ode(), 1.0, tau_ref, order=2, eps=eps)[-1].y


def convergence_study(
    problem: Optional[HeatProblem] = None,
    k_min: int = 1,
    k_max: int = 11,
    eps: float = STUDY_EPS,
    order: int = 2,
    scheme: str = "arkc",
    y_ref: Optional[np.ndarray] = None,
) -> List[Tuple[float, float]]:
    """Time-convergence ladder: (tau, l2 error at t = 1) for tau = 1/2^k.

    Errors are plain Euclidean norms against a reference computed on the same
    mesh (pass ``y_ref`` to share one reference between schemes).  ``scheme``
    selects the multirate integrator ("arkc") or the single-rate control
    ("rkc"); the control isolates the ghost-value interpolation as the source
    of any order reduction.
    """
    if order != 2:
        raise ValueError("the convergence study is defined for the order-2 scheme")
    if scheme not in ("arkc", "rkc"):
        raise ValueError(f"scheme must be 'arkc' or 'rkc', got {scheme!r}")
    if problem is None:
        problem = build_heat_problem()
    if y_ref is None:
        y_ref = reference_solution(problem, eps=eps)

    split = problem.split_ode() if scheme == "arkc" else None
    single = problem.single_rate_ode() if scheme == "rkc" else None

    table: List[Tuple[float, float]] = []
    for k in range(k_min, k_max + 1):
        tau = 1.0 / 2**k
        if scheme == "arkc":
            y_end = arkc_integrate(split, 1.0, tau, order=order, eps=eps)[-1].y
        else:
            y_end = integrate(single, 1.0, tau, order=order, eps=eps)[-1].y
        table.append((tau, float(np.linalg.norm(y_end - y_ref))))
    return table
