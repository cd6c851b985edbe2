"""Single-rate stabilized integrator with a fixed-step driver."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List

import numpy as np

from rkcheb.chebyshev import RkcCoefficients, build_coefficients, select_stage_count

__all__ = [
    "OdeProblem",
    "StepRecord",
    "StabilityViolationError",
    "rkc_step",
    "integrate",
]

RhsFunc = Callable[[float, np.ndarray], np.ndarray]
RhoFunc = Callable[[float, np.ndarray], float]


class StabilityViolationError(RuntimeError):
    """Raised when tau * rho exceeds the stability bound of the coefficient set."""


@dataclass
class OdeProblem:
    """An ODE y' = f(t, y) together with a spectral-radius estimate.

    ``spectral_radius(t, y)`` must return a finite nonnegative bound on the
    spectral radius of the Jacobian of ``rhs`` at (t, y); it drives stage
    selection and is not estimated internally.
    """

    n: int
    rhs: RhsFunc
    spectral_radius: RhoFunc
    y0: np.ndarray
    t0: float = 0.0


@dataclass
class StepRecord:
    """Trajectory sample: state y at time t, and the stage count of the
    step that produced it (for the initial record, of the first step)."""

    t: float
    y: np.ndarray
    stages_used: int


def rkc_step(
    problem: OdeProblem,
    y: np.ndarray,
    t: float,
    tau: float,
    coeffs: RkcCoefficients,
) -> np.ndarray:
    """Advance y by one step of the s-stage stabilized scheme.

    Stages follow the three-term recurrence
    k_0 = y, k_1 = k_0 + tau*mu_1*f(t, k_0),
    k_i = nu_i k_{i-1} + kappa_i k_{i-2} + (1 - nu_i - kappa_i) k_0
          + tau*mu_i f(t + c_{i-1}*tau, k_{i-1}) + tau*gamma_i f(t, k_0),
    and the result is k_s.

    Raises:
        StabilityViolationError: if tau * spectral_radius(t, y) > coeffs.ell;
            the caller may rebuild coefficients with more stages.
    """
    rho = problem.spectral_radius(t, y)
    if tau * rho > coeffs.ell:
        raise StabilityViolationError(
            f"rkc_step: tau*rho = {tau * rho:.6g} exceeds the stability bound "
            f"{coeffs.ell:.6g} of the {coeffs.s}-stage order-{coeffs.order} scheme"
        )
    f = problem.rhs
    mu, nu, kappa, gamma, c = coeffs.mu, coeffs.nu, coeffs.kappa, coeffs.gamma, coeffs.c
    f0 = f(t, y)
    k_prev2 = y
    k_prev = y + tau * mu[1] * f0
    for j in range(2, coeffs.s + 1):
        # increment form of nu*k1 + kappa*k2 + (1-nu-kappa)*y: exact when the
        # stages coincide with y (zero right-hand side)
        k_new = (
            y
            + nu[j] * (k_prev - y)
            + kappa[j] * (k_prev2 - y)
            + tau * mu[j] * f(t + c[j - 1] * tau, k_prev)
        )
        if gamma[j] != 0.0:
            k_new = k_new + tau * gamma[j] * f0
        k_prev2, k_prev = k_prev, k_new
    return k_prev


def _step_sizes(span: float, tau: float) -> List[float]:
    """Split span into full steps of tau plus a shortened final step."""
    n_full = int(math.floor(span / tau + 1e-12))
    remainder = span - n_full * tau
    sizes = [tau] * n_full
    if remainder > 1e-12 * max(abs(span), 1.0):
        sizes.append(remainder)
    return sizes


def integrate(
    problem: OdeProblem,
    t_end: float,
    tau: float,
    order: int,
    eps: float = 0.05,
) -> List[StepRecord]:
    """Fixed-step driver: select the stage count before each step and step.

    The final step is shortened when tau does not divide t_end - t0, so the
    trajectory always ends exactly at t_end.  Returns records including both
    the initial and the final state.
    """
    if tau <= 0:
        raise ValueError(f"step size must be positive, got {tau}")
    if not t_end > problem.t0:
        raise ValueError(f"t_end = {t_end} must exceed t0 = {problem.t0}")

    y = np.array(problem.y0, dtype=float, copy=True)
    t0 = problem.t0
    records: List[StepRecord] = []
    t = t0
    elapsed = 0.0
    for tau_i in _step_sizes(t_end - t0, tau):
        rho = problem.spectral_radius(t, y)
        s = select_stage_count(order, tau_i * rho, eps)
        coeffs = build_coefficients(order, s, eps)
        if not records:
            records.append(StepRecord(t0, y.copy(), s))
        y = rkc_step(problem, y, t, tau_i, coeffs)
        elapsed += tau_i
        t = t_end if abs(elapsed - (t_end - t0)) <= 1e-12 * max(abs(t_end), 1.0) else t0 + elapsed
        records.append(StepRecord(t, y.copy(), s))
    return records
