"""Additive multirate integrator: two interlaced stabilized stage chains.

The right-hand side is split by a boolean partition mask into a fast part
(integrated with m stages) and a slow part (s stages).  Both chains advance
inside a single step; whenever one chain needs the other's state at an
abscissa where no stage exists, the value is linearly interpolated in time
between the two bracketing stages ("ghost value").  The loop advances
whichever chain is behind in time, so every ghost value is bracketed by
stages that are already computed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Sequence

import numpy as np

from rkcheb.chebyshev import RkcCoefficients, build_coefficients, select_stage_count
from rkcheb.rkc import RhoFunc, RhsFunc, StabilityViolationError, _step_sizes

__all__ = [
    "SplitOde",
    "ArkcStepRecord",
    "ArkcStepState",
    "InterlacingError",
    "interp_fast",
    "interp_slow",
    "run_interlaced_step",
    "arkc_step",
    "arkc_step_fixed",
    "arkc_integrate",
]


class InterlacingError(RuntimeError):
    """Raised when a ghost value would need a stage that is not yet computed.

    Unreachable when the interlaced loop drives the interpolations; a caller
    supplying its own stage sequences can trigger it.
    """


@dataclass
class SplitOde:
    """A split right-hand side f = f_fast + f_slow with complementary supports.

    ``mask`` is True on the components owned by the fast part.  ``f_fast``
    must return zero outside the mask and ``f_slow`` zero inside it, which
    holds by construction when both are the full right-hand side multiplied
    by complementary projections.
    """

    n: int
    mask: np.ndarray
    f_fast: RhsFunc
    f_slow: RhsFunc
    rho_fast: RhoFunc
    rho_slow: RhoFunc
    y0: np.ndarray
    t0: float = 0.0


@dataclass
class ArkcStepRecord:
    """Trajectory sample with the per-step stage counts of both chains."""

    t: float
    y: np.ndarray
    slow_stages: int
    fast_stages: int


@dataclass
class ArkcStepState:
    """Stage ledger of one interlaced step.

    ``k[0..i]`` and ``l[0..j]`` are the slow and fast stages computed so far,
    at the strictly increasing abscissae ``c[0..s]`` and ``d[0..m]`` (both
    running from 0 to exactly 1).  The completed loop leaves the cursors at
    (i, j) = (s, m) after exactly s + m - 2 advances beyond the initial
    k_1, l_1 pair, each advance enabled by exactly one branch of the
    interlacing rule.
    """

    k: List[np.ndarray]
    l: List[np.ndarray]
    c: np.ndarray
    d: np.ndarray
    i: int
    j: int


def _bracket(abscissae: np.ndarray, target: float, n_available: int, label: str) -> int:
    """Index j of the bracketing interval (abscissae[j-1], abscissae[j]]."""
    j = int(np.searchsorted(abscissae, target))
    if j <= 0 or j >= len(abscissae):
        raise InterlacingError(
            f"{label}: target {target!r} outside the abscissa range"
        )
    if j >= n_available:
        raise InterlacingError(
            f"{label}: stage {j} needed for target {target!r} but only "
            f"{n_available - 1} stages are computed (sequencing bug)"
        )
    return j


def interp_fast(stages: Sequence[np.ndarray], d: np.ndarray, c_i: float) -> np.ndarray:
    """Ghost value of the fast chain at slow abscissa c_i.

    Linear interpolation between the bracketing fast stages l_{j-1}, l_j
    with d_{j-1} < c_i <= d_j.  Exact at stage abscissae.
    """
    j = _bracket(d, c_i, len(stages), "interp_fast")
    weight = (c_i - d[j - 1]) / (d[j] - d[j - 1])
    if weight == 1.0:
        return stages[j]
    if weight == 0.0:
        return stages[j - 1]
    return stages[j - 1] + weight * (stages[j] - stages[j - 1])


def interp_slow(stages: Sequence[np.ndarray], c: np.ndarray, d_j: float) -> np.ndarray:
    """Ghost value of the slow chain at fast abscissa d_j (mirror of interp_fast)."""
    i = _bracket(c, d_j, len(stages), "interp_slow")
    weight = (d_j - c[i - 1]) / (c[i] - c[i - 1])
    if weight == 1.0:
        return stages[i]
    if weight == 0.0:
        return stages[i - 1]
    return stages[i - 1] + weight * (stages[i] - stages[i - 1])


def run_interlaced_step(
    problem: SplitOde,
    y: np.ndarray,
    t: float,
    tau: float,
    slow_coeffs: RkcCoefficients,
    fast_coeffs: RkcCoefficients,
) -> ArkcStepState:
    """Run the interlaced stage loop and return the completed stage ledger.

    While either chain is unfinished, advance the fast chain when its next
    abscissa is behind the slow chain's current one (d_j < c_i), otherwise
    advance the slow chain; the ghost value consumed by each advance is
    bracketed by stages that are already computed.
    """
    s = slow_coeffs.s
    m = fast_coeffs.s
    c = slow_coeffs.c
    d = fast_coeffs.c
    mask = problem.mask

    k0 = np.where(mask, 0.0, y)
    l0 = np.where(mask, y, 0.0)
    f_slow0 = problem.f_slow(t, y)
    f_fast0 = problem.f_fast(t, y)

    state = ArkcStepState(
        k=[k0, k0 + tau * slow_coeffs.mu[1] * f_slow0],
        l=[l0, l0 + tau * fast_coeffs.mu[1] * f_fast0],
        c=c,
        d=d,
        i=1,
        j=1,
    )
    k, l = state.k, state.l
    while state.i < s or state.j < m:
        if d[state.j] < c[state.i]:
            k_ghost = interp_slow(k, c, d[state.j])
            state.j = j = state.j + 1
            # increment form of the three-term stage combination (exact for a
            # zero field); same rewrite as in the single-rate step
            l_new = (
                l0
                + fast_coeffs.nu[j] * (l[j - 1] - l0)
                + fast_coeffs.kappa[j] * (l[j - 2] - l0)
                + tau * fast_coeffs.mu[j]
                * problem.f_fast(t + d[j - 1] * tau, l[j - 1] + k_ghost)
            )
            if fast_coeffs.gamma[j] != 0.0:
                l_new = l_new + tau * fast_coeffs.gamma[j] * f_fast0
            l.append(l_new)
        else:  # c[i] <= d[j]
            l_ghost = interp_fast(l, d, c[state.i])
            state.i = i = state.i + 1
            k_new = (
                k0
                + slow_coeffs.nu[i] * (k[i - 1] - k0)
                + slow_coeffs.kappa[i] * (k[i - 2] - k0)
                + tau * slow_coeffs.mu[i]
                * problem.f_slow(t + c[i - 1] * tau, l_ghost + k[i - 1])
            )
            if slow_coeffs.gamma[i] != 0.0:
                k_new = k_new + tau * slow_coeffs.gamma[i] * f_slow0
            k.append(k_new)
    assert state.i == s and state.j == m, "interlaced loop must finish both chains"
    return state


def arkc_step_fixed(
    problem: SplitOde,
    y: np.ndarray,
    t: float,
    tau: float,
    slow_coeffs: RkcCoefficients,
    fast_coeffs: RkcCoefficients,
) -> np.ndarray:
    """One multirate step, k_s + l_m, with both stage counts fixed by the caller.

    Stage selection and stability checking are the caller's responsibility;
    :func:`arkc_step` wraps this with both.
    """
    state = run_interlaced_step(problem, y, t, tau, slow_coeffs, fast_coeffs)
    return state.k[slow_coeffs.s] + state.l[fast_coeffs.s]


def _select_counts(
    problem: SplitOde, y: np.ndarray, t: float, tau: float, order: int, eps: float
) -> tuple:
    rho_f = problem.rho_fast(t, y)
    rho_s = problem.rho_slow(t, y)
    m = select_stage_count(order, tau * rho_f, eps)
    s = select_stage_count(order, tau * rho_s, eps)
    fast = build_coefficients(order, m, eps)
    slow = build_coefficients(order, s, eps)
    if tau * rho_f > fast.ell or tau * rho_s > slow.ell:
        raise StabilityViolationError(
            f"arkc_step: tau*rho = ({tau * rho_f:.6g}, {tau * rho_s:.6g}) exceeds "
            f"the stability bounds ({fast.ell:.6g}, {slow.ell:.6g})"
        )
    return slow, fast


def arkc_step(
    problem: SplitOde,
    y: np.ndarray,
    t: float,
    tau: float,
    order: int,
    eps: float = 0.05,
) -> np.ndarray:
    """One multirate step with stage counts selected from the current state."""
    if tau <= 0:
        raise ValueError(f"step size must be positive, got {tau}")
    slow, fast = _select_counts(problem, y, t, tau, order, eps)
    return arkc_step_fixed(problem, y, t, tau, slow, fast)


def arkc_integrate(
    problem: SplitOde,
    t_end: float,
    tau: float,
    order: int,
    eps: float = 0.05,
) -> List[ArkcStepRecord]:
    """Fixed-step multirate driver; mirrors the single-rate driver.

    Records both chains' stage counts per step; the final step is shortened
    to land exactly on t_end.
    """
    if tau <= 0:
        raise ValueError(f"step size must be positive, got {tau}")
    if not t_end > problem.t0:
        raise ValueError(f"t_end = {t_end} must exceed t0 = {problem.t0}")

    y = np.array(problem.y0, dtype=float, copy=True)
    t0 = problem.t0
    records: List[ArkcStepRecord] = []
    t = t0
    elapsed = 0.0
    for tau_i in _step_sizes(t_end - t0, tau):
        slow, fast = _select_counts(problem, y, t, tau_i, order, eps)
        if not records:
            records.append(ArkcStepRecord(t0, y.copy(), slow.s, fast.s))
        y = arkc_step_fixed(problem, y, t, tau_i, slow, fast)
        elapsed += tau_i
        t = t_end if abs(elapsed - (t_end - t0)) <= 1e-12 * max(abs(t_end), 1.0) else t0 + elapsed
        records.append(ArkcStepRecord(t, y.copy(), slow.s, fast.s))
    return records
