import numpy as np
import pytest

from rkcheb.heatbench import (
    build_heat_problem,
    convergence_study,
    reference_solution,
)


@pytest.fixture(scope="session")
def heat_problem():
    return build_heat_problem()


@pytest.fixture(scope="session")
def heat_reference(heat_problem):
    """Converged single-rate reference at the study damping (t = 1)."""
    return reference_solution(heat_problem)


@pytest.fixture(scope="session")
def heat_ladder(heat_problem, heat_reference):
    """Full multirate and single-rate ladders sharing one reference."""
    arkc = convergence_study(heat_problem, y_ref=heat_reference)
    rkc = convergence_study(heat_problem, scheme="rkc", y_ref=heat_reference)
    return arkc, rkc


def lsq_slope(table, k_lo, k_hi):
    """Least-squares slope of log2(err) vs log2(tau) over ladder rows k_lo..k_hi."""
    rows = [(tau, err) for tau, err in table if 2 ** -k_hi - 1e-15 <= tau <= 2 ** -k_lo + 1e-15]
    taus = np.log2([r[0] for r in rows])
    errs = np.log2([r[1] for r in rows])
    return float(np.polyfit(taus, errs, 1)[0])
