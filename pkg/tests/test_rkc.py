import numpy as np
import pytest

from rkcheb.chebyshev import build_coefficients, cheb_eval, select_stage_count
from rkcheb.rkc import OdeProblem, StabilityViolationError, integrate, rkc_step


def scalar_problem(lam):
    return OdeProblem(
        n=1,
        rhs=lambda t, y: lam * y,
        spectral_radius=lambda t, y: abs(lam),
        y0=np.array([1.0]),
    )


def amplification(coeffs, z):
    """Closed-form one-step factor a + b*T_s(w0 + w1*z)."""
    t_s = cheb_eval(coeffs.s, coeffs.w0 + coeffs.w1 * z).value
    return coeffs.a_stab + coeffs.b_stab * t_s


class TestRkcStep:
    def test_single_stage_euler(self):
        problem = scalar_problem(-1.0)
        coeffs = build_coefficients(1, 1, 0.0)
        y1 = rkc_step(problem, np.array([1.0]), 0.0, 0.1, coeffs)
        assert y1[0] == pytest.approx(0.9, abs=1e-15)

    def test_matches_shifted_chebyshev_factor(self):
        # one step on y' = lambda*y with tau*lambda = -1, s = 5
        coeffs = build_coefficients(1, 5, 0.0)
        problem = scalar_problem(-1.0)
        y1 = rkc_step(problem, np.array([1.0]), 0.0, 1.0, coeffs)
        assert y1[0] == pytest.approx(amplification(coeffs, -1.0), abs=1e-12)

    @pytest.mark.parametrize("order", [1, 2])
    @pytest.mark.parametrize("s", [3, 8])
    @pytest.mark.parametrize("eps", [0.0, 0.05])
    def test_step_factor_equals_polynomial(self, order, s, eps):
        coeffs = build_coefficients(order, s, eps)
        for z in np.linspace(-coeffs.ell, 0.0, 17):
            problem = scalar_problem(z)  # tau = 1, so z = tau*lambda
            y1 = rkc_step(problem, np.array([1.0]), 0.0, 1.0, coeffs)
            expected = amplification(coeffs, z)
            assert y1[0] == pytest.approx(expected, rel=1e-10, abs=1e-12)

    def test_zero_field_fixes_all_stages(self):
        seen = []

        def probe(t, y):
            seen.append(y.copy())
            return np.zeros_like(y)

        y0 = np.array([1.3, -0.4, 2.0])
        problem = OdeProblem(3, probe, lambda t, y: 0.0, y0)
        for order, s in ((1, 6), (2, 9)):
            seen.clear()
            coeffs = build_coefficients(order, s, 0.05)
            y1 = rkc_step(problem, y0, 0.0, 0.5, coeffs)
            assert np.array_equal(y1, y0)
            # every stage argument fed to the rhs is the initial state
            for arg in seen:
                assert np.array_equal(arg, y0)

    def test_damped_interior_is_strictly_contracting(self):
        for order in (1, 2):
            for s in (5, 13):
                coeffs = build_coefficients(order, s, 0.05)
                for z in np.linspace(-coeffs.ell, -0.05, 200):
                    assert abs(amplification(coeffs, z)) < 1.0

    def test_signals_stability_violation(self):
        problem = scalar_problem(-50.0)
        coeffs = build_coefficients(1, 2, 0.0)  # covers tau*rho <= 8
        with pytest.raises(StabilityViolationError):
            rkc_step(problem, np.array([1.0]), 0.0, 1.0, coeffs)


class TestIntegrate:
    def test_zero_rhs_constant_trajectory(self):
        problem = OdeProblem(
            2, lambda t, y: np.zeros_like(y), lambda t, y: 0.0, np.array([2.0, -1.0])
        )
        records = integrate(problem, 1.0, 0.3, order=1)
        assert records[0].t == 0.0
        assert records[-1].t == 1.0
        for rec in records:
            assert np.array_equal(rec.y, problem.y0)

    def test_second_order_convergence(self):
        problem = scalar_problem(-1.0)
        errors = []
        for tau in (0.1, 0.05, 0.025, 0.0125):
            y_end = integrate(problem, 1.0, tau, order=2, eps=0.05)[-1].y[0]
            errors.append(abs(y_end - np.exp(-1.0)))
        rates = np.log2(np.array(errors[:-1]) / np.array(errors[1:]))
        assert np.all(rates >= 1.9)

    def test_driver_selects_eight_stages_for_stiff_decay(self):
        problem = scalar_problem(-100.0)
        records = integrate(problem, 10.0, 1.0, order=1, eps=0.05)
        assert all(rec.stages_used == 8 for rec in records)
        norms = [abs(rec.y[0]) for rec in records]
        assert all(a >= b for a, b in zip(norms, norms[1:]))

    def test_final_partial_step_lands_on_t_end(self):
        problem = scalar_problem(-1.0)
        records = integrate(problem, 1.0, 0.4, order=1)
        assert records[-1].t == pytest.approx(1.0, abs=1e-14)
        assert len(records) == 4  # t0 + steps 0.4, 0.8, 1.0
        # single-stage steps are plain Euler: factors (1 - 0.4)^2 (1 - 0.2)
        assert records[-1].y[0] == pytest.approx(0.6 * 0.6 * 0.8, rel=1e-12)

    def test_rejects_bad_arguments(self):
        problem = scalar_problem(-1.0)
        with pytest.raises(ValueError):
            integrate(problem, 1.0, -0.1, order=1)
        with pytest.raises(ValueError):
            integrate(problem, -1.0, 0.1, order=1)

    def test_stage_counts_recomputed_per_step(self):
        # spectral radius grows along the trajectory; stage count must follow
        problem = OdeProblem(
            1,
            lambda t, y: -y,
            lambda t, y: 10.0 + 400.0 * t,
            np.array([1.0]),
        )
        records = integrate(problem, 1.0, 0.5, order=1, eps=0.0)
        assert records[1].stages_used < records[2].stages_used
