import math

import numpy as np
import pytest

from resolventlab import (
    ResolventScan,
    ScanConfig,
    SpectrumModel,
    SystemParams,
    check_bound,
    classify,
    estimate_K0,
    fit_exponent,
    scan,
)


def synthetic_scan(lambdas, norms):
    lambdas = np.asarray(lambdas, dtype=float)
    n = lambdas.size
    return ResolventScan(
        lambdas=lambdas,
        norms=np.asarray(norms, dtype=float),
        mode_indices=np.zeros(n, dtype=int),
        omegas=np.zeros(n),
        modes_examined=np.zeros(n, dtype=int),
    )


class TestClassify:
    def test_gevrey_small_theta(self):
        rc = classify(0.2)
        assert rc.gevrey_s == pytest.approx(0.4)
        assert rc.gevrey_delta_threshold == pytest.approx(2.5)
        assert rc.differentiable == "yes"
        assert rc.stability == "exponential"
        assert rc.analytic == "not-asserted"
        assert rc.optimal_lower_exponent == pytest.approx(0.4)

    def test_gevrey_upper_branch(self):
        rc = classify(0.3)
        assert rc.gevrey_s == pytest.approx(0.9 / 1.6)

    def test_nonanalytic_range(self):
        rc = classify(0.75)
        assert rc.analytic == "no"
        assert rc.nonanalytic_threshold == pytest.approx(0.5)
        assert rc.differentiable == "yes"
        assert rc.stability == "exponential"
        assert rc.gevrey_s is None

    def test_polynomial_regime(self):
        rc = classify(-0.5)
        assert rc.stability == "polynomial"
        assert rc.poly_rate == pytest.approx(1.0)
        assert rc.optimal_lower_exponent == pytest.approx(1.0)
        assert rc.differentiable == "not-asserted"

    def test_boundary_quarter(self):
        # 2*theta and 3*theta/(1+2*theta) coincide at theta=1/4
        rc = classify(0.25)
        assert rc.gevrey_s == pytest.approx(0.5)
        assert classify(0.2500001).gevrey_s == pytest.approx(
            3 * 0.2500001 / (1 + 2 * 0.2500001))

    def test_boundary_half(self):
        rc = classify(0.5)
        assert rc.analytic == "not-asserted"
        assert rc.gevrey_s == pytest.approx(0.75)
        assert rc.optimal_lower_exponent is None
        assert rc.differentiable == "yes"

    def test_boundary_one(self):
        rc = classify(1.0)
        assert rc.analytic == "no"
        assert rc.nonanalytic_threshold == pytest.approx(0.0)
        assert rc.differentiable == "not-asserted"
        assert rc.stability == "exponential"

    def test_boundary_zero(self):
        rc = classify(0.0)
        assert rc.stability == "exponential"
        assert rc.differentiable == "not-asserted"
        assert rc.gevrey_s is None
        assert rc.poly_rate is None

    def test_boundary_minus_one(self):
        rc = classify(-1.0)
        assert rc.stability == "polynomial"
        assert rc.poly_rate == pytest.approx(0.5)
        assert rc.optimal_lower_exponent == pytest.approx(2.0)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            classify(1.0001)
        with pytest.raises(ValueError):
            classify(-1.0001)

    def test_piecewise_constant_structure(self):
        for th in np.linspace(-1, 1, 41):
            rc = classify(float(th))
            assert rc.stability == ("exponential" if th >= 0 else "polynomial")
            assert (rc.gevrey_s is not None) == (0 < th <= 0.5)
            assert (rc.analytic == "no") == (th > 0.5)


class TestFitExponent:
    def test_recovers_planted_power_law(self):
        lams = np.geomspace(1.0, 1e4, 40)
        fit = fit_exponent(synthetic_scan(lams, lams ** -0.5), 2.0)
        assert fit.slope == pytest.approx(-0.5, abs=1e-12)
        assert fit.residual < 1e-12

    def test_constant_gives_zero_slope(self):
        lams = np.geomspace(1.0, 1e4, 40)
        fit = fit_exponent(synthetic_scan(lams, np.full(40, 3.7)), 2.0)
        assert fit.slope == pytest.approx(0.0, abs=1e-12)

    def test_window_is_trailing(self):
        lams = np.geomspace(1.0, 1e4, 80)
        norms = np.where(lams < 100.0, 50.0, lams ** -1.0)
        fit = fit_exponent(synthetic_scan(lams, norms), 2.0)
        assert fit.slope == pytest.approx(-1.0, abs=1e-9)
        assert fit.window[0] == pytest.approx(100.0)

    def test_polynomial_regime_slope(self):
        from resolventlab import resonance_grid, scan_at

        params = SystemParams(a=1.0, b=2.0, gamma=1.0, theta=-0.5)
        spectrum = SpectrumModel.power_law(1.0, 2.0)
        grid = resonance_grid(params, spectrum, 10.0, 1e4, 60)
        result = scan_at(params, spectrum, grid)
        fit = fit_exponent(result, 2.0)
        assert fit.slope == pytest.approx(1.0, abs=0.05)

    def test_insufficient_span_rejected(self):
        lams = np.geomspace(1.0, 10.0, 20)
        with pytest.raises(ValueError):
            fit_exponent(synthetic_scan(lams, lams), 2.0)

    def test_too_few_points_rejected(self):
        lams = np.geomspace(1.0, 1e4, 5)
        with pytest.raises(ValueError):
            fit_exponent(synthetic_scan(lams, lams), 2.0)


class TestCheckBound:
    def test_s_zero_returns_max(self):
        lams = np.geomspace(1.0, 100.0, 10)
        norms = np.linspace(5.0, 1.0, 10)
        sup, arg = check_bound(synthetic_scan(lams, norms), 0.0)
        assert sup == 5.0
        assert arg == 1.0

    def test_argmax_invariant_under_rescaling(self):
        lams = np.geomspace(1.0, 1e3, 30)
        norms = lams ** -0.3 * (1.0 + 0.2 * np.sin(np.log(lams)))
        _, arg1 = check_bound(synthetic_scan(lams, norms), 0.45)
        _, arg2 = check_bound(synthetic_scan(lams, 17.0 * norms), 0.45)
        assert arg1 == arg2

    def test_empty_scan_rejected(self):
        with pytest.raises(ValueError):
            check_bound(synthetic_scan([], []), 0.0)


class TestOptimalityDirection:
    @pytest.mark.parametrize("theta", [0.1, 0.2, 0.3, 0.4])
    def test_nested_scan_ratio_probe(self, theta):
        # sup lam**s R stabilizes at the proved exponent and grows above the
        # optimality exponent 2*theta (two-decade extension; the growth rate
        # is lam**(r - 2*theta), so r = 2*theta + 0.15 doubles per 2 decades)
        params = SystemParams(a=1.0, b=2.0, gamma=1.0, theta=theta)
        spectrum = SpectrumModel.power_law(1.0, 2.0)
        base = scan(params, spectrum, ScanConfig(1e3, 1e5, 61))
        ext = scan(params, spectrum, ScanConfig(1e3, 1e7, 121))
        s = classify(theta).gevrey_s
        stable_ratio = check_bound(ext, s)[0] / check_bound(base, s)[0]
        assert stable_ratio <= 1.2, f"sup lam^{s} R grew by {stable_ratio:.3f}"
        r = 2.0 * theta + 0.15
        grow_ratio = check_bound(ext, r)[0] / check_bound(base, r)[0]
        assert grow_ratio >= 1.5, f"sup lam^{r} R grew only by {grow_ratio:.3f}"


class TestEstimateK0:
    def test_synthetic_decay_max_at_lambda0(self):
        # R = lam**-0.5: log(lam)*R is decreasing past e^2, so the max over
        # [lambda0, ...] sits at lambda0
        lams = np.geomspace(10.0, 1e5, 200)
        est = estimate_K0(synthetic_scan(lams, lams ** -0.5), 10.0, log_powers=(2.0,))
        want = math.log(lams[0]) * lams[0] ** -0.5
        assert est.K0_estimate == pytest.approx(want, rel=1e-9)
        assert np.argmax(np.log(lams) * lams ** -0.5) == 0
        r, val = est.log_power_checks[0]
        assert r == 2.0
        # (log lam)^2 * lam^-0.5 peaks at lam = e^4, inside the grid
        assert val == pytest.approx(float(np.max(np.log(lams) ** 2 * lams ** -0.5)), rel=1e-12)

    def test_real_scan_stable_under_extension(self):
        params = SystemParams(a=1.0, b=2.0, gamma=1.0, theta=0.75)
        spectrum = SpectrumModel.power_law(1.0, 2.0)
        base = scan(params, spectrum, ScanConfig(1e2, 1e4, 41))
        ext = scan(params, spectrum, ScanConfig(1e2, 1e5, 61))
        k_base = estimate_K0(base, 1e3, log_powers=(2.0,))
        k_ext = estimate_K0(ext, 1e3, log_powers=(2.0,))
        assert k_ext.K0_estimate <= k_base.K0_estimate * 1.05
        assert k_ext.log_power_checks[0][1] <= k_base.log_power_checks[0][1] * 1.05

    def test_lambda0_validation(self):
        lams = np.geomspace(10.0, 100.0, 20)
        s = synthetic_scan(lams, lams)
        with pytest.raises(ValueError):
            estimate_K0(s, 0.5)
        with pytest.raises(ValueError):
            estimate_K0(s, 1000.0)
