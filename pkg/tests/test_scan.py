import math
import random

import numpy as np
import pytest

from resolventlab import (
    ScanConfig,
    SpectrumModel,
    SystemParams,
    global_resolvent_norm,
    modal_resolvent_norm,
    mode_at,
    resonance_grid,
    scan,
    scan_at,
)

from oracles import exhaustive_max

SQUARES = SpectrumModel.power_law(1.0, 2.0)
P = SystemParams(a=1.0, b=2.0, gamma=1.0, theta=0.0)


def random_params(rng, theta):
    a = math.exp(rng.uniform(math.log(0.5), math.log(4.0)))
    b = math.exp(rng.uniform(math.log(0.5), math.log(4.0)))
    while abs(a - b) < 0.02:
        b = math.exp(rng.uniform(math.log(0.5), math.log(4.0)))
    gamma = math.exp(rng.uniform(math.log(0.1), math.log(10.0)))
    return SystemParams(a=a, b=b, gamma=gamma, theta=theta)


class TestGlobalResolventNorm:
    def test_low_lambda_dominated_by_first_mode(self):
        # lambda far below the first resonance: mode 1 dominates, and the
        # windowed result agrees with the exhaustive max over 200 modes
        lam = math.sqrt(P.a * 1.0) / 20.0
        got = global_resolvent_norm(P, SQUARES, lam)
        best, arg = exhaustive_max(P, SQUARES, lam, 200)
        assert got.mode_index == arg == 1
        assert got.norm == best

    def test_windowed_equals_exhaustive_truncated(self):
        spectrum = SpectrumModel.explicit([float(n * n) for n in range(1, 501)])
        rng = random.Random(101)
        for theta in (-1.0, -0.5, 0.0, 0.25, 0.5, 0.75, 1.0):
            for _ in range(4):
                params = random_params(rng, theta)
                lam = math.exp(rng.uniform(math.log(0.5), math.log(2000.0)))
                got = global_resolvent_norm(params, spectrum, lam)
                best, _ = exhaustive_max(params, spectrum, lam, 500)
                assert abs(got.norm - best) <= 1e-12 * best

    def test_equal_stiffness_scan_still_runs(self):
        params = SystemParams(a=1.0, b=1.0, gamma=1.0, theta=0.0)
        rng = random.Random(7)
        for _ in range(10):
            lam = rng.uniform(1.0, 100.0)
            got = global_resolvent_norm(params, SQUARES, lam)
            best, _ = exhaustive_max(params, SQUARES, lam, 500)
            assert abs(got.norm - best) <= 1e-12 * best

    def test_doubling_window_never_decreases(self):
        rng = random.Random(19)
        for _ in range(20):
            params = random_params(rng, rng.choice((-0.5, 0.0, 0.75)))
            lam = math.exp(rng.uniform(0.0, 6.0))
            v10 = global_resolvent_norm(params, SQUARES, lam, window_factor=10.0)
            v20 = global_resolvent_norm(params, SQUARES, lam, window_factor=20.0)
            assert v20.norm >= v10.norm * (1 - 1e-12)

    def test_finite_for_positive_damping(self):
        rng = random.Random(23)
        for _ in range(20):
            params = random_params(rng, rng.uniform(-1, 1))
            lam = math.exp(rng.uniform(-1.0, 7.0))
            got = global_resolvent_norm(params, SQUARES, lam)
            assert math.isfinite(got.norm)
            assert got.norm > 0

    def test_result_dominates_individual_modes(self):
        got = global_resolvent_norm(P, SQUARES, 12.0)
        for n in range(1, 30):
            assert got.norm >= modal_resolvent_norm(P, float(n * n), 12.0) * (1 - 1e-12)

    def test_undamped_rejected(self):
        pu = SystemParams(a=1, b=2, gamma=0.0, theta=0.0, undamped=True)
        with pytest.raises(ValueError):
            global_resolvent_norm(pu, SQUARES, 1.0)


class TestScan:
    def test_two_points_are_endpoints(self):
        cfg = ScanConfig(lambda_min=1.0, lambda_max=10.0, points=2)
        result = scan(P, SQUARES, cfg)
        assert result.lambdas.tolist() == [1.0, 10.0]

    def test_values_match_direct_calls(self):
        cfg = ScanConfig(lambda_min=1.0, lambda_max=100.0, points=5)
        result = scan(P, SQUARES, cfg)
        for lam, norm in zip(result.lambdas, result.norms):
            direct = global_resolvent_norm(P, SQUARES, float(lam))
            assert norm == direct.norm

    def test_deterministic(self):
        cfg = ScanConfig(lambda_min=0.5, lambda_max=500.0, points=12)
        r1 = scan(P, SQUARES, cfg)
        r2 = scan(P, SQUARES, cfg)
        assert np.array_equal(r1.norms, r2.norms)
        assert np.array_equal(r1.mode_indices, r2.mode_indices)

    def test_threaded_matches_serial(self, monkeypatch):
        cfg = ScanConfig(lambda_min=1.0, lambda_max=50.0, points=8)
        serial = scan(P, SQUARES, cfg)
        monkeypatch.setenv("RESOLVENTLAB_THREADS", "4")
        threaded = scan(P, SQUARES, cfg)
        assert np.array_equal(serial.norms, threaded.norms)

    def test_bounded_norm_exponential_regime(self):
        # theta=0: no growth trend over the trailing two decades (the low
        # modes are pre-asymptotic and excluded by the fit window)
        from resolventlab import fit_exponent

        cfg = ScanConfig(lambda_min=1.0, lambda_max=1e4, points=60)
        result = scan(P, SQUARES, cfg)
        fit = fit_exponent(result, 2.0)
        assert abs(fit.slope) <= 0.05

    def test_monotone_tail_explicit_spectrum(self):
        spectrum = SpectrumModel.explicit([float(n * n) for n in range(1, 21)])
        lam0 = 2.0 * math.sqrt(max(P.a, P.b) * mode_at(spectrum, 20))
        vals = [global_resolvent_norm(P, spectrum, lam0 * f).norm
                for f in (1.0, 1.5, 2.5, 4.0)]
        assert all(b < a for a, b in zip(vals, vals[1:]))

    def test_symmetry_under_negation(self):
        for lam in (3.7, 21.0):
            pos = global_resolvent_norm(P, SQUARES, lam)
            neg = global_resolvent_norm(P, SQUARES, -lam)
            assert pos.norm == pytest.approx(neg.norm, rel=1e-10)

    def test_config_validation(self):
        with pytest.raises(ValueError):
            ScanConfig(lambda_min=0.0, lambda_max=1.0, points=4)
        with pytest.raises(ValueError):
            ScanConfig(lambda_min=2.0, lambda_max=1.0, points=4)
        with pytest.raises(ValueError):
            ScanConfig(lambda_min=1.0, lambda_max=2.0, points=1)
        with pytest.raises(ValueError):
            ScanConfig(lambda_min=1.0, lambda_max=2.0, points=4, window_factor=0.5)


class TestResonanceGrid:
    def test_frequencies_hit_modal_resonances(self):
        grid = resonance_grid(P, SQUARES, 10.0, 1000.0, 20)
        for lam in grid:
            n = round(lam / math.sqrt(P.a))
            assert lam == pytest.approx(math.sqrt(P.a * mode_at(SQUARES, n)), rel=1e-12)

    def test_strictly_increasing(self):
        grid = resonance_grid(P, SQUARES, 5.0, 5000.0, 40)
        assert all(b > a for a, b in zip(grid, grid[1:]))

    def test_polynomial_regime_peaks(self):
        # at the aligned frequencies the theta<0 resolvent scales like
        # 2*sqrt(omega)/gamma
        params = SystemParams(a=1.0, b=2.0, gamma=1.0, theta=-0.5)
        grid = resonance_grid(params, SQUARES, 10.0, 300.0, 6)
        result = scan_at(params, SQUARES, grid)
        for lam, norm in zip(result.lambdas, result.norms):
            assert norm == pytest.approx(2.0 * lam, rel=0.05)
