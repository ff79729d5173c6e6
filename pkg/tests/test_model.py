import math

import pytest

from resolventlab import (
    SpectrumModel,
    SystemParams,
    make_membrane_spectrum,
    make_plate_spectrum,
    mode_at,
    omega_pow,
)


class TestSystemParams:
    def test_derived_fields(self):
        p = SystemParams(a=1.0, b=2.0, gamma=1.0, theta=0.5)
        assert p.alpha_avg == 1.5
        assert p.beta_half == -0.5

    def test_derived_fields_track_inputs(self):
        p = SystemParams(a=3.5, b=0.5, gamma=2.0, theta=-1.0)
        assert p.alpha_avg == (3.5 + 0.5) / 2
        assert p.beta_half == (3.5 - 0.5) / 2

    @pytest.mark.parametrize("kwargs", [
        dict(a=0.0, b=1.0, gamma=1.0, theta=0.0),
        dict(a=1.0, b=-2.0, gamma=1.0, theta=0.0),
        dict(a=1.0, b=1.0, gamma=0.0, theta=0.0),
        dict(a=1.0, b=1.0, gamma=-1.0, theta=0.0),
        dict(a=1.0, b=1.0, gamma=1.0, theta=1.5),
        dict(a=1.0, b=1.0, gamma=1.0, theta=-2.0),
    ])
    def test_invalid_rejected(self, kwargs):
        with pytest.raises(ValueError):
            SystemParams(**kwargs)

    def test_theta_endpoints_allowed(self):
        SystemParams(a=1, b=2, gamma=1, theta=1.0)
        SystemParams(a=1, b=2, gamma=1, theta=-1.0)

    def test_equal_stiffness_allowed_for_sync(self):
        p = SystemParams(a=1.0, b=1.0, gamma=1.0, theta=0.5)
        assert p.beta_half == 0.0

    def test_undamped_flag(self):
        p = SystemParams(a=1, b=2, gamma=0.0, theta=0.5, undamped=True)
        assert p.gamma_eff == 0.0
        q = SystemParams(a=1, b=2, gamma=3.0, theta=0.5, undamped=True)
        assert q.gamma_eff == 0.0
        assert SystemParams(a=1, b=2, gamma=3.0, theta=0.5).gamma_eff == 3.0


class TestOmegaPow:
    def test_exp_log_form(self):
        assert omega_pow(16.0, 0.75) == math.exp(0.75 * math.log(16.0))

    def test_theta_zero(self):
        assert omega_pow(123.456, 0.0) == 1.0

    def test_underflow_to_zero_ok(self):
        assert omega_pow(1e300, -1.0) > 0  # still representable
        assert omega_pow(1.0, -1.0) == 1.0

    def test_invalid_omega(self):
        with pytest.raises(ValueError):
            omega_pow(0.0, 0.5)


class TestSpectra:
    def test_membrane_pi_gives_squares(self):
        s = make_membrane_spectrum(math.pi, 3)
        for n, want in zip((1, 2, 3), (1.0, 4.0, 9.0)):
            assert mode_at(s, n) == pytest.approx(want, rel=1e-15)

    def test_membrane_unit_length(self):
        s = make_membrane_spectrum(1.0, 2)
        assert mode_at(s, 1) == pytest.approx(math.pi ** 2, rel=1e-15)
        assert mode_at(s, 2) == pytest.approx(4 * math.pi ** 2, rel=1e-15)

    def test_membrane_length_two(self):
        s = make_membrane_spectrum(2.0, 1)
        assert mode_at(s, 1) == pytest.approx(math.pi ** 2 / 4, rel=1e-15)

    def test_plate_pi_gives_fourth_powers(self):
        s = make_plate_spectrum(math.pi, 3)
        for n, want in zip((1, 2, 3), (1.0, 16.0, 81.0)):
            assert mode_at(s, n) == pytest.approx(want, rel=1e-14)

    def test_plate_single_mode(self):
        s = make_plate_spectrum(math.pi, 1)
        assert mode_at(s, 1) == pytest.approx(1.0, rel=1e-14)

    def test_plate_unit_length(self):
        s = make_plate_spectrum(1.0, 2)
        assert mode_at(s, 1) == pytest.approx(math.pi ** 4, rel=1e-14)
        assert mode_at(s, 2) == pytest.approx(16 * math.pi ** 4, rel=1e-14)

    @pytest.mark.parametrize("maker", [make_membrane_spectrum, make_plate_spectrum])
    def test_invalid_arguments(self, maker):
        with pytest.raises(ValueError):
            maker(0.0, 3)
        with pytest.raises(ValueError):
            maker(-1.0, 3)
        with pytest.raises(ValueError):
            maker(1.0, 0)

    @pytest.mark.parametrize("spectrum", [
        make_membrane_spectrum(1.7, 50),
        make_plate_spectrum(2.3, 50),
        SpectrumModel.power_law(0.5, 1.5),
    ])
    def test_strict_monotonicity(self, spectrum):
        prev = 0.0
        for n in range(1, 51):
            om = mode_at(spectrum, n)
            assert om > prev > -1
            prev = om


class TestModeAt:
    def test_power_law_exact(self):
        s = SpectrumModel.power_law(1.0, 2.0)
        assert mode_at(s, 7) == 49.0

    def test_explicit(self):
        s = SpectrumModel.explicit([1.0, 4.0, 9.0])
        assert mode_at(s, 2) == 4.0

    def test_explicit_out_of_range(self):
        s = SpectrumModel.explicit([1.0, 4.0, 9.0])
        with pytest.raises(IndexError):
            mode_at(s, 4)
        with pytest.raises(IndexError):
            mode_at(s, 0)

    def test_power_law_index_guard(self):
        with pytest.raises(IndexError):
            mode_at(SpectrumModel.power_law(1.0, 2.0), 0)


class TestSpectrumModel:
    def test_explicit_duplicates_allowed(self):
        # repeated eigenvalues change no sup over modes; lists may carry them
        s = SpectrumModel.explicit([1.0, 4.0, 4.0, 9.0])
        assert mode_at(s, 3) == 4.0

    def test_decreasing_rejected(self):
        with pytest.raises(ValueError):
            SpectrumModel.explicit([1.0, 4.0, 3.0])

    def test_nonpositive_rejected(self):
        with pytest.raises(ValueError):
            SpectrumModel.explicit([0.0, 1.0])

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            SpectrumModel.explicit([])

    def test_power_law_validation(self):
        with pytest.raises(ValueError):
            SpectrumModel.power_law(0.0, 2.0)
        with pytest.raises(ValueError):
            SpectrumModel.power_law(1.0, -1.0)

    def test_count(self):
        assert SpectrumModel.explicit([1.0, 2.0]).count == 2
        assert SpectrumModel.power_law(1.0, 2.0).count is None
