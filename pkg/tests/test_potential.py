import math

import numpy as np
import pytest

from diracwell import (C2, PotentialConfig, build_grid, potential_on_grid,
                       pulse_spectrum, shape, time_factor)


@pytest.fixture
def cfg():
    return PotentialConfig()  # default well


class TestConfig:
    def test_unit_conversions(self, cfg):
        assert cfg.v1_abs == pytest.approx(1.5 * C2)
        assert cfg.omega_abs == pytest.approx(1.0 * C2)
        assert cfg.w_abs == pytest.approx(0.3 / 137.036)
        assert cfg.t0 == pytest.approx(5.0 / C2)
        assert cfg.t1 == pytest.approx(20 * math.pi / C2)
        chirped = PotentialConfig(b=1.2)
        assert chirped.b_abs == pytest.approx(1.2 * C2 / chirped.t1)
        assert chirped.omega_eff_end == pytest.approx(2.2)
        assert chirped.omega_inst_end == pytest.approx(3.4)

    @pytest.mark.parametrize("kw", [dict(b=-0.1), dict(omega0=-1.0),
                                    dict(t0=0.0), dict(t1=-1.0),
                                    dict(w=0.0), dict(d=-2.0)])
    def test_rejects_invalid(self, kw):
        with pytest.raises(ValueError):
            PotentialConfig(**kw)


class TestShape:
    def test_well_bottom_saturates(self, cfg):
        assert shape(0.0, cfg) == pytest.approx(-1.0, abs=1e-14)

    def test_vanishes_at_box_edge(self, cfg):
        assert abs(shape(1.0, cfg)) < 1e-14
        assert abs(shape(-1.0, cfg)) < 1e-14

    def test_half_width_value(self, cfg):
        # scalar evaluation oracle at z = D/2
        assert shape(cfg.d_abs / 2, cfg) == pytest.approx(
            -math.tanh(cfg.d_abs / cfg.w_abs) / 2)

    def test_even_and_bounded(self, cfg):
        z = np.linspace(-1, 1, 501)
        s = shape(z, cfg)
        assert np.allclose(s, s[::-1], atol=1e-14)
        assert np.all(s <= 0) and np.all(s >= -1)


class TestTimeFactor:
    def test_ramp_completes_at_t0(self, cfg):
        assert time_factor(cfg.t0, cfg) == pytest.approx((1.0, 1.0))

    def test_ramp_starts_from_zero(self, cfg):
        fs, fo = time_factor(0.0, cfg)
        assert abs(fs) < 1e-12 and abs(fo) < 1e-12

    def test_literal_ramp_is_descending(self):
        cfg = PotentialConfig(literal_ramp=True)
        assert time_factor(0.0, cfg) == pytest.approx((1.0, 1.0))
        fs, _ = time_factor(cfg.t0 * (1 - 1e-12), cfg)
        assert abs(fs) < 1e-6

    def test_field_off_at_end(self, cfg):
        fs, fo = time_factor(cfg.t_total, cfg)
        assert abs(fs) < 1e-12 and abs(fo) < 1e-12

    def test_fig1_frozen_phase_value(self):
        # omega0 + b*t1 = 0.92 c^2 at the end of the window
        cfg = PotentialConfig(omega0=0.5, b=0.42)
        _, fo = time_factor(cfg.t0 + cfg.t1, cfg)
        assert fo == pytest.approx(math.cos(0.92 * 20 * math.pi), rel=1e-9)
        # continuity with the branch-2 limit from below
        _, fo_below = time_factor(cfg.t0 + cfg.t1 * (1 - 1e-12), cfg)
        assert fo == pytest.approx(fo_below, abs=1e-8)

    def test_outside_window_raises(self, cfg):
        with pytest.raises(ValueError):
            time_factor(-0.1 * cfg.t0, cfg)
        with pytest.raises(ValueError):
            time_factor(cfg.t_total * 1.01, cfg)

    def test_b_zero_is_fixed_frequency(self):
        cfg = PotentialConfig(omega0=1.3, b=0.0)
        for frac in (0.1, 0.45, 0.99):
            t = cfg.t0 + frac * cfg.t1
            _, fo = time_factor(t, cfg)
            assert fo == pytest.approx(math.cos(cfg.omega_abs * frac * cfg.t1))

    @pytest.mark.parametrize("b", [0.0, 0.42, 1.9])
    def test_continuity_across_branches(self, b):
        cfg = PotentialConfig(omega0=0.5, b=b)
        # small enough that derivative * eps stays below the jump tolerance
        eps = 1e-15
        for t_edge in (cfg.t0, cfg.t0 + cfg.t1):
            lo = np.array(time_factor(t_edge - eps, cfg))
            hi = np.array(time_factor(t_edge + eps, cfg))
            dv = (cfg.v1_abs * abs(lo[0] - hi[0])
                  + cfg.v2_abs * abs(lo[1] - hi[1]))
            assert dv <= 1e-10 * C2

    def test_depth_bound(self, cfg):
        grid = build_grid(2.0, 64)
        for t in np.linspace(0, cfg.t_total, 200):
            v = potential_on_grid(grid, cfg, t)
            assert np.max(np.abs(v)) <= (cfg.v1_abs + cfg.v2_abs) * (1 + 1e-12)


class TestPotentialOnGrid:
    def test_zero_depths(self):
        cfg = PotentialConfig(v1=0.0, v2=0.0)
        grid = build_grid(2.0, 64)
        assert np.all(potential_on_grid(grid, cfg, cfg.t0) == 0)

    def test_full_depth_at_center(self, cfg):
        grid = build_grid(2.0, 512)
        v = potential_on_grid(grid, cfg, cfg.t0)
        assert v[np.argmin(np.abs(grid.z))] == pytest.approx(-3.0 * C2, rel=1e-9)

    def test_even_in_z(self, cfg):
        grid = build_grid(2.0, 128)
        for t in (0.3 * cfg.t0, cfg.t0 + 0.7 * cfg.t1, cfg.t_total):
            v = potential_on_grid(grid, cfg, t)
            # z_j = -L/2 + j dz: the mirror of index j is index (-j) mod Nz
            mirrored = np.roll(v[::-1], 1)
            assert np.allclose(v, mirrored, atol=1e-10 * C2)


class TestPulseSpectrum:
    def test_pure_cosine_single_line(self):
        cfg = PotentialConfig(omega0=1.0, b=0.0)
        spec = pulse_spectrum(cfg, n_samples=4096)
        peak = spec.frequencies[np.argmax(spec.magnitudes)]
        df = spec.frequencies[1] - spec.frequencies[0]
        assert abs(peak - 1.0) <= df
        assert np.all(np.diff(spec.frequencies) > 0)
        assert np.all(spec.magnitudes >= 0)
        assert spec.magnitudes.max() == pytest.approx(1.0)

    def test_chirped_spectrum_symmetric_about_midpoint(self):
        # support ~[1.5, 2.1] c^2, centroid at omega0 + b*t1 = 1.8 c^2
        cfg = PotentialConfig(omega0=1.5, b=0.3)
        spec = pulse_spectrum(cfg, n_samples=8192)
        w = spec.magnitudes ** 2
        centroid = np.sum(spec.frequencies * w) / np.sum(w)
        assert centroid == pytest.approx(1.8, abs=0.05)
        strong = spec.frequencies[spec.magnitudes > 0.5]
        assert strong.min() > 1.3 and strong.max() < 2.3

    def test_low_frequency_chirp_reaches_high_frequencies(self):
        cfg = PotentialConfig(omega0=0.2, b=0.9)
        spec = pulse_spectrum(cfg, n_samples=8192)
        strong = spec.frequencies[spec.magnitudes > 0.3]
        assert strong.min() < 0.5
        assert strong.max() > 1.7
        assert strong.max() < 2.4

    @pytest.mark.parametrize("n", [512, 1000, 3000])
    def test_rejects_bad_sample_count(self, n):
        with pytest.raises(ValueError):
            pulse_spectrum(PotentialConfig(), n_samples=n)

    def test_hann_window_option(self):
        spec = pulse_spectrum(PotentialConfig(), n_samples=1024, window="hann")
        assert spec.magnitudes.max() == pytest.approx(1.0)
        with pytest.raises(ValueError):
            pulse_spectrum(PotentialConfig(), n_samples=1024, window="flat")
