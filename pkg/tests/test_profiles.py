"""Unit tests for profile construction, gluing, periods, and residuals."""

import math

import numpy as np
import pytest

from alleefront.phase import ModelParams
from alleefront.profiles import (
    NoWaveError,
    bistable_profile,
    monostable_profile,
    orbit_loop_period,
    orbit_period,
    plateau_profile,
    pushed_profile,
    reflect,
    residual,
    stationary_profile,
)
from alleefront.shooting import bistable_speed


def slope_gap_at(profile, boundary):
    """One-sided slope mismatch across a free boundary."""
    h = profile.grid_step
    i = int(np.argmin(np.abs(profile.xi - boundary)))
    left = (profile.u[i] - profile.u[i - 1]) / h
    right = (profile.u[i + 1] - profile.u[i]) / h
    return abs(left - right)


class TestBistableProfile:
    def test_alpha_03(self):
        p = bistable_profile(0.3, 2e-3)
        assert p.speed == pytest.approx(0.0792, abs=0.002)
        assert np.all(np.diff(p.u) <= 1e-12)  # monotone
        assert np.all(p.u[p.xi >= 0.0] == 0.0)
        assert abs(p.u[0] - 1.0) <= 1e-6
        assert p.free_boundaries == (0.0,)
        assert p.limits == (1.0, None)

    def test_alpha_one_third_stationary(self):
        p = bistable_profile(1.0 / 3.0, 2e-3)
        assert p.speed == 0.0
        assert p.u[np.argmin(np.abs(p.xi))] == 0.0

    def test_alpha_05_negative_speed(self):
        p = bistable_profile(0.5, 2e-3)
        assert p.speed == pytest.approx(-0.339, abs=0.005)
        assert np.all(np.diff(p.u) <= 1e-12)

    def test_nonnegative_and_exact_zero_structure(self):
        p = bistable_profile(0.3, 2e-3)
        assert np.all(p.u >= 0.0)
        on_zero = p.u[p.xi >= 0.0]
        off_zero = p.u[p.xi < 0.0]
        assert np.all(on_zero == 0.0) and np.all(off_zero > 0.0)

    def test_c1_gluing(self):
        for alpha in (0.3, 0.5):
            p = bistable_profile(alpha, 2e-3)
            assert slope_gap_at(p, 0.0) <= 10.0 * p.grid_step


class TestPlateauProfile:
    def test_exact_zero_plateau(self):
        p = plateau_profile(0.25, 5.0, 2e-3)
        gap = p.u[(p.xi >= 0.0) & (p.xi <= 5.0)]
        assert gap.size > 0 and np.all(gap == 0.0)
        assert p.free_boundaries == (0.0, 5.0)
        assert p.plateau_length == pytest.approx(5.0, abs=1e-12)

    def test_oscillatory_right_tail(self):
        p = plateau_profile(0.25, 5.0, 2e-3)
        tail = p.u[p.xi > 5.0]
        crossings = np.sum((tail[:-1] - 0.25) * (tail[1:] - 0.25) < 0.0)
        assert crossings >= 3

    def test_zero_length_single_boundary(self):
        p = plateau_profile(0.25, 0.0, 2e-3)
        assert p.free_boundaries == (0.0,)
        assert slope_gap_at(p, 0.0) <= 10.0 * p.grid_step

    def test_rejects_large_alpha(self):
        with pytest.raises(NoWaveError):
            plateau_profile(0.4, 1.0)


class TestMonostableProfile:
    def test_monotone_regime(self):
        p = monostable_profile(0.5, 1.5, 2e-3)
        assert np.all(np.diff(p.u) <= 1e-12)
        assert p.u.min() > 0.0
        assert p.free_boundaries == ()

    def test_oscillatory_regime(self):
        p = monostable_profile(0.5, 0.5, 2e-3)
        assert p.u.min() > 0.0
        crossings = np.sum((p.u[:-1] - 0.5) * (p.u[1:] - 0.5) < 0.0)
        assert crossings >= 3

    def test_no_wave_below_threshold(self):
        with pytest.raises(NoWaveError) as err:
            monostable_profile(0.5, -0.1, 2e-3)
        assert err.value.classification is not None
        assert err.value.classification.exists is False

    def test_anchor_convention(self):
        p = monostable_profile(0.5, 1.5, 2e-3)
        i = int(np.argmin(np.abs(p.xi)))
        assert p.u[i] == pytest.approx(0.75, abs=1e-3)


class TestPushedProfile:
    def test_monotone_at_speed_two(self):
        p = pushed_profile(0.5, 2.0, 2e-3)
        assert np.all(np.diff(p.u) >= -1e-12)
        assert np.all(p.u[p.xi <= 0.0] == 0.0)
        assert p.limits == (None, 0.5)

    def test_single_maximum_between_thresholds(self):
        p = pushed_profile(0.5, 1.4145, 2e-3)
        assert p.u.max() > 0.5
        du = np.diff(p.u[p.xi >= 0.0])
        signs = np.sign(du[np.abs(du) > 1e-12])
        flips = np.sum(np.diff(signs) != 0.0)
        assert flips == 1 and signs[0] > 0 > signs[-1]  # one hump, rise then fall

    def test_rejects_below_existence_threshold(self):
        with pytest.raises(NoWaveError):
            pushed_profile(0.5, 0.3, 2e-3)


class TestStationaryProfile:
    def test_bump_geometry(self):
        p = stationary_profile(0.25, "bump", 1e-3)
        roots = np.roots([-1.0 / 3.0, 1.25 / 2.0, -0.25])
        u1 = float(roots[(roots > 0.25) & (roots < 1.0)][0])
        assert p.u.max() == pytest.approx(u1, abs=1e-6)
        assert p.u.max() == pytest.approx(0.5785, abs=1e-3)
        assert 0.25 < p.u.max() < 1.0

    def test_bump_compact_support(self):
        p = stationary_profile(0.25, "bump", 1e-3)
        lo, hi = p.free_boundaries
        assert lo == -hi
        outside = p.u[np.abs(p.xi) >= hi]
        assert np.all(outside == 0.0)
        assert np.all(p.u[np.abs(p.xi) < hi] > 0.0)

    def test_dip_geometry(self):
        p = stationary_profile(0.5, "dip", 1e-3)
        assert p.u.min() == pytest.approx(0.25, abs=1e-6)
        assert p.limits == (1.0, 1.0)
        assert abs(p.u[0] - 1.0) <= 1e-6 and abs(p.u[-1] - 1.0) <= 1e-6

    def test_glued_pair(self):
        p = stationary_profile(1.0 / 3.0, "glued", 2e-3, L=10.0)
        zeros = p.u[(p.xi >= 0.0) & (p.xi <= 10.0)]
        assert np.all(zeros == 0.0)
        assert p.free_boundaries == (0.0, 10.0)
        # mirror symmetry about the gap midpoint
        assert p.u[0] == pytest.approx(p.u[-1], abs=1e-12)

    def test_periodic_orbit(self):
        p = stationary_profile(0.25, "periodic", 1e-3, u0=0.1)
        T = orbit_period(0.25, 0.1)
        assert p.xi[-1] == pytest.approx(T, abs=2e-3)
        assert p.u[0] == pytest.approx(0.1, abs=1e-10)
        assert p.u[-1] == pytest.approx(0.1, abs=1e-5)

    def test_regime_validation(self):
        with pytest.raises(NoWaveError):
            stationary_profile(0.5, "bump")
        with pytest.raises(NoWaveError):
            stationary_profile(0.25, "dip")
        with pytest.raises(NoWaveError):
            stationary_profile(0.25, "glued")
        with pytest.raises(NoWaveError):
            stationary_profile(0.25, "periodic", u0=0.3)


class TestOrbitPeriod:
    def test_quadrature_matches_loop(self):
        q = orbit_period(0.25, 0.1)
        loop = orbit_loop_period(0.25, 0.1)
        assert abs(q - loop) <= 1e-6

    def test_linear_limit(self):
        # small oscillations around (alpha, 0) at c = 0 have period 2 pi / sqrt(1-alpha)
        assert orbit_period(0.75, 0.75 - 1e-4) == pytest.approx(4.0 * math.pi, abs=1e-2)

    def test_monotone_toward_linear_limit(self):
        seq = [orbit_period(0.25, u0) for u0 in np.linspace(0.05, 0.2499, 5)]
        assert all(b < a for a, b in zip(seq, seq[1:]))

    def test_cross_check_flag(self):
        assert orbit_period(0.25, 0.1, cross_check=True) > 0.0

    def test_rejects_out_of_window(self):
        with pytest.raises(ValueError):
            orbit_period(0.25, 0.3)
        with pytest.raises(ValueError):
            orbit_period(0.25, -0.2)


class TestReflect:
    def test_involution(self):
        p = bistable_profile(0.5, 2e-3)
        rr = reflect(reflect(p))
        assert np.array_equal(rr.u, p.u)
        assert np.allclose(rr.xi, p.xi)
        assert rr.speed == p.speed

    def test_bistable_05_mirror_speed(self):
        r = reflect(bistable_profile(0.5, 2e-3))
        assert r.speed == pytest.approx(0.339, abs=0.005)
        assert np.all(np.diff(r.u) >= -1e-12)

    def test_dip_even_symmetry(self):
        p = stationary_profile(0.5, "dip", 2e-3)
        r = reflect(p)
        assert np.allclose(r.u, p.u, atol=1e-12)


class TestResidual:
    def test_zero_profile(self):
        p = bistable_profile(0.3, 2e-3)
        zero = type(p)(kind="bistable", alpha=0.3, speed=p.speed,
                       xi=p.xi.copy(), u=np.zeros_like(p.u),
                       free_boundaries=(), limits=(None, None), grid_step=p.grid_step)
        assert residual(zero) == 0.0

    def test_constant_alpha_profile(self):
        p = bistable_profile(0.3, 2e-3)
        flat = type(p)(kind="bistable", alpha=0.3, speed=p.speed,
                       xi=p.xi.copy(), u=np.full_like(p.u, 0.3),
                       free_boundaries=(), limits=(0.3, 0.3), grid_step=p.grid_step)
        assert residual(flat) <= 1e-12

    def test_fine_grid_bound(self):
        assert residual(bistable_profile(0.3, 1e-3)) <= 1e-4

    def test_second_order_ratio(self):
        # truncation-dominated resolutions: halving the step quarters the residual
        builders = [
            lambda h: bistable_profile(0.3, h),
            lambda h: pushed_profile(0.5, 2.0, h),
            lambda h: stationary_profile(0.5, "dip", h),
            lambda h: monostable_profile(0.5, 1.5, h),
        ]
        for build in builders:
            ratio = residual(build(0.05)) / residual(build(0.025))
            assert 3.5 <= ratio <= 4.5

    def test_rejects_coarse_grid(self):
        p = bistable_profile(0.3, 2e-3)
        tiny = type(p)(kind="bistable", alpha=0.3, speed=p.speed,
                       xi=p.xi[:5].copy(), u=p.u[:5].copy(),
                       free_boundaries=(), limits=(None, None), grid_step=p.grid_step)
        with pytest.raises(ValueError):
            residual(tiny)

    def test_explicit_params_override(self):
        p = bistable_profile(0.3, 2e-3)
        wrong = residual(p, ModelParams(0.3, p.speed + 1.0))
        assert wrong > residual(p)


class TestExport:
    def test_csv_and_sidecar(self, tmp_path):
        p = stationary_profile(0.5, "dip", 5e-3)
        out = tmp_path / "dip.csv"
        p.to_csv(out)
        lines = out.read_text().splitlines()
        assert lines[0] == "xi,u"
        assert len(lines) == p.xi.size + 1
        meta = p.sidecar()
        assert meta["kind"] == "stationary-dip"
        assert meta["grid_step"] == 5e-3
