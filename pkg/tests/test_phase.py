"""Unit tests for the phase-plane primitives and the event integrator."""

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.integrate import quad

from alleefront.phase import (
    EventSpec,
    ModelParams,
    PhaseState,
    Trajectory,
    detect_touches,
    eigen,
    energy,
    in_omega,
    integrate,
    manifold_seed,
    reaction,
    vector_field,
)

alphas = st.floats(min_value=1e-3, max_value=1.0 - 1e-3)
speeds = st.floats(min_value=-5.0, max_value=5.0)


class TestReaction:
    def test_zero_at_cutoff(self):
        assert reaction(0.0, 0.5) == 0.0

    def test_zero_at_one(self):
        assert reaction(1.0, 0.5) == 0.0

    def test_polynomial_value(self):
        assert reaction(0.5, 0.25) == pytest.approx(0.125, abs=1e-15)

    def test_vectorized(self):
        u = np.array([-1.0, 0.0, 0.5, 1.0, 2.0])
        out = reaction(u, 0.25)
        assert out[0] == 0.0 and out[1] == 0.0
        assert out[2] == pytest.approx(0.125)
        assert out[4] == pytest.approx((2.0 - 0.25) * (1.0 - 2.0))

    @given(u=st.floats(-10, 0), a=alphas)
    def test_cutoff_region(self, u, a):
        assert reaction(u, a) == 0.0

    @given(u=st.floats(1e-9, 10), a=alphas)
    def test_sign_structure(self, u, a):
        r = reaction(u, a)
        if u < a or u > 1.0:
            assert r <= 0.0
        elif a < u < 1.0:
            assert r >= 0.0


class TestVectorField:
    def test_equilibria(self):
        for u_eq in (0.5, 1.0):
            du, dw = vector_field(PhaseState(0.0, u_eq, 0.0), ModelParams(0.5, 1.7))
            assert du == 0.0 and dw == 0.0

    def test_smooth_at_origin(self):
        du, dw = vector_field(PhaseState(0.0, 0.0, 0.0), ModelParams(0.5, 1.0), smooth=True)
        assert (du, dw) == (0.0, 0.5)

    def test_cutoff_at_origin(self):
        du, dw = vector_field(PhaseState(0.0, 0.0, 0.0), ModelParams(0.5, 1.0), smooth=False)
        assert (du, dw) == (0.0, 0.0)


class TestEnergy:
    def test_empty_integral_at_one(self):
        assert energy(1.0, 0.0, 0.4) == pytest.approx(0.0, abs=1e-15)

    def test_quadrature_oracle(self):
        # independent numeric quadrature of the cubic integrand
        for u, a in ((0.0, 0.25), (0.3, 0.6), (-0.2, 0.4)):
            ref, _ = quad(lambda s: (s - a) * (1.0 - s), u, 1.0)
            assert energy(u, 0.7, a) == pytest.approx(0.7 ** 2 / 2.0 - ref, abs=1e-12)

    def test_value_at_origin(self):
        assert energy(0.0, 0.0, 0.25) == pytest.approx(-1.0 / 24.0, abs=1e-12)

    @given(a=alphas)
    def test_zero_level_touch_point(self, a):
        assert energy((3.0 * a - 1.0) / 2.0, 0.0, a) == pytest.approx(0.0, abs=1e-12)

    @given(a=alphas, u=st.floats(-1, 2), w=st.floats(-3, 3))
    def test_kinetic_term_monotone(self, a, u, w):
        assert energy(u, w, a) >= energy(u, 0.0, a) - 1e-15


class TestOmega:
    def test_origin_membership_depends_on_alpha(self):
        assert in_omega(0.0, 0.0, 0.25) is True
        assert in_omega(0.0, 0.0, 0.5) is False

    def test_saddle_excluded(self):
        assert in_omega(1.0, 0.0, 0.4) is False

    def test_vectorized(self):
        m = in_omega(np.array([0.0, 1.0]), np.array([0.0, 0.0]), 0.25)
        assert m.tolist() == [True, False]


class TestEigen:
    def test_center_case(self):
        ed = eigen(ModelParams(0.75, 0.0))
        assert ed.lambda_plus == pytest.approx(0.5j)
        assert ed.lambda_minus == pytest.approx(-0.5j)
        assert ed.Lambda_plus == pytest.approx(0.5)
        assert ed.Lambda_minus == pytest.approx(-0.5)
        assert ed.alpha_point == "center"

    def test_critical_discriminant(self):
        ed = eigen(ModelParams(0.75, 1.0))
        assert ed.lambda_plus == pytest.approx(-0.5) and ed.lambda_minus == pytest.approx(-0.5)
        assert ed.alpha_point == "node"

    def test_node_values_against_root_oracle(self):
        ed = eigen(ModelParams(0.5, 2.0))
        roots = sorted(np.roots([1.0, 2.0, 0.5]).real)
        assert ed.lambda_minus.real == pytest.approx(roots[0], abs=1e-12)
        assert ed.lambda_plus.real == pytest.approx(roots[1], abs=1e-12)
        assert ed.lambda_plus.real == pytest.approx(-0.2928932188134524, abs=1e-10)

    @given(a=alphas, c=speeds)
    def test_saddle_splitting(self, a, c):
        ed = eigen(ModelParams(a, c))
        assert ed.Lambda_minus < 0.0 < ed.Lambda_plus

    @given(a=alphas, c=speeds)
    def test_reality_criterion(self, a, c):
        ed = eigen(ModelParams(a, c))
        real = c * c >= 4.0 * (1.0 - a)
        assert (ed.lambda_plus.imag == 0.0) == real


class TestManifoldSeed:
    def test_normalized_direction(self):
        s = manifold_seed(ModelParams(0.75, 0.0), "unstable-below", 1e-7)
        assert s.u == pytest.approx(1.0 - 8.944271909999159e-08, abs=1e-20)
        assert s.w == pytest.approx(-4.472135954999579e-08, abs=1e-20)

    def test_stable_above_sign(self):
        for a, c in ((0.2, 0.0), (0.5, 1.3), (0.9, 0.4)):
            s = manifold_seed(ModelParams(a, c), "stable-above", 1e-7)
            assert s.w > 0.0 and s.u < 1.0

    def test_offset_validation(self):
        p = ModelParams(0.5, 0.0)
        with pytest.raises(ValueError):
            manifold_seed(p, "unstable-below", 0.0)
        with pytest.raises(ValueError):
            manifold_seed(p, "unstable-below", 0.02)

    def test_seed_energy_cubic_in_offset(self):
        # the quadratic term of E vanishes along the eigendirection at c=0
        s = manifold_seed(ModelParams(0.5, 0.0), "unstable-below", 1e-3)
        assert abs(energy(s.u, s.w, 0.5)) < 1e-9


class TestIntegrate:
    def test_equilibrium_is_constant(self):
        p = ModelParams(0.4, 1.2)
        tr = integrate(PhaseState(0.0, 0.4, 0.0), p, "forward",
                       [EventSpec.u_crosses(0.5)], max_span=50.0)
        assert tr.termination == "max-span"
        assert np.all(np.abs(tr.u - 0.4) < 1e-12)

    def test_homoclinic_touch_level(self):
        # first w = 0 crossing of the unstable manifold sits on the zero level set
        p = ModelParams(0.25, 0.0)
        tr = integrate(manifold_seed(p, "unstable-below"), p, "forward",
                       [EventSpec.w_crosses(0.0, "rising")])
        assert tr.termination == "event"
        assert tr.event_state.u == pytest.approx((3 * 0.25 - 1) / 2, abs=1e-8)

    def test_trapped_orbit_reaches_alpha(self):
        p = ModelParams(0.5, 2.5)
        tr = integrate(PhaseState(0.0, 0.0, 0.0), p, "forward",
                       [EventSpec.near_point(0.5, 0.0, 1e-8)])
        assert tr.termination == "event"
        interior = slice(1, -1)
        assert np.all(tr.u[interior] > 0.0) and np.all(tr.u[interior] < 0.5)
        assert np.all(tr.w[interior] > 0.0)

    def test_event_exactness(self):
        p = ModelParams(0.4, 0.9)
        for level in (0.9, 0.7, 0.55):
            tr = integrate(manifold_seed(p, "unstable-below"), p, "forward",
                           [EventSpec.u_crosses(level, "falling")])
            assert tr.termination == "event"
            assert abs(tr.event_state.u - level) <= 1e-10

    def test_xi_strictly_monotone_both_directions(self):
        fwd = integrate(PhaseState(0.0, 0.6, 0.0), ModelParams(0.4, 0.9), "forward",
                        max_span=10.0)
        assert np.all(np.diff(fwd.xi) > 0.0)
        bwd = integrate(PhaseState(0.0, 0.6, 0.0), ModelParams(0.4, 0.0), "backward",
                        max_span=10.0)
        assert np.all(np.diff(bwd.xi) < 0.0)

    def test_step_underflow_reports_last_state(self):
        # reversing the dissipative flow blows up in finite xi
        from alleefront.phase import StepUnderflowError

        with pytest.raises(StepUnderflowError) as err:
            integrate(PhaseState(0.0, 0.6, 0.0), ModelParams(0.4, 0.9), "backward",
                      max_span=100.0)
        assert math.isfinite(err.value.last_state.u)

    def test_energy_dissipation_identity(self):
        # E' = -c w^2 along smooth orbits, checked by trapezoid quadrature
        p = ModelParams(0.4, 0.7)
        tr = integrate(PhaseState(0.0, 0.6, 0.0), p, "forward",
                       max_span=30.0, sample_step=0.002)
        E = tr.energy()
        quad_w2 = np.concatenate(
            [[0.0], np.cumsum(np.diff(tr.xi) * 0.5 * (tr.w[1:] ** 2 + tr.w[:-1] ** 2))])
        assert np.max(np.abs(E - E[0] + p.c * quad_w2)) <= 1e-6

    def test_energy_conservation_at_zero_speed(self):
        p = ModelParams(0.4, 0.0)
        tr = integrate(PhaseState(0.0, 0.6, 0.0), p, "forward", max_span=100.0)
        E = tr.energy()
        assert np.max(np.abs(E - E[0])) <= 1e-8

    def test_mirror_symmetry(self):
        # (alpha, c) forward from (u0, w0) mirrors (alpha, -c) backward from (u0, -w0)
        h = 0.01
        fwd = integrate(PhaseState(0.0, 0.6, 0.1), ModelParams(0.4, 0.7), "forward",
                        max_span=20.0, sample_step=h)
        bwd = integrate(PhaseState(0.0, 0.6, -0.1), ModelParams(0.4, -0.7), "backward",
                        max_span=20.0, sample_step=h)
        n = min(fwd.u.size, bwd.u.size)
        assert np.allclose(fwd.xi[:n], -bwd.xi[:n], atol=1e-12)
        assert np.max(np.abs(fwd.u[:n] - bwd.u[:n])) <= 1e-8

    def test_max_steps_termination(self):
        p = ModelParams(0.4, 0.0)
        tr = integrate(PhaseState(0.0, 0.6, 0.0), p, "forward", max_steps=10,
                       max_span=1e4)
        assert tr.termination == "max-steps"
        assert tr.n_steps == 10

    def test_samples_immutable(self):
        p = ModelParams(0.4, 0.0)
        tr = integrate(PhaseState(0.0, 0.6, 0.0), p, "forward", max_span=1.0)
        with pytest.raises(ValueError):
            tr.u[0] = 2.0

    def test_csv_export(self, tmp_path):
        p = ModelParams(0.4, 0.0)
        tr = integrate(PhaseState(0.0, 0.6, 0.0), p, "forward", max_span=1.0)
        out = tmp_path / "traj.csv"
        tr.to_csv(out)
        lines = out.read_text().splitlines()
        assert lines[0] == "xi,u,w,E"
        assert len(lines) == tr.xi.size + 1
        first = [float(v) for v in lines[1].split(",")]
        assert first[1] == 0.6

    def test_needs_stopping_criterion(self):
        p = ModelParams(0.4, 0.0)
        with pytest.raises(ValueError):
            integrate(PhaseState(0.0, 0.6, 0.0), p, "forward", max_span=0.0)

    def test_leaves_box_event(self):
        # backward integration of the plus branch at huge c dives steeply
        p = ModelParams(0.5, 40.0)
        tr = integrate(manifold_seed(p, "stable-above"), p, "backward",
                       [EventSpec.leaves_box(2.0, 2.0)], max_span=100.0)
        assert tr.termination == "event"
        assert tr.event.kind == "leaves-box"


class TestDetectTouches:
    def test_tangency_vs_crossing(self):
        p = ModelParams(0.4, 0.0)
        xi = np.linspace(0.0, 1.0, 11)
        # fabricated samples: w grazes zero at index 5 while u sits above alpha,
        # so dw = -(u-a)(1-u) changes sign as u crosses 1 around the graze
        u = np.array([0.95, 0.96, 0.97, 0.98, 0.99, 1.0, 1.01, 1.02, 1.03, 1.04, 1.05])
        w = np.array([1e-3, 1e-4, 1e-5, 1e-7, 1e-10, 1e-13, 1e-10, 1e-7, 1e-5, 1e-4, 1e-3])
        tr = Trajectory(params=p, direction="forward", xi=xi, u=u, w=w,
                        termination="max-span")
        assert detect_touches(tr) == [5]
        # transversal crossing (dw of one sign throughout): no touch reported
        w2 = np.linspace(-1e-3, 1e-3, 11)
        u2 = np.full(11, 0.9)
        tr2 = Trajectory(params=p, direction="forward", xi=xi.copy(), u=u2, w=w2,
                         termination="max-span")
        assert detect_touches(tr2) == []
