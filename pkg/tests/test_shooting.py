"""Unit tests for endpoints, critical speeds, and wave classification."""

import math

import numpy as np
import pytest

from alleefront.shooting import (
    BracketError,
    bistable_speed,
    classify,
    critical_speeds,
    endpoint,
    kpp_min_speed,
    monotone_indicator,
    monotone_min_speed,
    pushed_min_speed,
)

SQRT2 = math.sqrt(2.0)


class TestKppMinSpeed:
    def test_reference_values(self):
        assert kpp_min_speed(0.5) == pytest.approx(SQRT2, abs=1e-15)
        assert kpp_min_speed(0.75) == pytest.approx(1.0, abs=1e-15)

    def test_logistic_limit(self):
        assert kpp_min_speed(1e-12) == pytest.approx(2.0, abs=1e-9)

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            kpp_min_speed(1.5)


class TestEndpoint:
    def test_homoclinic_value_minus(self):
        r = endpoint(0.25, 0.0, "minus")
        assert r.crossed
        assert r.value == pytest.approx(-0.125, abs=1e-8)

    def test_homoclinic_value_plus(self):
        r = endpoint(0.5, 0.0, "plus")
        assert r.crossed
        assert r.value == pytest.approx(0.25, abs=1e-8)

    def test_near_critical_speed_value_is_small(self):
        # the crossing passes through zero exactly at the bistable speed
        r = endpoint(0.3, 0.0792, "minus")
        assert abs(r.value) < 1e-3

    def test_no_crossing_above_kpp_speed(self):
        r = endpoint(0.3, 2.0, "minus")
        assert not r.crossed and r.converged_to_alpha

    def test_monotonicity_in_speed(self):
        # u_c^- strictly increasing, u_c^+ strictly decreasing (light grid;
        # the acceptance suite runs the full four-alpha version)
        for alpha in (0.25, 0.6):
            c_star = kpp_min_speed(alpha)
            minus = [endpoint(alpha, c, "minus").value
                     for c in np.linspace(0.0, 0.9 * c_star, 5)]
            assert all(b > a for a, b in zip(minus, minus[1:]))
            lo = (3.0 * alpha - 1.0) / 2.0
            assert all(lo - 1e-9 <= v < alpha for v in minus)
            plus = [endpoint(alpha, c, "plus").value for c in np.linspace(0.0, 1.6, 5)]
            assert all(b < a for a, b in zip(plus, plus[1:]))

    def test_rejects_negative_speed(self):
        with pytest.raises(ValueError):
            endpoint(0.3, -0.5, "minus")


class TestBistableSpeed:
    def test_alpha_03_reference(self):
        est = bistable_speed(0.3)
        assert est.value == pytest.approx(0.0792, abs=0.002)
        assert est.bracket[1] - est.bracket[0] <= est.tol

    def test_exact_zero_at_one_third(self):
        assert bistable_speed(1.0 / 3.0).value == 0.0

    def test_alpha_05_reference(self):
        est = bistable_speed(0.5)
        assert est.value == pytest.approx(-0.339, abs=0.005)

    def test_sign_structure(self):
        assert bistable_speed(0.2, 1e-6).value > 0.0
        assert bistable_speed(0.4, 1e-6).value < 0.0

    def test_bracket_certificate(self):
        # endpoint signs flip across the returned bracket
        est = bistable_speed(0.28, 1e-6)
        lo, hi = est.bracket
        assert endpoint(0.28, lo, "minus").value <= 0.0 <= endpoint(0.28, hi, "minus").value

    def test_below_kpp_speed(self):
        for alpha in (0.1, 0.25):
            assert 0.0 < bistable_speed(alpha, 1e-6).value < kpp_min_speed(alpha)


class TestPushedMinSpeed:
    def test_zero_below_one_third(self):
        assert pushed_min_speed(0.25).value == 0.0
        assert pushed_min_speed(1.0 / 3.0).value == 0.0

    def test_mirror_of_bistable(self):
        est = pushed_min_speed(0.5)
        assert est.value == pytest.approx(-bistable_speed(0.5).value, abs=1e-14)
        assert est.value == pytest.approx(0.339, abs=0.005)


class TestMonotoneMinSpeed:
    def test_alpha_05_reference(self):
        est = monotone_min_speed(0.5)
        assert 1.4145 < est.value < 2.0
        assert est.value == pytest.approx(1.472, abs=0.05)

    def test_indicator_straddles_threshold(self):
        assert monotone_indicator(0.5, 1.4145) is False
        assert monotone_indicator(0.5, 2.0) is True

    def test_bracket_certificate(self):
        est = monotone_min_speed(0.5)
        lo, hi = est.bracket
        if lo != hi:
            assert monotone_indicator(0.5, lo) is False
            assert monotone_indicator(0.5, hi) is True


class TestCriticalSpeeds:
    def test_json_schema(self):
        cs = critical_speeds(0.5, tol=1e-6, monotone_tol=5e-3)
        d = cs.as_dict()
        assert set(d) == {"alpha", "c_kpp", "c_bistable", "c_pushed_min",
                          "c_monotone_min", "brackets", "tol"}
        assert d["c_kpp"] == pytest.approx(SQRT2)
        assert d["c_pushed_min"] == pytest.approx(-d["c_bistable"], abs=1e-14)

    def test_ordering_invariants(self):
        for alpha in (0.25, 0.5):
            cs = critical_speeds(alpha, tol=1e-6, monotone_tol=5e-3)
            assert cs.c_pushed_min.value == max(0.0, -cs.c_bistable.value)
            assert max(cs.c_pushed_min.value, cs.c_kpp) <= cs.c_monotone_min.value <= 2.0


class TestClassify:
    def test_one_to_alpha_below_one_third(self):
        cb = bistable_speed(0.25, 1e-6).value
        assert classify(0.25, 2.0, "one-to-alpha").shape == "monotone"
        assert classify(0.25, cb - 0.05, "one-to-alpha").exists is False
        assert classify(0.25, cb, "one-to-alpha").shape == "touches-zero-nonunique"
        mid = classify(0.25, 0.5 * (cb + kpp_min_speed(0.25)), "one-to-alpha")
        assert mid.shape == "oscillatory"

    def test_one_to_alpha_above_one_third(self):
        assert classify(0.5, -0.1, "one-to-alpha").exists is False
        assert classify(0.5, 0.5, "one-to-alpha").shape == "oscillatory"
        assert classify(0.5, 1.5, "one-to-alpha").shape == "monotone"

    def test_kpp_threshold_straddle(self):
        assert classify(0.5, 1.5, "one-to-alpha").shape == "monotone"
        assert classify(0.5, 1.3, "one-to-alpha").shape == "oscillatory"

    def test_one_to_zero_unique_speed(self):
        cb = bistable_speed(0.3, 1e-8).value
        hit = classify(0.3, cb, "one-to-zero")
        assert hit.exists and hit.shape == "monotone" and hit.free_boundary
        assert classify(0.3, cb + 0.01, "one-to-zero").exists is False

    def test_zero_to_alpha_regimes(self):
        assert classify(0.5, 0.3, "zero-to-alpha").exists is False
        assert classify(0.5, 1.0, "zero-to-alpha").shape == "oscillatory"
        assert classify(0.5, 1.4145, "zero-to-alpha").shape == "single-maximum"
        assert classify(0.5, 1.9, "zero-to-alpha").shape == "monotone"

    def test_consistency_with_bistable_speed(self):
        for alpha in (0.2, 0.3):
            tol = 1e-4
            cb = bistable_speed(alpha, min(tol, 1e-8)).value
            assert classify(alpha, cb + 2 * tol, "one-to-alpha", tol=tol).exists

    def test_shape_none_iff_not_exists(self):
        for alpha, c, bc in ((0.25, -1.0, "one-to-alpha"), (0.5, 0.1, "zero-to-alpha"),
                             (0.5, 1.5, "one-to-alpha"), (0.5, 1.0, "zero-to-alpha")):
            wc = classify(alpha, c, bc)
            assert (wc.shape == "none") == (not wc.exists)

    def test_unknown_bc_rejected(self):
        with pytest.raises(ValueError):
            classify(0.5, 1.0, "alpha-to-one")
