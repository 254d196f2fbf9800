"""Acceptance criteria, one test per criterion.

Each test runs the corresponding check from alleefront.verify at the desk
preset, prints its PASS/FAIL line (visible with -s or on failure), and
asserts both the outcome and the stated runtime budget.  `alleefront verify`
runs the same checks from the command line.
"""

import pytest

from alleefront import verify


def _run(check_fn):
    result = check_fn("desk")
    print(result.line())
    assert result.passed, result.detail
    assert result.in_budget, (f"{result.name} exceeded its runtime budget: "
                              f"{result.seconds:.1f}s / {result.limit_seconds:.0f}s")
    return result


def test_criterion_01_bistable_speed_alpha_03():
    _run(verify.check_bistable_speed_alpha_03)


def test_criterion_02_bistable_speed_sign_law():
    _run(verify.check_bistable_sign_law)


def test_criterion_03_kpp_threshold_classification():
    _run(verify.check_kpp_threshold_classify)


def test_criterion_04_monotone_min_speed():
    _run(verify.check_monotone_min_speed)


def test_criterion_05a_pde_front_speed_alpha_03():
    _run(verify.check_pde_front_alpha_03)


def test_criterion_05b_pde_front_speed_alpha_05():
    _run(verify.check_pde_front_alpha_05)


def test_criterion_06a_pde_pushed_selection():
    _run(verify.check_pde_pushed_selection)


def test_criterion_06b_pde_kpp_selection():
    _run(verify.check_pde_kpp_selection)


def test_criterion_07_extinction_time():
    _run(verify.check_extinction_time)


def test_criterion_08_stationary_geometry():
    _run(verify.check_stationary_geometry)


def test_criterion_09_bump_threshold_instability():
    _run(verify.check_bump_threshold_instability)


def test_criterion_10_property_suites():
    result = _run(verify.check_property_suites)
    for name, rec in result.measured.items():
        print(f"    {'PASS' if rec['passed'] else 'FAIL'}  {name}: {rec['detail']}")
        assert rec["passed"], f"{name}: {rec['detail']}"
