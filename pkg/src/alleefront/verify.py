"""Acceptance checks: figure-level targets and model invariants.

Each check recomputes a published target (critical speeds, front speeds,
extinction times, stationary geometry) or exercises an invariant (energy
dissipation, mirror symmetry, endpoint monotonicity, trapping-region
invariance, nonnegativity, discrete comparison, period agreement, residual
order) and compares at a fixed tolerance.  The desk preset uses the grids the
targets are stated at; strict refines the PDE grids and bisection tolerances.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from . import pde, profiles, shooting
from .phase import EventSpec, ModelParams, PhaseState, in_omega, integrate, manifold_seed

__all__ = ["CheckResult", "run_checks", "report_dict", "CHECK_NAMES"]

SQRT2 = math.sqrt(2.0)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    measured: dict
    seconds: float
    limit_seconds: float | None = None

    @property
    def in_budget(self) -> bool:
        return self.limit_seconds is None or self.seconds < self.limit_seconds

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        budget = "" if self.limit_seconds is None else f" [{self.seconds:.1f}s/{self.limit_seconds:.0f}s]"
        return f"{status}  {self.name}: {self.detail}{budget}"


def _tanh_run(alpha: float, left: float, right: float, x_min: float, x_max: float,
              dx: float, T: float, level: float, steepness: float = 0.1,
              probe: float = 1.0):
    grid = pde.Grid1D.from_spacing(x_min, x_max, dx)
    datum = pde.initial_datum({"kind": "tanh-front", "left": left, "right": right,
                               "steepness": steepness}, grid)
    result = pde.run(pde.PdeState(grid, datum), alpha, T, probe)
    return result, pde.front_track(result, level)


def check_bistable_speed_alpha_03(preset: str) -> CheckResult:
    t0 = time.perf_counter()
    est = shooting.bistable_speed(0.3, 1e-8)
    err = abs(est.value - 0.0792)
    return CheckResult(
        name="bistable-speed-alpha-0.3",
        passed=err <= 0.002,
        detail=f"c_bistable(0.3) = {est.value:.6f}, target 0.0792 +/- 0.002",
        measured={"c_bistable": est.value, "bracket": list(est.bracket)},
        seconds=time.perf_counter() - t0,
        limit_seconds=5.0,
    )


def check_bistable_sign_law(preset: str) -> CheckResult:
    t0 = time.perf_counter()
    v02 = shooting.bistable_speed(0.2, 1e-8).value
    v13 = shooting.bistable_speed(1.0 / 3.0, 1e-8).value
    v05 = shooting.bistable_speed(0.5, 1e-8).value
    ok = v02 > 0.0 and abs(v13) <= 1e-6 and abs(v05 + 0.339) <= 0.005
    return CheckResult(
        name="bistable-speed-sign-law",
        passed=ok,
        detail=f"c(0.2)={v02:.4f}>0, |c(1/3)|={abs(v13):.2g}<=1e-6, "
               f"c(0.5)={v05:.4f} in -0.339 +/- 0.005",
        measured={"c_02": v02, "c_13": v13, "c_05": v05},
        seconds=time.perf_counter() - t0,
        limit_seconds=15.0,
    )


def check_kpp_threshold_classify(preset: str) -> CheckResult:
    t0 = time.perf_counter()
    hi = shooting.classify(0.5, 1.5, "one-to-alpha")
    lo = shooting.classify(0.5, 1.3, "one-to-alpha")
    ok = hi.shape == "monotone" and lo.shape == "oscillatory"
    return CheckResult(
        name="kpp-threshold-classify",
        passed=ok,
        detail=f"classify(0.5, 1.5) = {hi.shape}, classify(0.5, 1.3) = {lo.shape}, "
               f"straddling c* = sqrt(2)",
        measured={"shape_15": hi.shape, "shape_13": lo.shape},
        seconds=time.perf_counter() - t0,
        limit_seconds=5.0,
    )


def check_monotone_min_speed(preset: str) -> CheckResult:
    t0 = time.perf_counter()
    tol = 1e-3 if preset == "desk" else 1e-4
    est = shooting.monotone_min_speed(0.5, tol)
    ok = 1.4145 < est.value < 2.0 and abs(est.value - 1.472) <= 0.05
    return CheckResult(
        name="monotone-min-speed",
        passed=ok,
        detail=f"c_monotone_min(0.5) = {est.value:.5f} in (1.4145, 2), "
               f"target 1.472 +/- 0.05",
        measured={"c_monotone_min": est.value, "bracket": list(est.bracket)},
        seconds=time.perf_counter() - t0,
        limit_seconds=30.0,
    )


def check_pde_front_alpha_03(preset: str) -> CheckResult:
    t0 = time.perf_counter()
    dx = 0.1 if preset == "desk" else 0.05
    _, track = _tanh_run(0.3, 1.0, 0.0, -150.0, 150.0, dx, 200.0, 0.5)
    err = abs(track.fitted_speed - 0.08)
    return CheckResult(
        name="pde-front-speed-alpha-0.3",
        passed=err <= 0.01,
        detail=f"fitted speed = {track.fitted_speed:.5f}, target 0.08 +/- 0.01",
        measured={"fitted_speed": track.fitted_speed},
        seconds=time.perf_counter() - t0,
        limit_seconds=120.0,
    )


def check_pde_front_alpha_05(preset: str) -> CheckResult:
    t0 = time.perf_counter()
    dx = 0.1 if preset == "desk" else 0.05
    result, track = _tanh_run(0.5, 0.0, 1.0, -150.0, 150.0, dx, 200.0, 0.5)
    receding = bool(track.fitted_speed > 0.0
                    and result.snapshots[-1][: result.grid.n // 4].max() < 0.05)
    err = abs(abs(track.fitted_speed) - 0.336)
    return CheckResult(
        name="pde-front-speed-alpha-0.5",
        passed=err <= 0.01 and receding,
        detail=f"|fitted speed| = {abs(track.fitted_speed):.5f}, target 0.336 +/- 0.01, "
               f"u=1 region receding: {receding}",
        measured={"fitted_speed": track.fitted_speed, "receding": receding},
        seconds=time.perf_counter() - t0,
        limit_seconds=120.0,
    )


def check_pde_pushed_selection(preset: str) -> CheckResult:
    # datum of the pushed-selection experiment: (alpha/2)(tanh(0.1 x) + 1),
    # i.e. extinct state invading the alpha state; tracked at level alpha/2
    t0 = time.perf_counter()
    dx = 0.1 if preset == "desk" else 0.05
    _, track = _tanh_run(0.5, 0.0, 0.5, -50.0, 520.0, dx, 240.0, 0.25)
    err = abs(track.fitted_speed - 1.472)
    return CheckResult(
        name="pde-pushed-selection",
        passed=err <= 0.03,
        detail=f"fitted speed = {track.fitted_speed:.5f}, target 1.472 +/- 0.03",
        measured={"fitted_speed": track.fitted_speed},
        seconds=time.perf_counter() - t0,
        limit_seconds=120.0,
    )


def check_pde_kpp_selection(preset: str) -> CheckResult:
    # datum (1-alpha)/2 (tanh(-0.1 x) + 1) + alpha: the 1 state invading alpha
    t0 = time.perf_counter()
    dx = 0.1 if preset == "desk" else 0.05
    _, track = _tanh_run(0.5, 1.0, 0.5, -100.0, 520.0, dx, 300.0, 0.75)
    err = abs(track.fitted_speed - SQRT2)
    return CheckResult(
        name="pde-kpp-selection",
        passed=err <= 0.03,
        detail=f"fitted speed = {track.fitted_speed:.5f}, target sqrt(2) +/- 0.03",
        measured={"fitted_speed": track.fitted_speed},
        seconds=time.perf_counter() - t0,
        limit_seconds=120.0,
    )


def check_extinction_time(preset: str) -> CheckResult:
    t0 = time.perf_counter()
    dx = 0.05 if preset == "desk" else 0.025
    grid = pde.Grid1D.from_spacing(-2.0, 2.0, dx)
    state = pde.PdeState(grid, pde.initial_datum({"kind": "constant", "value": 0.25}, grid))
    result = pde.run(state, 0.5, 2.0, 0.005)
    target = 2.0 * math.log(1.5)
    ok = result.extinction_time is not None and abs(result.extinction_time - target) <= 0.01
    return CheckResult(
        name="extinction-time",
        passed=ok,
        detail=f"extinction at t = {result.extinction_time}, target 2 ln(1.5) = "
               f"{target:.4f} +/- 0.01",
        measured={"extinction_time": result.extinction_time, "target": target},
        seconds=time.perf_counter() - t0,
        limit_seconds=10.0,
    )


def check_stationary_geometry(preset: str) -> CheckResult:
    t0 = time.perf_counter()
    bump = profiles.stationary_profile(0.25, "bump", 1e-3)
    dip = profiles.stationary_profile(0.5, "dip", 1e-3)
    # independent oracle: E(u1, 0) = E(0, 0) reduces to a quadratic in u1
    roots = np.roots([-1.0 / 3.0, (1.0 + 0.25) / 2.0, -0.25])
    u1_oracle = float(roots[(roots > 0.25) & (roots < 1.0)][0])
    bump_max = float(bump.u.max())
    dip_min = float(dip.u.min())
    ok = (abs(bump_max - 0.5785) <= 1e-3 and abs(bump_max - u1_oracle) <= 1e-6
          and abs(dip_min - 0.25) <= 1e-6)
    return CheckResult(
        name="stationary-geometry",
        passed=ok,
        detail=f"bump max = {bump_max:.6f} (target 0.5785 +/- 1e-3, oracle "
               f"{u1_oracle:.6f}), dip min = {dip_min:.9f} (target 0.25 +/- 1e-6)",
        measured={"bump_max": bump_max, "dip_min": dip_min, "u1_oracle": u1_oracle},
        seconds=time.perf_counter() - t0,
        limit_seconds=5.0,
    )


def check_bump_threshold_instability(preset: str) -> CheckResult:
    t0 = time.perf_counter()
    dx = 0.05 if preset == "desk" else 0.025
    alpha = 0.25
    bump = profiles.stationary_profile(alpha, "bump", 1e-2)
    grid = pde.Grid1D.from_spacing(-60.0, 60.0, dx)
    outcomes = {}
    for factor in (0.95, 1.05):
        datum = pde.initial_datum({"kind": "profile", "profile": bump, "scale": factor}, grid)
        result = pde.run(pde.PdeState(grid, datum), alpha, 100.0, 1.0)
        bulk = [pde.support_intervals(s, grid, threshold=alpha / 2.0)
                for s in result.snapshots]
        width = [sum(hi - lo for lo, hi in iv) for iv in bulk]
        outcomes[factor] = {
            "extinction_time": result.extinction_time,
            "final_max": float(result.snapshots[-1].max()),
            "bulk_width_T2": width[len(width) // 2 - 1],
            "bulk_width_T": width[-1],
        }
    low, high = outcomes[0.95], outcomes[1.05]
    initial_width = 2.0 * abs(bump.free_boundaries[0])
    spreading = (high["extinction_time"] is None
                 and high["final_max"] > alpha
                 and high["bulk_width_T"] > high["bulk_width_T2"] > initial_width)
    ok = low["extinction_time"] is not None and spreading
    return CheckResult(
        name="bump-threshold-instability",
        passed=ok,
        detail=f"0.95x bump extinct at t = {low['extinction_time']}; 1.05x bump "
               f"spreading (support width {initial_width:.1f} -> "
               f"{high['bulk_width_T2']:.1f} -> {high['bulk_width_T']:.1f}, "
               f"max -> {high['final_max']:.3f})",
        measured=outcomes,
        seconds=time.perf_counter() - t0,
        limit_seconds=180.0,
    )


# ---------------------------------------------------------------- properties


def _prop_energy_dissipation() -> tuple[bool, str]:
    params = ModelParams(0.4, 0.7)
    traj = integrate(PhaseState(0.0, 0.6, 0.0), params, "forward",
                     [EventSpec.xi_exceeds(30.0)], sample_step=0.002)
    E = traj.energy()
    drift = E - E[0] + params.c * np.concatenate(
        [[0.0], np.cumsum(np.diff(traj.xi) * 0.5 * (traj.w[1:] ** 2 + traj.w[:-1] ** 2))])
    err_c = float(np.max(np.abs(drift)))
    params0 = ModelParams(0.4, 0.0)
    traj0 = integrate(PhaseState(0.0, 0.6, 0.0), params0, "forward", max_span=100.0)
    E0 = traj0.energy()
    err_0 = float(np.max(np.abs(E0 - E0[0])))
    ok = err_c <= 1e-6 and err_0 <= 1e-8
    return ok, f"dissipation defect {err_c:.2e} <= 1e-6, conservation drift {err_0:.2e} <= 1e-8"


def _prop_mirror_symmetry() -> tuple[bool, str]:
    h, span = 0.01, 20.0
    fwd = integrate(PhaseState(0.0, 0.6, 0.1), ModelParams(0.4, 0.7), "forward",
                    max_span=span, sample_step=h)
    bwd = integrate(PhaseState(0.0, 0.6, -0.1), ModelParams(0.4, -0.7), "backward",
                    max_span=span, sample_step=h)
    n = min(fwd.u.size, bwd.u.size)
    err = float(np.max(np.abs(fwd.u[:n] - bwd.u[:n])))
    return err <= 1e-8, f"mirror mismatch {err:.2e} <= 1e-8"


def _prop_endpoint_monotonicity() -> tuple[bool, str]:
    worst = ""
    for alpha in (0.2, 1.0 / 3.0, 0.5, 0.7):
        c_star = shooting.kpp_min_speed(alpha)
        minus = []
        for c in np.linspace(0.0, 0.95 * c_star, 10):
            r = shooting.endpoint(alpha, float(c), "minus")
            if r.crossed:
                minus.append(r.value)
        if not all(b > a for a, b in zip(minus, minus[1:])):
            return False, f"minus endpoint not increasing at alpha={alpha}"
        lo = (3.0 * alpha - 1.0) / 2.0
        if not all(lo - 1e-9 <= v < alpha for v in minus):
            return False, f"minus endpoint out of [(3a-1)/2, alpha) at alpha={alpha}"
        plus = [shooting.endpoint(alpha, float(c), "plus").value
                for c in np.linspace(0.0, 2.0, 10)]
        if not all(b < a for a, b in zip(plus, plus[1:])):
            return False, f"plus endpoint not decreasing at alpha={alpha}"
        worst = f"last alpha checked {alpha}"
    return True, f"u_c^- increasing, u_c^+ decreasing on 10-point grids ({worst})"


def _prop_sign_structure() -> tuple[bool, str]:
    pos = [shooting.bistable_speed(a, 1e-6).value for a in (0.1, 0.2, 0.3)]
    zero = shooting.bistable_speed(1.0 / 3.0, 1e-6).value
    neg = [shooting.bistable_speed(a, 1e-6).value for a in (0.4, 0.6, 0.8)]
    ok = all(v > 0 for v in pos) and zero == 0.0 and all(v < 0 for v in neg)
    return ok, (f"c_* > 0 at {{0.1,0.2,0.3}}, = 0 at 1/3, < 0 at {{0.4,0.6,0.8}} "
                f"(e.g. {pos[0]:.3f}, {neg[0]:.3f})")


def _prop_omega_invariance() -> tuple[bool, str]:
    for alpha, c in ((0.25, 0.3), (0.25, 1.0), (0.5, 0.3), (0.5, 1.0)):
        params = ModelParams(alpha, c)
        seed = PhaseState(0.0, 0.6, 0.0)
        if not in_omega(seed.u, seed.w, alpha):
            return False, f"seed not in Omega at alpha={alpha}"
        traj = integrate(seed, params, "forward",
                         [EventSpec.near_point(alpha, 0.0, 1e-8)], max_span=1e4)
        if traj.termination != "event":
            return False, f"no convergence within span 1e4 at alpha={alpha}, c={c}"
        inside = in_omega(traj.u, traj.w, alpha)
        if not bool(np.all(inside)):
            return False, f"trajectory left Omega at alpha={alpha}, c={c}"
    return True, "orbits seeded in Omega stay in Omega and reach (alpha, 0)"


def _prop_pde_nonnegativity() -> tuple[bool, str]:
    grid = pde.Grid1D.from_spacing(-30.0, 30.0, 0.1)
    mins, clamps = [], []
    for spec, alpha in (({"kind": "tanh-front", "left": 1.0, "right": 0.0,
                          "steepness": 0.1}, 0.3),
                        ({"kind": "sech-dip", "depth": 0.7, "rate": 0.5}, 0.5)):
        state = pde.PdeState(grid, pde.initial_datum(spec, grid))
        result = pde.run(state, alpha, 10.0, 0.5)
        mins.append(float(result.snapshots.min()))
        clamps.append(bool(np.all(np.diff(result.clamped_mass) >= 0.0)))
    ok = all(m >= 0.0 for m in mins) and all(clamps)
    return ok, f"min over runs {min(mins):.3g} >= 0, clamped mass non-decreasing"


def _prop_comparison() -> tuple[bool, str]:
    grid = pde.Grid1D.from_spacing(-30.0, 30.0, 0.1)
    pairs = []
    a1 = pde.initial_datum({"kind": "constant", "value": 0.2}, grid)
    b1 = pde.initial_datum({"kind": "constant", "value": 0.25}, grid)
    pairs.append((a1, b1, 0.5))
    a2 = pde.initial_datum({"kind": "tanh-front", "left": 1.0, "right": 0.0,
                            "steepness": 0.1}, grid)
    b2 = np.minimum(a2 + 0.05, 1.0)
    pairs.append((a2, b2, 0.3))
    worst = 0.0
    for a, b, alpha in pairs:
        ra = pde.run(pde.PdeState(grid, a.copy()), alpha, 5.0, 0.5)
        rb = pde.run(pde.PdeState(grid, b.copy()), alpha, 5.0, 0.5)
        rep = pde.comparison_check(ra, rb)
        if not rep.passed:
            return False, f"ordering violated by {rep.max_violation:.3g} at alpha={alpha}"
        worst = max(worst, rep.max_violation)
    return True, f"ordered pairs stay ordered; worst violation {worst:.2e}"


def _prop_period_agreement() -> tuple[bool, str]:
    q = profiles.orbit_period(0.25, 0.1)
    loop = profiles.orbit_loop_period(0.25, 0.1)
    if abs(q - loop) > 1e-6:
        return False, f"quadrature {q} vs loop {loop}"
    lin = 2.0 * math.pi / math.sqrt(0.25)
    near = profiles.orbit_period(0.75, 0.75 - 1e-4)
    if abs(near - lin) > 1e-2:
        return False, f"linear limit violated: {near} vs {lin}"
    seq = [profiles.orbit_period(0.25, u0) for u0 in np.linspace(0.05, 0.2499, 5)]
    if not all(b < a for a, b in zip(seq, seq[1:])):
        return False, "period not decreasing toward the linear limit"
    return True, (f"quadrature-loop gap {abs(q - loop):.2e} <= 1e-6, linear limit "
                  f"{near:.4f} ~ {lin:.4f}")


def _prop_residual_order() -> tuple[bool, str]:
    r_razors = []
    for kind, build in (("bistable", lambda h: profiles.bistable_profile(0.3, h)),
                        ("pushed", lambda h: profiles.pushed_profile(0.5, 2.0, h)),
                        ("dip", lambda h: profiles.stationary_profile(0.5, "dip", h))):
        r1 = profiles.residual(build(0.05))
        r2 = profiles.residual(build(0.025))
        ratio = r1 / r2
        if not (3.5 <= ratio <= 4.5):
            return False, f"{kind} residual ratio {ratio:.2f} outside [3.5, 4.5]"
        r_razors.append(ratio)
    fine = profiles.residual(profiles.bistable_profile(0.3, 1e-3))
    if fine > 1e-4:
        return False, f"bistable residual at h=1e-3 is {fine:.2e} > 1e-4"
    return True, (f"second-order ratios {', '.join(f'{r:.2f}' for r in r_razors)}; "
                  f"fine-grid residual {fine:.1e} <= 1e-4")


def check_property_suites(preset: str) -> CheckResult:
    t0 = time.perf_counter()
    props = [
        ("energy-dissipation", _prop_energy_dissipation),
        ("mirror-symmetry", _prop_mirror_symmetry),
        ("endpoint-monotonicity", _prop_endpoint_monotonicity),
        ("bistable-sign-structure", _prop_sign_structure),
        ("omega-invariance", _prop_omega_invariance),
        ("pde-nonnegativity", _prop_pde_nonnegativity),
        ("discrete-comparison", _prop_comparison),
        ("period-agreement", _prop_period_agreement),
        ("residual-order", _prop_residual_order),
    ]
    failures = []
    notes = []
    measured = {}
    for name, fn in props:
        ok, detail = fn()
        measured[name] = {"passed": ok, "detail": detail}
        (notes if ok else failures).append(f"{name}: {detail}")
    return CheckResult(
        name="property-suites",
        passed=not failures,
        detail="; ".join(failures) if failures else f"all {len(props)} property bundles hold",
        measured=measured,
        seconds=time.perf_counter() - t0,
        limit_seconds=180.0,
    )


_CHECKS = [
    check_bistable_speed_alpha_03,
    check_bistable_sign_law,
    check_kpp_threshold_classify,
    check_monotone_min_speed,
    check_pde_front_alpha_03,
    check_pde_front_alpha_05,
    check_pde_pushed_selection,
    check_pde_kpp_selection,
    check_extinction_time,
    check_stationary_geometry,
    check_bump_threshold_instability,
    check_property_suites,
]

CHECK_NAMES = [
    "bistable-speed-alpha-0.3",
    "bistable-speed-sign-law",
    "kpp-threshold-classify",
    "monotone-min-speed",
    "pde-front-speed-alpha-0.3",
    "pde-front-speed-alpha-0.5",
    "pde-pushed-selection",
    "pde-kpp-selection",
    "extinction-time",
    "stationary-geometry",
    "bump-threshold-instability",
    "property-suites",
]


def run_checks(preset: str = "desk", names=None, stream=print) -> list[CheckResult]:
    """Run the acceptance checks, printing one PASS/FAIL line per check."""
    if preset not in ("desk", "strict"):
        raise ValueError(f"preset must be desk or strict: got {preset!r}")
    results = []
    for fn, name in zip(_CHECKS, CHECK_NAMES):
        if names and name not in names:
            continue
        result = fn(preset)
        results.append(result)
        if stream is not None:
            stream(result.line())
    if stream is not None and results:
        n_pass = sum(r.passed for r in results)
        stream(f"{n_pass}/{len(results)} checks passed ({preset} preset)")
    return results


def report_dict(results: list[CheckResult]) -> dict:
    return {
        "passed": all(r.passed for r in results),
        "checks": [
            {
                "name": r.name,
                "passed": r.passed,
                "detail": r.detail,
                "seconds": r.seconds,
                "limit_seconds": r.limit_seconds,
                "measured": r.measured,
            }
            for r in results
        ],
    }
