"""Critical wave speeds and existence classification by phase-plane shooting.

The two shooting maps follow the saddle manifolds of (1, 0) to their first
w = 0 crossing:

  * minus branch: the unstable manifold into {u < 1, w < 0}, integrated
    forward in xi; its crossing value u_c^- increases strictly with c on
    [0, 2*sqrt(1-alpha)) and sweeps [(3*alpha-1)/2, alpha).
  * plus branch: the stable manifold into {u < 1, w > 0}, integrated backward
    in xi; its crossing value u_c^+ decreases strictly with c and sweeps
    (-inf, (3*alpha-1)/2].

The unique bistable speed is the root of u_c^- = 0 (alpha < 1/3) or the
negated root of u_c^+ = 0 (alpha > 1/3).  Both maps are evaluated in the xi
parametrization, where the w = 0 crossing is a regular event; the
u-parametrized form dw/du = -c - (u-alpha)(1-u)/w is singular exactly there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .phase import EventSpec, ModelParams, PhaseState, Trajectory, integrate, manifold_seed

__all__ = [
    "EndpointResult",
    "SpeedEstimate",
    "CriticalSpeeds",
    "WaveClass",
    "BracketError",
    "kpp_min_speed",
    "endpoint",
    "bistable_speed",
    "pushed_min_speed",
    "monotone_min_speed",
    "critical_speeds",
    "classify",
]

ALPHA_BISTABLE_ZERO = 1.0 / 3.0  # threshold where the bistable speed changes sign


class BracketError(RuntimeError):
    """Failed to establish a sign-changing bracket; message reports the scan."""


@dataclass(frozen=True)
class EndpointResult:
    """First w = 0 crossing of a shooting branch.

    value is the crossing u (u_c^- or u_c^+); it is None when the minus-branch
    trajectory converged to (alpha, 0) before any crossing, which happens for
    c >= 2*sqrt(1-alpha).
    """

    branch: str
    value: float | None
    xi_at_crossing: float | None
    converged_to_alpha: bool = False

    @property
    def crossed(self) -> bool:
        return self.value is not None


@dataclass(frozen=True)
class SpeedEstimate:
    """A speed with its certification bracket and the tolerance used."""

    value: float
    bracket: tuple[float, float]
    tol: float
    method: str  # closed-form | bisection

    def __float__(self) -> float:
        return self.value


@dataclass(frozen=True)
class CriticalSpeeds:
    """The four critical speeds at a given threshold alpha."""

    alpha: float
    c_kpp: float
    c_bistable: SpeedEstimate
    c_pushed_min: SpeedEstimate
    c_monotone_min: SpeedEstimate

    def as_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "c_kpp": self.c_kpp,
            "c_bistable": self.c_bistable.value,
            "c_pushed_min": self.c_pushed_min.value,
            "c_monotone_min": self.c_monotone_min.value,
            "brackets": {
                "c_bistable": list(self.c_bistable.bracket),
                "c_pushed_min": list(self.c_pushed_min.bracket),
                "c_monotone_min": list(self.c_monotone_min.bracket),
            },
            "tol": {
                "c_bistable": self.c_bistable.tol,
                "c_pushed_min": self.c_pushed_min.tol,
                "c_monotone_min": self.c_monotone_min.tol,
            },
        }


@dataclass(frozen=True)
class WaveClass:
    """Existence and shape of a wave for given (alpha, c, boundary condition)."""

    exists: bool
    shape: str  # monotone | oscillatory | touches-zero-nonunique | single-maximum | none
    free_boundary: bool = False
    note: str = ""


def kpp_min_speed(alpha: float) -> float:
    """Minimal speed 2*sqrt(1-alpha) of monotone waves connecting 1 and alpha."""
    if not (0.0 < alpha < 1.0):
        raise ValueError(f"alpha must lie in the open interval (0, 1): got {alpha}")
    return 2.0 * math.sqrt(1.0 - alpha)


_CONV_RADIUS = 1e-8  # equilibrium-convergence radius used by all shooting events


def endpoint(alpha: float, c: float, branch: str, *, offset: float = 1e-7,
             box: float = 50.0, max_span: float = 2e4) -> EndpointResult:
    """First w = 0 crossing of a saddle-manifold trajectory.

    branch "minus" integrates the unstable manifold forward until w crosses 0
    rising, or reports convergence to (alpha, 0) when no crossing exists.
    branch "plus" integrates the stable manifold backward until w crosses 0
    falling; leaving the |u|,|w| <= box region without a crossing is an error.
    """
    params = ModelParams(alpha, c)
    if branch == "minus":
        if c < 0.0:
            raise ValueError("minus branch requires c >= 0")
        seed = manifold_seed(params, "unstable-below", offset)
        events = [EventSpec.w_crosses(0.0, "rising"),
                  EventSpec.near_point(alpha, 0.0, _CONV_RADIUS)]
        traj = integrate(seed, params, "forward", events, max_span=max_span)
        if traj.termination != "event":
            raise BracketError(
                f"minus endpoint undecided for alpha={alpha}, c={c}: {traj.termination} "
                f"after span {abs(traj.xi[-1] - traj.xi[0]):.3g}")
        if traj.event is events[1]:
            return EndpointResult(branch, None, None, converged_to_alpha=True)
        st = traj.event_state
        return EndpointResult(branch, st.u, st.xi)
    if branch == "plus":
        if c < 0.0:
            raise ValueError("plus branch requires c >= 0")
        seed = manifold_seed(params, "stable-above", offset)
        events = [EventSpec.w_crosses(0.0, "falling"),
                  EventSpec.leaves_box(box, box)]
        traj = integrate(seed, params, "backward", events, max_span=max_span)
        if traj.termination != "event" or traj.event is events[1]:
            raise BracketError(
                f"plus endpoint failed for alpha={alpha}, c={c}: no w=0 crossing before "
                f"{'box exit' if traj.termination == 'event' else traj.termination} "
                f"(last state u={traj.u[-1]:.4g}, w={traj.w[-1]:.4g})")
        st = traj.event_state
        return EndpointResult(branch, st.u, st.xi)
    raise ValueError(f"unknown endpoint branch {branch!r}")


def _bisect_scalar(f, lo: float, hi: float, f_lo: float, f_hi: float,
                   tol: float, max_iter: int = 200):
    """Sign-change bisection; returns (root estimate, bracket)."""
    if f_lo == 0.0:
        return lo, (lo, lo)
    if f_hi == 0.0:
        return hi, (hi, hi)
    if (f_lo > 0.0) == (f_hi > 0.0):
        raise BracketError(f"no sign change on [{lo}, {hi}]: f(lo)={f_lo:.4g}, f(hi)={f_hi:.4g}")
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid, (mid, mid)
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi, f_hi = mid, f_mid
    return 0.5 * (lo + hi), (lo, hi)


def _minus_sign_value(alpha: float, c: float) -> float:
    """u_c^- as a sign function; convergence without crossing counts as positive."""
    res = endpoint(alpha, c, "minus")
    return res.value if res.crossed else alpha


@lru_cache(maxsize=256)
def bistable_speed(alpha: float, tol: float = 1e-8) -> SpeedEstimate:
    """The unique speed of the wave connecting 1 to the extinct state.

    Positive for alpha < 1/3 (root of u_c^- = 0), exactly 0 at alpha = 1/3,
    and negative for alpha > 1/3 (minus the root of u_c^+ = 0, obtained from
    the c -> -c, xi -> -xi symmetry of the wave equation).
    """
    if not (0.0 < alpha < 1.0):
        raise ValueError(f"alpha must lie in the open interval (0, 1): got {alpha}")
    if tol <= 0.0:
        raise ValueError(f"tolerance must be positive: got {tol}")
    if alpha == ALPHA_BISTABLE_ZERO:
        return SpeedEstimate(0.0, (0.0, 0.0), tol, "closed-form")
    if alpha < ALPHA_BISTABLE_ZERO:
        c_star = kpp_min_speed(alpha)
        lo, f_lo = 0.0, (3.0 * alpha - 1.0) / 2.0
        hi = 0.9 * c_star
        f_hi = _minus_sign_value(alpha, hi)
        scanned = [hi]
        while f_hi <= 0.0:  # c_* unusually close to c*: close the gap geometrically
            if c_star - hi < 1e-9:
                raise BracketError(
                    f"u_c^- never positive below c*={c_star:.6g} for alpha={alpha}; "
                    f"scanned {scanned}")
            hi = c_star - 0.3 * (c_star - hi)
            f_hi = _minus_sign_value(alpha, hi)
            scanned.append(hi)
        root, bracket = _bisect_scalar(lambda c: _minus_sign_value(alpha, c),
                                       lo, hi, f_lo, f_hi, tol)
        return SpeedEstimate(root, bracket, tol, "bisection")
    # alpha > 1/3: shoot the plus branch and mirror the speed
    lo, f_lo = 0.0, (3.0 * alpha - 1.0) / 2.0
    hi = 0.1
    scanned = []
    for _ in range(12):
        f_hi = endpoint(alpha, hi, "plus").value
        scanned.append((hi, f_hi))
        if f_hi < 0.0:
            break
        lo, f_lo = hi, f_hi
        hi *= 2.0
    else:
        raise BracketError(f"u_c^+ never negative up to c={hi / 2:.4g} for alpha={alpha}; "
                           f"scanned {scanned}")
    root, bracket = _bisect_scalar(lambda c: endpoint(alpha, c, "plus").value,
                                   lo, hi, f_lo, f_hi, tol)
    return SpeedEstimate(-root, (-bracket[1], -bracket[0]), tol, "bisection")


@lru_cache(maxsize=256)
def pushed_min_speed(alpha: float, tol: float = 1e-8) -> SpeedEstimate:
    """Existence threshold for waves connecting the extinct state to alpha.

    Zero for alpha <= 1/3; the mirrored bistable speed magnitude otherwise.
    """
    if not (0.0 < alpha < 1.0):
        raise ValueError(f"alpha must lie in the open interval (0, 1): got {alpha}")
    if alpha <= ALPHA_BISTABLE_ZERO:
        return SpeedEstimate(0.0, (0.0, 0.0), tol, "closed-form")
    cb = bistable_speed(alpha, tol)
    return SpeedEstimate(-cb.value, (-cb.bracket[1], -cb.bracket[0]), tol, "bisection")


def monotone_indicator(alpha: float, c: float, *, max_span: float = 2e4) -> bool:
    """Whether the orbit from (0, 0) reaches (alpha, 0) with w >= -1e-10 throughout.

    The smooth field pushes the orbit into the first quadrant (dw = alpha at
    the origin); it either converges to (alpha, 0) monotonically or w swings
    negative past a local maximum of u above alpha.  The terminal w event sits
    at -1e-9 so that discretization-level grazing cannot flip the outcome.
    """
    params = ModelParams(alpha, c)
    seed = PhaseState(xi=0.0, u=0.0, w=0.0)
    events = [EventSpec.near_point(alpha, 0.0, _CONV_RADIUS),
              EventSpec.w_crosses(-1e-9, "falling")]
    traj = integrate(seed, params, "forward", events, max_span=max_span)
    if traj.termination != "event":
        raise BracketError(f"monotone indicator undecided for alpha={alpha}, c={c}: "
                           f"{traj.termination}")
    if traj.event is events[1]:
        return False
    return bool(traj.w.min() >= -1e-10)


@lru_cache(maxsize=256)
def monotone_min_speed(alpha: float, tol: float = 1e-3) -> SpeedEstimate:
    """Monotonicity threshold for waves connecting the extinct state to alpha.

    Bisects the monotone indicator over [max(c_pushed_min, c_kpp), 2]; the
    monotone set contains [threshold, infinity) and always contains c = 2.
    """
    if not (0.0 < alpha < 1.0):
        raise ValueError(f"alpha must lie in the open interval (0, 1): got {alpha}")
    if tol <= 0.0:
        raise ValueError(f"tolerance must be positive: got {tol}")
    lo = max(pushed_min_speed(alpha).value, kpp_min_speed(alpha))
    hi = 2.0
    if monotone_indicator(alpha, lo):
        # degenerate bracket: already monotone at the lower end
        return SpeedEstimate(lo, (lo, lo), tol, "bisection")
    if not monotone_indicator(alpha, hi):
        raise BracketError(f"orbit from (0,0) not monotone at c=2 for alpha={alpha}; "
                           "this contradicts the trapping-triangle bound")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if monotone_indicator(alpha, mid):
            hi = mid
        else:
            lo = mid
    return SpeedEstimate(0.5 * (lo + hi), (lo, hi), tol, "bisection")


def critical_speeds(alpha: float, tol: float = 1e-8,
                    monotone_tol: float = 1e-3) -> CriticalSpeeds:
    """All four critical speeds at a given threshold."""
    return CriticalSpeeds(
        alpha=alpha,
        c_kpp=kpp_min_speed(alpha),
        c_bistable=bistable_speed(alpha, tol),
        c_pushed_min=pushed_min_speed(alpha, tol),
        c_monotone_min=monotone_min_speed(alpha, monotone_tol),
    )


def classify(alpha: float, c: float, bc: str, *, tol: float = 1e-6,
             speeds: CriticalSpeeds | None = None) -> WaveClass:
    """Existence and shape of the wave satisfying a boundary condition.

    bc "one-to-alpha": u(-inf) = 1, u(+inf) = alpha.
    bc "one-to-zero":  u(-inf) = 1, u = 0 exactly on a half line.
    bc "zero-to-alpha": u = 0 on a half line, u(+inf) = alpha.
    Speed equalities are decided within tol (or the bracket width of the
    computed critical speed, whichever is larger).
    """
    if not (0.0 < alpha < 1.0):
        raise ValueError(f"alpha must lie in the open interval (0, 1): got {alpha}")
    c_star = kpp_min_speed(alpha)

    def _bistable() -> float:
        if speeds is not None:
            return speeds.c_bistable.value
        return bistable_speed(alpha, min(tol, 1e-8)).value

    if bc == "one-to-alpha":
        if alpha < ALPHA_BISTABLE_ZERO:
            cb = _bistable()
            if c < cb - tol:
                return WaveClass(False, "none")
            if abs(c - cb) <= tol:
                return WaveClass(True, "touches-zero-nonunique", free_boundary=True,
                                 note="non-unique family; vanishes at a point or interval")
            if c < c_star:
                return WaveClass(True, "oscillatory")
            return WaveClass(True, "monotone")
        if c <= 0.0:
            return WaveClass(False, "none")
        if c < c_star:
            return WaveClass(True, "oscillatory")
        return WaveClass(True, "monotone")

    if bc == "one-to-zero":
        cb = _bistable()
        if abs(c - cb) <= tol:
            return WaveClass(True, "monotone", free_boundary=True)
        return WaveClass(False, "none", note=f"bistable wave requires c = {cb:.9g}")

    if bc == "zero-to-alpha":
        if speeds is not None:
            c_pp = speeds.c_pushed_min.value
        else:
            c_pp = pushed_min_speed(alpha, min(tol, 1e-8)).value
        if c <= c_pp + tol:
            return WaveClass(False, "none")
        if c < c_star:
            return WaveClass(True, "oscillatory", free_boundary=True)
        if speeds is not None:
            c_mono = speeds.c_monotone_min.value
        else:
            c_mono = monotone_min_speed(alpha, max(tol, 1e-4)).value
        if c >= c_mono - tol:
            return WaveClass(True, "monotone", free_boundary=True)
        return WaveClass(True, "single-maximum", free_boundary=True)

    raise ValueError(f"unknown boundary condition {bc!r}")
