"""Phase plane of the traveling-wave system for the cutoff quadratic reaction.

The model PDE is u_t = u_xx + (u - alpha)(1 - u) * chi_{u>0} with a threshold
alpha in (0, 1).  In the wave coordinate xi = x - c*t a profile solves the
first-order system

    u' = w,
    w' = -c*w - (u - alpha)(1 - u) * chi_{u>0},

which has equilibria (alpha, 0) and (1, 0).  This module provides the reaction
term, the vector field (with and without the cutoff), the first integral

    E(u, w) = w^2 / 2 - int_u^1 (s - alpha)(1 - s) ds,

eigendata of the two equilibria, saddle-manifold seed points, and an adaptive
event-terminated integrator used by all shooting and profile construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.integrate import RK45, OdeSolution

__all__ = [
    "ModelParams",
    "PhaseState",
    "EigenData",
    "EventSpec",
    "Trajectory",
    "StepUnderflowError",
    "reaction",
    "vector_field",
    "energy",
    "in_omega",
    "eigen",
    "manifold_seed",
    "integrate",
    "detect_touches",
]


class StepUnderflowError(RuntimeError):
    """Adaptive step size collapsed; carries the last valid state."""

    def __init__(self, message: str, last_state: "PhaseState"):
        super().__init__(message)
        self.last_state = last_state


@dataclass(frozen=True)
class ModelParams:
    """Threshold alpha in (0,1) and wave speed c (any finite real)."""

    alpha: float
    c: float

    def __post_init__(self):
        if not (0.0 < self.alpha < 1.0):
            raise ValueError(f"alpha must lie in the open interval (0, 1): got {self.alpha}")
        if not math.isfinite(self.c):
            raise ValueError(f"wave speed c must be finite: got {self.c}")


@dataclass(frozen=True)
class PhaseState:
    """A point (xi, u, w) with w = du/dxi."""

    xi: float
    u: float
    w: float

    def __post_init__(self):
        if not (math.isfinite(self.xi) and math.isfinite(self.u) and math.isfinite(self.w)):
            raise ValueError(f"non-finite phase state ({self.xi}, {self.u}, {self.w})")


@dataclass(frozen=True)
class EigenData:
    """Eigendata of the linearizations at (alpha, 0) and (1, 0).

    lambda_plus/minus belong to (alpha, 0) and are complex for
    c^2 < 4(1 - alpha); Lambda_plus/minus belong to the saddle (1, 0) and are
    always real with Lambda_minus < 0 < Lambda_plus.  vec_unstable and
    vec_stable are the saddle eigendirections (1, Lambda_+-).
    """

    lambda_plus: complex
    lambda_minus: complex
    Lambda_plus: float
    Lambda_minus: float
    vec_unstable: tuple[float, float]
    vec_stable: tuple[float, float]
    alpha_point: str  # node | focus | center at (alpha, 0)
    one_point: str = "saddle"


def reaction(u, alpha):
    """Cutoff reaction (u - alpha)(1 - u) for u > 0, exactly 0 for u <= 0.

    Accepts scalars or arrays; the positivity test is strict, so the value at
    u = 0 is 0 even though the polynomial limit there is -alpha.
    """
    if np.isscalar(u):
        return (u - alpha) * (1.0 - u) if u > 0.0 else 0.0
    u = np.asarray(u)
    return np.where(u > 0.0, (u - alpha) * (1.0 - u), 0.0)


def vector_field(state: PhaseState, params: ModelParams, smooth: bool = True) -> tuple[float, float]:
    """Right-hand side (du, dw) at a phase point.

    With smooth=True the cutoff is ignored (the polynomial field used for
    shooting); with smooth=False the reaction is cut off below u = 0.
    """
    if smooth:
        rate = (state.u - params.alpha) * (1.0 - state.u)
    else:
        rate = reaction(state.u, params.alpha)
    return state.w, -params.c * state.w - rate


def _potential(u, alpha):
    # int_u^1 (s - alpha)(1 - s) ds via the cubic antiderivative
    def anti(s):
        return -(s ** 3) / 3.0 + (1.0 + alpha) * s ** 2 / 2.0 - alpha * s

    return anti(1.0) - anti(u)


def energy(u, w, alpha):
    """First integral E(u, w) = w^2/2 - int_u^1 (s - alpha)(1 - s) ds.

    Constant along c = 0 orbits and non-increasing along c > 0 orbits.  The
    zero level set is the closed loop through (1, 0); it crosses the u-axis
    again at u = (3*alpha - 1)/2.
    """
    if np.isscalar(u) and np.isscalar(w):
        return w * w / 2.0 - _potential(u, alpha)
    u = np.asarray(u, dtype=float)
    w = np.asarray(w, dtype=float)
    return w ** 2 / 2.0 - _potential(u, alpha)


def in_omega(u, w, alpha):
    """Membership in the trapping region {E(u, w) < 0, u < 1}."""
    if np.isscalar(u) and np.isscalar(w):
        return energy(u, w, alpha) < 0.0 and u < 1.0
    return (energy(u, w, alpha) < 0.0) & (np.asarray(u) < 1.0)


def eigen(params: ModelParams) -> EigenData:
    """Eigenvalues and saddle eigendirections of the linearized system."""
    a, c = params.alpha, params.c
    disc = c * c - 4.0 * (1.0 - a)
    if disc >= 0.0:
        r = math.sqrt(disc)
        lam_p = complex((-c + r) / 2.0)
        lam_m = complex((-c - r) / 2.0)
    else:
        r = math.sqrt(-disc)
        lam_p = complex(-c / 2.0, r / 2.0)
        lam_m = complex(-c / 2.0, -r / 2.0)
    R = math.sqrt(c * c + 4.0 * (1.0 - a))
    Lam_p = (-c + R) / 2.0
    Lam_m = (-c - R) / 2.0
    if c == 0.0:
        kind = "center"
    elif disc >= 0.0:
        kind = "node"
    else:
        kind = "focus"
    return EigenData(
        lambda_plus=lam_p,
        lambda_minus=lam_m,
        Lambda_plus=Lam_p,
        Lambda_minus=Lam_m,
        vec_unstable=(1.0, Lam_p),
        vec_stable=(1.0, Lam_m),
        alpha_point=kind,
    )


def manifold_seed(params: ModelParams, branch: str, offset: float = 1e-7) -> PhaseState:
    """Seed point a small step along a saddle manifold of (1, 0).

    branch "unstable-below" steps along -(1, Lambda_+)/|.| into {u < 1, w < 0};
    branch "stable-above" steps along -(1, Lambda_-)/|.| into {u < 1, w > 0}.
    The offset must be positive and below 0.01 so the linearization error
    stays under profile tolerances.
    """
    if not (0.0 < offset < 0.01):
        raise ValueError(f"manifold seed offset must lie in (0, 0.01): got {offset}")
    ed = eigen(params)
    if branch == "unstable-below":
        vu, vw = ed.vec_unstable
    elif branch == "stable-above":
        vu, vw = ed.vec_stable
    else:
        raise ValueError(f"unknown manifold branch {branch!r}")
    norm = math.hypot(vu, vw)
    return PhaseState(xi=0.0, u=1.0 - offset * vu / norm, w=-offset * vw / norm)


@dataclass(frozen=True)
class EventSpec:
    """Terminal event for the integrator.

    kind is one of u-crosses-level, w-crosses-level, distance-to-point-below,
    leaves-box, xi-exceeds.  direction restricts the sign change of the event
    function along the integration progression: "rising" fires on - to +,
    "falling" on + to -, "any" on either.
    """

    kind: str
    level: float = 0.0
    point: tuple[float, float] | None = None
    box: tuple[float, float, float, float] | None = None
    direction: str = "any"

    _KINDS = ("u-crosses-level", "w-crosses-level", "distance-to-point-below",
              "leaves-box", "xi-exceeds")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown event kind {self.kind!r}")
        if self.direction not in ("any", "rising", "falling"):
            raise ValueError(f"unknown event direction {self.direction!r}")
        if not math.isfinite(self.level):
            raise ValueError("event level/bound must be finite")
        if self.kind == "distance-to-point-below" and self.point is None:
            raise ValueError("distance event needs a target point")
        if self.kind == "leaves-box" and self.box is None:
            raise ValueError("box event needs a box (u_lo, u_hi, w_lo, w_hi)")

    @classmethod
    def u_crosses(cls, level: float, direction: str = "any") -> "EventSpec":
        return cls(kind="u-crosses-level", level=level, direction=direction)

    @classmethod
    def w_crosses(cls, level: float, direction: str = "any") -> "EventSpec":
        return cls(kind="w-crosses-level", level=level, direction=direction)

    @classmethod
    def near_point(cls, u: float, w: float, radius: float) -> "EventSpec":
        return cls(kind="distance-to-point-below", level=radius, point=(u, w),
                   direction="falling")

    @classmethod
    def leaves_box(cls, u_abs: float = 50.0, w_abs: float = 50.0) -> "EventSpec":
        return cls(kind="leaves-box", box=(-u_abs, u_abs, -w_abs, w_abs),
                   direction="falling")

    @classmethod
    def xi_exceeds(cls, bound: float) -> "EventSpec":
        return cls(kind="xi-exceeds", level=bound)

    def function(self) -> Callable[[float, np.ndarray], float]:
        """Continuous scalar function whose sign change marks the event."""
        if self.kind == "u-crosses-level":
            lvl = self.level
            return lambda xi, y: y[0] - lvl
        if self.kind == "w-crosses-level":
            lvl = self.level
            return lambda xi, y: y[1] - lvl
        if self.kind == "distance-to-point-below":
            pu, pw = self.point
            r = self.level
            return lambda xi, y: math.hypot(y[0] - pu, y[1] - pw) - r
        if self.kind == "leaves-box":
            u_lo, u_hi, w_lo, w_hi = self.box
            return lambda xi, y: min(y[0] - u_lo, u_hi - y[0], y[1] - w_lo, w_hi - y[1])
        # xi-exceeds
        bound = self.level
        return lambda xi, y: bound - xi

    def describe(self) -> str:
        if self.kind == "u-crosses-level":
            return f"u-crosses-{self.level:g}-{self.direction}"
        if self.kind == "w-crosses-level":
            return f"w-crosses-{self.level:g}-{self.direction}"
        if self.kind == "distance-to-point-below":
            return f"distance-to-({self.point[0]:g},{self.point[1]:g})-below-{self.level:g}"
        if self.kind == "leaves-box":
            return "leaves-box"
        return f"xi-exceeds-{self.level:g}"


@dataclass
class Trajectory:
    """Event-terminated orbit samples with strictly monotone xi.

    termination is "event", "max-span", or "max-steps"; when an event fired,
    `event` holds its spec and `event_state` the localized terminal state.
    With keep_dense=True the piecewise dense output of the integrator is
    retained and `eval` interpolates (u, w) anywhere on the covered span at
    integrator accuracy.
    """

    params: ModelParams
    direction: str
    xi: np.ndarray
    u: np.ndarray
    w: np.ndarray
    termination: str
    event: EventSpec | None = None
    event_state: PhaseState | None = None
    n_steps: int = 0
    dense: OdeSolution | None = field(default=None, repr=False)

    def __post_init__(self):
        for arr in (self.xi, self.u, self.w):
            arr.flags.writeable = False

    def energy(self) -> np.ndarray:
        return energy(self.u, self.w, self.params.alpha)

    def final(self) -> PhaseState:
        return PhaseState(xi=float(self.xi[-1]), u=float(self.u[-1]), w=float(self.w[-1]))

    def eval(self, xi):
        """Dense-output evaluation; returns (u, w) arrays for the given xi."""
        if self.dense is None:
            raise ValueError("trajectory was integrated without keep_dense=True")
        out = self.dense(np.asarray(xi, dtype=float))
        return out[0], out[1]

    def to_csv(self, path) -> None:
        """Write samples as CSV `xi,u,w,E` with 17 significant digits."""
        E = self.energy()
        with open(path, "w", newline="\n") as fh:
            fh.write("xi,u,w,E\n")
            for row in zip(self.xi, self.u, self.w, E):
                fh.write(",".join(f"{v:.17g}" for v in row) + "\n")


def _fires(g_prev: float, g_new: float, direction: str) -> bool:
    # exact zero at the previous sample is treated as "no crossing yet"
    if g_prev == 0.0:
        return False
    if g_prev < 0.0 <= g_new:
        return direction in ("any", "rising")
    if g_prev > 0.0 >= g_new:
        return direction in ("any", "falling")
    return False


def _locate_event(gfun, dense, t_lo: float, t_hi: float, g_lo: float) -> float:
    """Bisect the event function on the dense output to |dxi| <= 1e-12."""
    tol = max(1e-12, 8.0 * np.finfo(float).eps * max(abs(t_lo), abs(t_hi)))
    lo, hi = t_lo, t_hi
    sign_lo = g_lo > 0.0
    for _ in range(200):
        if abs(hi - lo) <= tol:
            break
        mid = 0.5 * (lo + hi)
        g_mid = gfun(mid, dense(mid))
        if g_mid == 0.0:
            return mid
        if (g_mid > 0.0) == sign_lo:
            lo = mid
        else:
            hi = mid
    return hi


def integrate(
    seed: PhaseState,
    params: ModelParams,
    direction: str = "forward",
    events: Sequence[EventSpec] = (),
    *,
    smooth: bool = True,
    max_span: float = 1e4,
    max_steps: int = 1_000_000,
    rtol: float = 1e-10,
    atol: float = 1e-10,
    first_step: float = 1e-4,
    max_step: float = 0.1,
    sample_step: float | None = None,
    keep_dense: bool = False,
) -> Trajectory:
    """Adaptive embedded Runge-Kutta integration with event termination.

    Steps the phase-plane field from `seed` forward or backward in xi until
    the first event fires, the xi span exceeds max_span, or max_steps is hit.
    Events are localized on the continuous dense output by bisection down to
    |dxi| <= 1e-12.  With sample_step set, samples are emitted on the uniform
    lattice seed.xi + k*sample_step instead of at the accepted steps.
    """
    if direction not in ("forward", "backward"):
        raise ValueError(f"direction must be forward or backward: got {direction}")
    if max_span <= 0.0 or max_steps <= 0:
        raise ValueError("need a positive stopping criterion (max_span, max_steps)")
    a, c = params.alpha, params.c
    if smooth:
        def fun(xi, y):
            u, w = y
            return np.array((w, -c * w - (u - a) * (1.0 - u)))
    else:
        def fun(xi, y):
            u, w = y
            r = (u - a) * (1.0 - u) if u > 0.0 else 0.0
            return np.array((w, -c * w - r))

    sgn = 1.0 if direction == "forward" else -1.0
    t0 = seed.xi
    solver = RK45(fun, t0, np.array((seed.u, seed.w)), t0 + sgn * max_span,
                  rtol=rtol, atol=atol, first_step=first_step, max_step=max_step)

    gfuns = [ev.function() for ev in events]
    g_prev = [g(t0, solver.y) for g in gfuns]

    xs: list[float] = [t0]
    us: list[float] = [seed.u]
    ws: list[float] = [seed.w]
    pieces = []  # dense outputs, for OdeSolution
    breakpoints = [t0]
    next_uniform = t0 + sgn * sample_step if sample_step else None

    termination = "max-steps"
    fired: EventSpec | None = None
    fired_state: PhaseState | None = None
    n_steps = 0

    def emit_uniform(dense, limit):
        nonlocal next_uniform
        while next_uniform is not None and sgn * (limit - next_uniform) >= 0.0:
            y = dense(next_uniform)
            xs.append(next_uniform)
            us.append(float(y[0]))
            ws.append(float(y[1]))
            next_uniform += sgn * sample_step

    while n_steps < max_steps:
        if solver.status == "finished":
            termination = "max-span"
            break
        t_prev = solver.t
        msg = solver.step()
        if solver.status == "failed":
            raise StepUnderflowError(
                f"integrator step failed at xi={solver.t:.6g}: {msg}",
                PhaseState(xi=float(xs[-1]), u=float(us[-1]), w=float(ws[-1])),
            )
        n_steps += 1
        t_new = solver.t
        y_new = solver.y
        dense = None
        if keep_dense or sample_step:
            dense = solver.dense_output()
            if keep_dense:
                pieces.append(dense)
                breakpoints.append(t_new)

        # earliest event in this step, if any
        best_t = None
        best_i = -1
        for i, (g, ev) in enumerate(zip(gfuns, events)):
            g_new = g(t_new, y_new)
            if _fires(g_prev[i], g_new, ev.direction):
                if dense is None:
                    dense = solver.dense_output()
                t_ev = _locate_event(g, dense, t_prev, t_new, g_prev[i])
                if best_t is None or sgn * (t_ev - best_t) < 0.0:
                    best_t, best_i = t_ev, i
            g_prev[i] = g_new

        if best_t is not None:
            y_ev = dense(best_t)
            if sample_step:
                emit_uniform(dense, best_t)
            fired = events[best_i]
            fired_state = PhaseState(xi=float(best_t), u=float(y_ev[0]), w=float(y_ev[1]))
            if sgn * (best_t - xs[-1]) > 0.0:
                xs.append(float(best_t))
                us.append(float(y_ev[0]))
                ws.append(float(y_ev[1]))
            else:  # event localized within round-off of the last sample
                xs[-1], us[-1], ws[-1] = float(best_t), float(y_ev[0]), float(y_ev[1])
            termination = "event"
            break

        if sample_step:
            emit_uniform(dense, t_new)
        else:
            xs.append(float(t_new))
            us.append(float(y_new[0]))
            ws.append(float(y_new[1]))

    sol = None
    if keep_dense and pieces:
        sol = OdeSolution(breakpoints, pieces)

    return Trajectory(
        params=params,
        direction=direction,
        xi=np.asarray(xs, dtype=float),
        u=np.asarray(us, dtype=float),
        w=np.asarray(ws, dtype=float),
        termination=termination,
        event=fired,
        event_state=fired_state,
        n_steps=n_steps,
        dense=sol,
    )


def detect_touches(traj: Trajectory, level: float = 0.0, tol: float = 1e-12) -> list[int]:
    """Indices where w grazes a level without crossing it.

    A touch is a sample with |w - level| < tol whose neighbours show a sign
    change of dw, i.e. a double root of w - level.  Distinguishes tangency
    from transversal crossings when counting oscillations.
    """
    idx = []
    w = traj.w
    a, c = traj.params.alpha, traj.params.c
    for i in range(1, len(w) - 1):
        if abs(w[i] - level) < tol:
            dw_l = -c * w[i - 1] - (traj.u[i - 1] - a) * (1.0 - traj.u[i - 1])
            dw_r = -c * w[i + 1] - (traj.u[i + 1] - a) * (1.0 - traj.u[i + 1])
            if dw_l * dw_r < 0.0:
                idx.append(i)
    return idx
