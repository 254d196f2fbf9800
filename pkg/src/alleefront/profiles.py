"""Sampled traveling-wave and stationary profiles with exact zero tails.

Profiles are built by integrating the smooth phase-plane field along saddle
manifolds or from the origin, then gluing the trivial state u = 0 across free
boundaries.  Gluing happens where the orbit reaches (0, 0), so the composite
profile is C^1; the second derivative jumps there because the cutoff reaction
jumps by alpha.  All profiles are sampled on a uniform xi lattice whose step
is the `sampling` argument, with free boundaries anchored at xi = 0 (and at
the plateau end where applicable).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from .phase import EventSpec, ModelParams, PhaseState, energy, integrate, manifold_seed, reaction
from .shooting import (ALPHA_BISTABLE_ZERO, WaveClass, bistable_speed, classify,
                       kpp_min_speed, pushed_min_speed)

__all__ = [
    "WaveProfile",
    "NoWaveError",
    "bistable_profile",
    "plateau_profile",
    "monostable_profile",
    "pushed_profile",
    "stationary_profile",
    "orbit_period",
    "orbit_loop_period",
    "reflect",
    "residual",
]

_CONV_RADIUS = 1e-8


class NoWaveError(ValueError):
    """Requested profile does not exist in this parameter regime."""

    def __init__(self, message: str, classification: WaveClass | None = None):
        super().__init__(message)
        self.classification = classification


@dataclass(frozen=True)
class WaveProfile:
    """A sampled profile u(xi) on a uniform grid.

    free_boundaries lists the xi where u transitions to or from the exact-zero
    state; limits holds the left/right asymptotes (None when the tail is an
    exact zero segment rather than an asymptote).  u0 is the u-axis anchor of
    periodic orbits; plateau_length the length of an interior zero segment.
    """

    kind: str
    alpha: float
    speed: float
    xi: np.ndarray
    u: np.ndarray
    free_boundaries: tuple[float, ...]
    limits: tuple[float | None, float | None]
    grid_step: float
    plateau_length: float = 0.0
    u0: float | None = None

    def __post_init__(self):
        self.xi.flags.writeable = False
        self.u.flags.writeable = False

    def to_csv(self, path) -> None:
        """Write samples as CSV `xi,u` with 17 significant digits."""
        with open(path, "w", newline="\n") as fh:
            fh.write("xi,u\n")
            for x, v in zip(self.xi, self.u):
                fh.write(f"{x:.17g},{v:.17g}\n")

    def sidecar(self) -> dict:
        return {
            "kind": self.kind,
            "alpha": self.alpha,
            "speed": self.speed,
            "free_boundaries": list(self.free_boundaries),
            "limits": [self.limits[0], self.limits[1]],
            "plateau_length": self.plateau_length,
            "grid_step": self.grid_step,
            "u0": self.u0,
            "n_samples": int(self.xi.size),
        }


def _origin_hit_events() -> list[EventSpec]:
    # whichever of u = 0 / w = 0 fires first lies within the shooting
    # tolerance of the origin when c equals the bistable speed
    return [EventSpec.u_crosses(0.0, "any"), EventSpec.w_crosses(0.0, "any")]


def _left_piece(alpha: float, c_b: float, h: float):
    """The decreasing 1 -> 0 wave piece, sampled on ..., -2h, -h, 0.

    Returns (xi, u) with xi[-1] = 0 and u[-1] = 0 exactly.  For alpha <= 1/3
    the unstable manifold of (1, 0) at speed c_b reaches the origin forward in
    xi; for alpha > 1/3 the stable manifold at speed -c_b reaches it backward,
    and the piece is mirrored through the c -> -c, xi -> -xi symmetry.
    """
    if alpha <= ALPHA_BISTABLE_ZERO:
        params = ModelParams(alpha, c_b)
        traj = integrate(manifold_seed(params, "unstable-below"), params, "forward",
                         _origin_hit_events(), keep_dense=True, max_span=4000.0)
        if traj.termination != "event":
            raise NoWaveError(f"bistable piece failed to reach the origin: {traj.termination}")
        xi_hit = traj.event_state.xi
        span = xi_hit - traj.xi[0]
        n = int(math.floor(span / h))
        grid = xi_hit - h * np.arange(n, -1, -1)
        u, _ = traj.eval(grid)
    else:
        params = ModelParams(alpha, -c_b)  # mirrored wave moves at -c_b > 0
        traj = integrate(manifold_seed(params, "stable-above"), params, "backward",
                         _origin_hit_events(), keep_dense=True, max_span=4000.0)
        if traj.termination != "event":
            raise NoWaveError(f"bistable piece failed to reach the origin: {traj.termination}")
        xi_hit = traj.event_state.xi  # negative
        span = traj.xi[0] - xi_hit
        n = int(math.floor(span / h))
        grid = xi_hit + h * np.arange(n + 1)  # ascending in trajectory coordinates
        u, _ = traj.eval(grid)
        u = u[::-1]  # mirror xi -> -xi: decreasing piece ending at 0
    xi = -h * np.arange(n, -1, -1)
    u = np.maximum(u, 0.0)
    u[-1] = 0.0
    return xi, u


def _orbit_from_origin(alpha: float, c: float, h: float, *, max_span: float = 2e4):
    """Forward orbit from (0, 0) to the (alpha, 0) convergence radius.

    Returns (xi, u) on the lattice 0, h, 2h, ... with u[0] = 0 exactly.
    """
    params = ModelParams(alpha, c)
    traj = integrate(PhaseState(0.0, 0.0, 0.0), params, "forward",
                     [EventSpec.near_point(alpha, 0.0, _CONV_RADIUS)],
                     keep_dense=True, max_span=max_span)
    if traj.termination != "event":
        raise NoWaveError(f"orbit from the origin did not converge to (alpha, 0) "
                          f"within span {max_span:g} (c={c})")
    span = traj.event_state.xi
    n = int(math.floor(span / h))
    grid = h * np.arange(n + 1)
    u, _ = traj.eval(grid)
    u = np.maximum(u, 0.0)
    u[0] = 0.0
    return grid, u


def _zero_pad(h: float, length: float) -> int:
    return max(1, int(round(length / h)))


def bistable_profile(alpha: float, sampling: float = 1e-3, *, tol: float = 1e-10,
                     tail: float = 5.0) -> WaveProfile:
    """The monotone wave connecting 1 to the extinct state, free boundary at 0.

    The speed is the bistable speed of the threshold; u decreases from 1 and
    vanishes identically on xi >= 0.
    """
    cb = bistable_speed(alpha, tol).value
    xi_l, u_l = _left_piece(alpha, cb, sampling)
    n_pad = _zero_pad(sampling, tail)
    xi = np.concatenate([xi_l, sampling * np.arange(1, n_pad + 1)])
    u = np.concatenate([u_l, np.zeros(n_pad)])
    return WaveProfile(kind="bistable", alpha=alpha, speed=cb, xi=xi, u=u,
                       free_boundaries=(0.0,), limits=(1.0, None), grid_step=sampling)


def plateau_profile(alpha: float, L: float, sampling: float = 1e-3, *,
                    tol: float = 1e-10) -> WaveProfile:
    """Wave of speed c_* that vanishes on [0, L] and oscillates into alpha.

    Only the regime alpha < 1/3 admits these: the 1 -> 0 piece, an exact-zero
    plateau of length L (snapped to the grid), and the 0 -> alpha orbit glued
    C^1 at both free boundaries.  L = 0 gives the single-touch profile.
    """
    if not (0.0 < alpha < ALPHA_BISTABLE_ZERO):
        raise NoWaveError(f"plateau profiles require alpha < 1/3: got alpha={alpha}")
    if L < 0.0:
        raise ValueError(f"plateau length must be nonnegative: got {L}")
    cb = bistable_speed(alpha, tol).value
    xi_l, u_l = _left_piece(alpha, cb, sampling)
    n_gap = int(round(L / sampling))
    L_eff = n_gap * sampling
    xi_r, u_r = _orbit_from_origin(alpha, cb, sampling)
    xi = np.concatenate([xi_l, sampling * np.arange(1, n_gap + 1), L_eff + xi_r[1:]]) \
        if n_gap > 0 else np.concatenate([xi_l, xi_r[1:]])
    u = np.concatenate([u_l, np.zeros(n_gap), u_r[1:]]) if n_gap > 0 \
        else np.concatenate([u_l, u_r[1:]])
    fbs = (0.0, L_eff) if n_gap > 0 else (0.0,)
    return WaveProfile(kind="plateau", alpha=alpha, speed=cb, xi=xi, u=u,
                       free_boundaries=fbs, limits=(1.0, alpha), grid_step=sampling,
                       plateau_length=L_eff)


def monostable_profile(alpha: float, c: float, sampling: float = 1e-3, *,
                       tol: float = 1e-6) -> WaveProfile:
    """Strictly positive wave connecting 1 to alpha, anchored at u = (1+alpha)/2.

    Requires c strictly above the bistable speed when alpha < 1/3 (the wave at
    equality touches zero; see plateau_profile) and c > 0 otherwise.  Shape is
    monotone for c >= 2*sqrt(1-alpha) and oscillatory below.
    """
    wc = classify(alpha, c, "one-to-alpha", tol=tol)
    if not wc.exists or wc.shape == "touches-zero-nonunique":
        raise NoWaveError(f"no strictly positive 1-to-alpha wave at alpha={alpha}, c={c} "
                          f"(classified {wc.shape})", wc)
    params = ModelParams(alpha, c)
    traj = integrate(manifold_seed(params, "unstable-below"), params, "forward",
                     [EventSpec.near_point(alpha, 0.0, _CONV_RADIUS)],
                     keep_dense=True, max_span=2e4)
    if traj.termination != "event":
        raise NoWaveError(f"wave orbit did not converge to (alpha, 0): {traj.termination}")
    # anchor: first downward crossing of (1+alpha)/2
    level = 0.5 * (1.0 + alpha)
    below = np.flatnonzero(traj.u <= level)
    if below.size == 0:
        raise NoWaveError("orbit never crossed the anchor level; span too short")
    k = below[0]
    xi_anchor = brentq(lambda x: traj.eval(x)[0] - level, traj.xi[max(k - 1, 0)], traj.xi[k],
                       xtol=1e-13) if k > 0 else traj.xi[0]
    h = sampling
    n_left = int(math.floor((xi_anchor - traj.xi[0]) / h))
    n_right = int(math.floor((traj.xi[-1] - xi_anchor) / h))
    grid = xi_anchor + h * np.arange(-n_left, n_right + 1)
    u, _ = traj.eval(grid)
    return WaveProfile(kind="monostable-kpp", alpha=alpha, speed=c,
                       xi=h * np.arange(-n_left, n_right + 1), u=u,
                       free_boundaries=(), limits=(1.0, alpha), grid_step=h)


def pushed_profile(alpha: float, c: float, sampling: float = 1e-3, *,
                   tol: float = 1e-6, tail: float = 5.0) -> WaveProfile:
    """Wave vanishing on xi <= 0 and connecting to alpha as xi -> +infinity.

    Exists for c above the pushed existence threshold; monotone above the
    monotonicity threshold, with a single hump or oscillatory tail below.
    """
    wc = classify(alpha, c, "zero-to-alpha", tol=tol)
    if not wc.exists:
        cpp = pushed_min_speed(alpha).value
        raise NoWaveError(f"no 0-to-alpha wave at alpha={alpha}, c={c}: requires "
                          f"c > {cpp:.9g}", wc)
    xi_r, u_r = _orbit_from_origin(alpha, c, sampling)
    n_pad = _zero_pad(sampling, tail)
    xi = np.concatenate([-sampling * np.arange(n_pad, 0, -1), xi_r])
    u = np.concatenate([np.zeros(n_pad), u_r])
    return WaveProfile(kind="pushed", alpha=alpha, speed=c, xi=xi, u=u,
                       free_boundaries=(0.0,), limits=(None, alpha), grid_step=sampling)


def _half_loop(alpha: float, seed: PhaseState, stop: EventSpec, *, max_span=2000.0):
    """c = 0 orbit from a u-axis point to the next turning point, dense."""
    params = ModelParams(alpha, 0.0)
    traj = integrate(seed, params, "forward", [stop], keep_dense=True, max_span=max_span)
    if traj.termination != "event":
        raise NoWaveError(f"half orbit did not reach its turning point: {traj.termination}")
    return traj


def stationary_profile(alpha: float, kind: str, sampling: float = 1e-3, *,
                       L: float = 0.0, u0: float | None = None,
                       tail: float = 5.0, tol: float = 1e-10) -> WaveProfile:
    """Stationary (c = 0) solutions: bump, dip, glued pair, or periodic orbit.

    bump (alpha < 1/3): compactly supported hump on the E = E(0,0) level set,
    maximum between alpha and 1.  dip (alpha > 1/3): the homoclinic orbit of
    (1, 0) dipping to (3*alpha-1)/2.  glued (alpha = 1/3): the touching
    profile joined with its reflection across a zero segment of length L.
    periodic: one period of the closed orbit through (u0, 0).
    """
    h = sampling
    if kind == "bump":
        if not (0.0 < alpha < ALPHA_BISTABLE_ZERO):
            raise NoWaveError(f"stationary bump requires alpha < 1/3: got {alpha}")
        traj = _half_loop(alpha, PhaseState(0.0, 0.0, 0.0), EventSpec.w_crosses(0.0, "falling"))
        xi_h = traj.event_state.xi  # half support width; maximum attained here
        m = int(math.ceil(xi_h / h))
        n_pad = _zero_pad(h, tail)
        k = np.arange(-(m + n_pad), m + n_pad + 1)
        xi = h * k
        u = np.zeros_like(xi)
        inside = np.abs(xi) < xi_h
        uu, _ = traj.eval(xi_h - np.abs(xi[inside]))  # even about the maximum
        u[inside] = np.maximum(uu, 0.0)
        return WaveProfile(kind="stationary-bump", alpha=alpha, speed=0.0, xi=xi, u=u,
                           free_boundaries=(-xi_h, xi_h), limits=(None, None), grid_step=h)
    if kind == "dip":
        if not (ALPHA_BISTABLE_ZERO < alpha < 1.0):
            raise NoWaveError(f"stationary dip requires alpha > 1/3: got {alpha}")
        params = ModelParams(alpha, 0.0)
        traj = integrate(manifold_seed(params, "unstable-below"), params, "forward",
                         [EventSpec.w_crosses(0.0, "rising")], keep_dense=True,
                         max_span=2000.0)
        if traj.termination != "event":
            raise NoWaveError(f"homoclinic orbit failed: {traj.termination}")
        xi_min = traj.event_state.xi  # minimum of the dip
        span = xi_min - traj.xi[0]
        m = int(math.floor(span / h))
        k = np.arange(-m, m + 1)
        uu, _ = traj.eval(xi_min - h * np.abs(k))  # even about the minimum
        return WaveProfile(kind="stationary-dip", alpha=alpha, speed=0.0, xi=h * k, u=uu,
                           free_boundaries=(), limits=(1.0, 1.0), grid_step=h)
    if kind == "glued":
        if alpha != ALPHA_BISTABLE_ZERO:
            raise NoWaveError(f"glued stationary profiles require alpha = 1/3: got {alpha}")
        if L < 0.0:
            raise ValueError(f"gap length must be nonnegative: got {L}")
        xi_l, u_l = _left_piece(alpha, 0.0, h)
        n_gap = int(round(L / h))
        L_eff = n_gap * h
        xi_r = L_eff + h * np.arange(1, u_l.size)
        u_r = u_l[::-1][1:]  # reflection rising 0 -> 1
        if n_gap > 0:
            xi = np.concatenate([xi_l, h * np.arange(1, n_gap + 1), xi_r])
            u = np.concatenate([u_l, np.zeros(n_gap), u_r])
            fbs = (0.0, L_eff)
        else:
            xi = np.concatenate([xi_l, xi_r])
            u = np.concatenate([u_l, u_r])
            fbs = (0.0,)
        return WaveProfile(kind="stationary-glued", alpha=alpha, speed=0.0, xi=xi, u=u,
                           free_boundaries=fbs, limits=(1.0, 1.0), grid_step=h,
                           plateau_length=L_eff)
    if kind == "periodic":
        lo = (3.0 * alpha - 1.0) / 2.0
        if u0 is None or not (lo < u0 < alpha):
            raise NoWaveError(f"periodic orbits require u0 in ({lo:.6g}, {alpha}): got {u0}")
        traj = _half_loop(alpha, PhaseState(0.0, u0, 0.0), EventSpec.w_crosses(0.0, "falling"))
        T_half = traj.event_state.xi
        n = int(math.floor(2.0 * T_half / h))
        grid = h * np.arange(n + 1)
        fold = np.where(grid <= T_half, grid, 2.0 * T_half - grid)  # even about T_half
        uu, _ = traj.eval(fold)
        return WaveProfile(kind="stationary-periodic", alpha=alpha, speed=0.0,
                           xi=grid, u=uu, free_boundaries=(), limits=(None, None),
                           grid_step=h, u0=u0)
    raise ValueError(f"unknown stationary kind {kind!r}")


def _turning_points(alpha: float, u0: float):
    """Conjugate turning point u1 in (alpha, 1) and the third cubic root u2."""
    E0 = energy(u0, 0.0, alpha)
    u1 = brentq(lambda u: energy(u, 0.0, alpha) - E0, alpha + 1e-15, 1.0 - 1e-15,
                xtol=1e-12, rtol=8.9e-16)
    # E(u,0) - E0 = -(1/3)(u-u0)(u-u1)(u-u2) with root sum 3(1+alpha)/2
    u2 = 3.0 * (1.0 + alpha) / 2.0 - u0 - u1
    return u1, u2


def orbit_period(alpha: float, u0: float, *, cross_check: bool = False) -> float:
    """Period of the closed c = 0 orbit through (u0, 0).

    The period is twice the quadrature of du / sqrt(2 (F(u) - F(u0))) between
    the turning points u0 < u1, where F is the potential.  The substitution
    u = m + A sin(theta) removes both inverse-square-root singularities,
    leaving the smooth integrand 1 / sqrt((2/3)(u2 - u)) with u2 the third
    root of the cubic.  With cross_check=True the quadrature is validated
    against the xi span of one integrated loop to 1e-6.
    """
    lo = (3.0 * alpha - 1.0) / 2.0
    if not (lo < u0 < alpha):
        raise ValueError(f"u0 must lie in ({lo:.6g}, {alpha}): got {u0}")
    u1, u2 = _turning_points(alpha, u0)
    m, A = 0.5 * (u0 + u1), 0.5 * (u1 - u0)
    integrand = lambda th: 1.0 / math.sqrt((2.0 / 3.0) * (u2 - m - A * math.sin(th)))
    T, _ = quad(integrand, -math.pi / 2.0, math.pi / 2.0, epsabs=1e-13, epsrel=1e-13)
    period = 2.0 * T
    if cross_check:
        loop = orbit_loop_period(alpha, u0)
        if abs(loop - period) > 1e-6:
            raise RuntimeError(f"period quadrature {period!r} disagrees with the "
                               f"integrated loop {loop!r}")
    return period


def orbit_loop_period(alpha: float, u0: float) -> float:
    """Period measured as the xi span of one integrated half loop, doubled."""
    lo = (3.0 * alpha - 1.0) / 2.0
    if not (lo < u0 < alpha):
        raise ValueError(f"u0 must lie in ({lo:.6g}, {alpha}): got {u0}")
    traj = _half_loop(alpha, PhaseState(0.0, u0, 0.0), EventSpec.w_crosses(0.0, "falling"))
    return 2.0 * traj.event_state.xi


def reflect(profile: WaveProfile) -> WaveProfile:
    """The mirrored profile: xi -> -xi with the speed negated."""
    return replace(
        profile,
        speed=-profile.speed,
        xi=np.ascontiguousarray(-profile.xi[::-1]),
        u=np.ascontiguousarray(profile.u[::-1]),
        free_boundaries=tuple(sorted(-b for b in profile.free_boundaries)),
        limits=(profile.limits[1], profile.limits[0]),
    )


def residual(profile: WaveProfile, params: ModelParams | None = None) -> float:
    """Max absolute residual of u'' + c u' + reaction(u) on interior samples.

    Central second differences on the uniform grid; the two samples adjacent
    to each free boundary are excluded because the second derivative jumps
    there by construction.
    """
    if profile.xi.size < 8:
        raise ValueError(f"grid too coarse for a residual: {profile.xi.size} samples")
    if params is None:
        params = ModelParams(profile.alpha, profile.speed)
    h = profile.grid_step
    steps = np.diff(profile.xi)
    if not np.allclose(steps, h, rtol=1e-9, atol=1e-12):
        raise ValueError("residual requires a uniform sample grid")
    u = profile.u
    upp = (u[2:] - 2.0 * u[1:-1] + u[:-2]) / h ** 2
    up = (u[2:] - u[:-2]) / (2.0 * h)
    r = upp + params.c * up + reaction(u[1:-1], params.alpha)
    keep = np.ones(r.size, dtype=bool)
    xin = profile.xi[1:-1]
    for b in profile.free_boundaries:
        keep &= np.abs(xin - b) > 1.5 * h
    if not keep.any():
        return 0.0
    return float(np.max(np.abs(r[keep])))
