"""Command-line interface: speeds, wave, stationary, pde, sweep, verify.

Configuration comes from a JSON document (--config) or from flags; flags
override config fields.  Every JSON artifact embeds the fully resolved
configuration so runs can be reproduced from their outputs alone, and
repeated invocations with identical inputs produce byte-identical files.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import pde, profiles, shooting, verify
from .serialize import write_csv, write_json

__all__ = ["Command", "parse_config", "execute", "emit", "main"]

_VERBS = ("speeds", "wave", "stationary", "pde", "sweep", "verify")

_WAVE_KINDS = ("bistable", "monostable", "plateau", "pushed")
_STATIONARY_KINDS = ("bump", "dip", "glued", "periodic")
_SWEEP_QUANTITIES = ("c_bistable", "c_pushed_min", "c_monotone_min",
                     "bump_max", "dip_min", "front_speed")


class ConfigError(ValueError):
    """Configuration rejected; the message names the field and its range."""


@dataclass
class Command:
    """A validated invocation: verb, verb-specific options, output target."""

    verb: str
    options: dict = field(default_factory=dict)
    out: str | None = None
    fmt: str = "csv"

    def resolved(self) -> dict:
        cfg = {"verb": self.verb, **self.options}
        if self.out is not None:
            cfg["out"] = self.out
        cfg["format"] = self.fmt
        return cfg


def _need(options: dict, key: str, verb: str):
    if key not in options or options[key] is None:
        raise ConfigError(f"{verb}: missing required option '{key}'")
    return options[key]


def _alpha_in_range(alpha, where: str) -> float:
    try:
        alpha = float(alpha)
    except (TypeError, ValueError):
        raise ConfigError(f"{where}: alpha must be a number, got {alpha!r}")
    if not (0.0 < alpha < 1.0):
        raise ConfigError(f"{where}: alpha must lie in the open interval (0, 1): got {alpha:g}")
    return alpha


def _positive(value, name: str, where: str) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{where}: {name} must be a number, got {value!r}")
    if not value > 0.0:
        raise ConfigError(f"{where}: {name} must be positive: got {value:g}")
    return value


def _validate(verb: str, options: dict) -> dict:
    """Range-check options for a verb; returns a normalized copy."""
    opts = dict(options)
    if verb == "speeds":
        opts["alpha"] = _alpha_in_range(_need(opts, "alpha", verb), verb)
        opts["tol"] = _positive(opts.get("tol", 1e-8), "tol", verb)
        opts["monotone_tol"] = _positive(opts.get("monotone_tol", 1e-3), "monotone_tol", verb)
    elif verb == "wave":
        opts["alpha"] = _alpha_in_range(_need(opts, "alpha", verb), verb)
        kind = _need(opts, "kind", verb)
        if kind not in _WAVE_KINDS:
            raise ConfigError(f"wave: kind must be one of {_WAVE_KINDS}: got {kind!r}")
        if kind in ("monostable", "pushed"):
            c = _need(opts, "c", verb)
            try:
                opts["c"] = float(c)
            except (TypeError, ValueError):
                raise ConfigError(f"wave: c must be a number, got {c!r}")
        if kind == "plateau":
            L = float(opts.get("length", 0.0))
            if L < 0.0:
                raise ConfigError(f"wave: plateau length must be >= 0: got {L:g}")
            opts["length"] = L
        opts["step"] = _positive(opts.get("step", 1e-3), "step", verb)
    elif verb == "stationary":
        opts["alpha"] = _alpha_in_range(_need(opts, "alpha", verb), verb)
        kind = _need(opts, "kind", verb)
        if kind not in _STATIONARY_KINDS:
            raise ConfigError(f"stationary: kind must be one of {_STATIONARY_KINDS}: got {kind!r}")
        if kind == "glued":
            L = float(opts.get("length", 0.0))
            if L < 0.0:
                raise ConfigError(f"stationary: gap length must be >= 0: got {L:g}")
            opts["length"] = L
        if kind == "periodic":
            u0 = _need(opts, "u0", verb)
            lo = (3.0 * opts["alpha"] - 1.0) / 2.0
            u0 = float(u0)
            if not (lo < u0 < opts["alpha"]):
                raise ConfigError(f"stationary: u0 must lie in ({lo:g}, {opts['alpha']:g}): got {u0:g}")
            opts["u0"] = u0
        opts["step"] = _positive(opts.get("step", 1e-3), "step", verb)
    elif verb == "pde":
        opts["alpha"] = _alpha_in_range(_need(opts, "alpha", verb), verb)
        grid = _need(opts, "grid", verb)
        for key in ("x_min", "x_max", "dx"):
            if key not in grid:
                raise ConfigError(f"pde: grid.{key} is required")
        if grid["x_max"] <= grid["x_min"]:
            raise ConfigError(f"pde: grid.x_max must exceed grid.x_min")
        _positive(grid["dx"], "grid.dx", verb)
        opts["T"] = _positive(_need(opts, "T", verb), "T", verb)
        dt_factor = float(opts.get("dt_factor", pde.STABILITY_FACTOR))
        if not (0.0 < dt_factor <= pde.STABILITY_FACTOR):
            raise ConfigError(f"pde: dt_factor must lie in (0, {pde.STABILITY_FACTOR}]: got {dt_factor:g}")
        opts["dt_factor"] = dt_factor
        if "probes" not in opts or opts["probes"] is None:
            opts["probes"] = opts["T"] / 200.0
        initial = _need(opts, "initial", verb)
        if "kind" not in initial:
            raise ConfigError("pde: initial.kind is required")
        if "track" in opts and opts["track"] is not None:
            if "level" not in opts["track"]:
                raise ConfigError("pde: track.level is required when track is given")
            _positive(opts["track"]["level"], "track.level", verb)
    elif verb == "sweep":
        parameter = opts.get("parameter", "alpha")
        if parameter not in ("alpha", "c"):
            raise ConfigError(f"sweep: parameter must be alpha or c: got {parameter!r}")
        quantity = _need(opts, "quantity", verb)
        if quantity not in _SWEEP_QUANTITIES:
            raise ConfigError(f"sweep: quantity must be one of {_SWEEP_QUANTITIES}: got {quantity!r}")
        if parameter != "alpha":
            raise ConfigError(f"sweep: quantity '{quantity}' sweeps alpha, not c")
        lo, hi = float(_need(opts, "lo", verb)), float(_need(opts, "hi", verb))
        if not lo < hi:
            raise ConfigError(f"sweep: need lo < hi: got [{lo:g}, {hi:g}]")
        count = int(_need(opts, "count", verb))
        if count < 2:
            raise ConfigError(f"sweep: count must be >= 2: got {count}")
        domain = {
            "c_bistable": (0.0, 1.0), "c_pushed_min": (0.0, 1.0),
            "c_monotone_min": (0.0, 1.0), "front_speed": (0.0, 1.0),
            "bump_max": (0.0, 1.0 / 3.0), "dip_min": (1.0 / 3.0, 1.0),
        }[quantity]
        if lo <= domain[0] or hi >= domain[1]:
            raise ConfigError(f"sweep: {quantity} admits alpha in the open interval "
                              f"({domain[0]:g}, {domain[1]:g}): got [{lo:g}, {hi:g}]")
        opts.update(parameter=parameter, lo=lo, hi=hi, count=count, quantity=quantity)
        opts["tol"] = _positive(opts.get("tol", 1e-6), "tol", verb)
    elif verb == "verify":
        preset = opts.get("preset", "desk")
        if preset not in ("desk", "strict"):
            raise ConfigError(f"verify: preset must be desk or strict: got {preset!r}")
        opts["preset"] = preset
        if opts.get("only") is not None and not isinstance(opts["only"], (list, tuple)):
            raise ConfigError("verify: 'only' must be a list of check names")
    else:
        raise ConfigError(f"unknown verb {verb!r}; expected one of {_VERBS}")
    return opts


def parse_config(text: str) -> Command:
    """Validate a JSON configuration document into a Command."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON configuration: {exc}")
    if not isinstance(raw, dict):
        raise ConfigError("configuration must be a JSON object")
    verb = raw.pop("verb", None)
    if verb not in _VERBS:
        raise ConfigError(f"config: verb must be one of {_VERBS}: got {verb!r}")
    out = raw.pop("out", None)
    fmt = raw.pop("format", "csv")
    if fmt not in ("csv", "json"):
        raise ConfigError(f"config: format must be csv or json: got {fmt!r}")
    return Command(verb=verb, options=_validate(verb, raw), out=out, fmt=fmt)


def _build_profile(options: dict) -> profiles.WaveProfile:
    alpha = options["alpha"]
    kind = options["kind"]
    h = options.get("step", 1e-3)
    if kind == "bistable":
        return profiles.bistable_profile(alpha, h)
    if kind == "plateau":
        return profiles.plateau_profile(alpha, options.get("length", 0.0), h)
    if kind == "monostable":
        return profiles.monostable_profile(alpha, options["c"], h)
    if kind == "pushed":
        return profiles.pushed_profile(alpha, options["c"], h)
    if kind == "bump":
        return profiles.stationary_profile(alpha, "bump", h)
    if kind == "dip":
        return profiles.stationary_profile(alpha, "dip", h)
    if kind == "glued":
        return profiles.stationary_profile(alpha, "glued", h, L=options.get("length", 0.0))
    if kind == "periodic":
        return profiles.stationary_profile(alpha, "periodic", h, u0=options["u0"])
    raise ConfigError(f"unknown profile kind {kind!r}")


def _datum_spec(initial: dict, grid: pde.Grid1D, alpha: float) -> dict:
    """Resolve an initial spec, building nested wave profiles if requested."""
    spec = dict(initial)
    if spec.get("kind") == "profile" and "wave" in spec:
        wave = dict(spec.pop("wave"))
        wave.setdefault("alpha", alpha)
        wave.setdefault("step", min(1e-2, grid.dx / 4.0))
        wave = _validate("stationary" if wave.get("kind") in _STATIONARY_KINDS else "wave", wave)
        spec["profile"] = _build_profile(wave)
    return spec


def emit(artifact, fmt: str, path) -> list[Path]:
    """Write an artifact deterministically; returns the files written."""
    path = Path(path)
    written = []
    if isinstance(artifact, dict):
        written.append(write_json(path, artifact))
    elif isinstance(artifact, profiles.WaveProfile):
        meta = artifact.sidecar()
        if fmt == "json":
            meta["xi"] = artifact.xi
            meta["u"] = artifact.u
            written.append(write_json(path.with_suffix(".json"), meta))
        else:
            artifact.to_csv(path.with_suffix(".csv"))
            written.append(path.with_suffix(".csv"))
            written.append(write_json(path.with_suffix(".json"), meta))
    elif isinstance(artifact, tuple) and len(artifact) == 2:
        header, columns = artifact
        written.append(write_csv(path, header, columns))
    else:
        raise TypeError(f"cannot emit artifact of type {type(artifact).__name__}")
    return written


def _sweep_value(quantity: str, alpha: float, tol: float) -> float:
    if quantity == "c_bistable":
        return shooting.bistable_speed(alpha, tol).value
    if quantity == "c_pushed_min":
        return shooting.pushed_min_speed(alpha, tol).value
    if quantity == "c_monotone_min":
        return shooting.monotone_min_speed(alpha, max(tol, 1e-4)).value
    if quantity == "bump_max":
        return float(profiles.stationary_profile(alpha, "bump", 1e-3).u.max())
    if quantity == "dip_min":
        return float(profiles.stationary_profile(alpha, "dip", 1e-3).u.min())
    if quantity == "front_speed":
        grid = pde.Grid1D.from_spacing(-150.0, 150.0, 0.1)
        state = pde.PdeState(grid, pde.initial_datum(
            {"kind": "tanh-front", "left": 1.0, "right": 0.0, "steepness": 0.1}, grid))
        result = pde.run(state, alpha, 200.0, 1.0)
        return pde.front_track(result, 0.5).fitted_speed
    raise ConfigError(f"unknown sweep quantity {quantity!r}")


def execute(command: Command) -> dict:
    """Run a validated command; returns {'files': [...], 'data': ...}."""
    opts = command.options
    cfg = command.resolved()
    if command.verb == "speeds":
        cs = shooting.critical_speeds(opts["alpha"], opts["tol"], opts["monotone_tol"])
        payload = cs.as_dict()
        payload["config"] = cfg
        files = emit(payload, "json", command.out) if command.out else []
        return {"files": files, "data": payload}

    if command.verb in ("wave", "stationary"):
        prof = _build_profile(opts)
        out = command.out or f"{command.verb}_{opts['kind']}"
        meta = prof.sidecar()
        meta["config"] = cfg
        if command.fmt == "json":
            meta["xi"] = prof.xi
            meta["u"] = prof.u
            files = [write_json(Path(out).with_suffix(".json"), meta)]
        else:
            base = Path(out)
            prof.to_csv(base.with_suffix(".csv"))
            files = [base.with_suffix(".csv"), write_json(base.with_suffix(".json"), meta)]
        return {"files": files, "data": prof}

    if command.verb == "pde":
        grid = pde.Grid1D.from_spacing(opts["grid"]["x_min"], opts["grid"]["x_max"],
                                       opts["grid"]["dx"])
        datum = pde.initial_datum(_datum_spec(opts["initial"], grid, opts["alpha"]), grid)
        state = pde.PdeState(grid, datum)
        probes = opts["probes"]
        if isinstance(probes, dict):
            probes = probes.get("step", opts["T"] / 200.0)
        result = pde.run(state, opts["alpha"], opts["T"], probes,
                         dt_factor=opts["dt_factor"], config=cfg)
        outdir = Path(command.out or "pde_out")
        outdir.mkdir(parents=True, exist_ok=True)
        files = []
        for k, t in enumerate(result.times):
            files.append(write_csv(outdir / f"snapshot_{k:04d}.csv", ["x", "u"],
                                   [grid.x, result.snapshots[k]]))
        summary = {
            "alpha": opts["alpha"],
            "times": result.times,
            "extinction_time": result.extinction_time,
            "clamped_mass_final": float(result.clamped_mass[-1]),
            "support_final": [list(iv) for iv in result.support[-1]],
            "config": cfg,
        }
        track = None
        if opts.get("track"):
            track = pde.front_track(result, opts["track"]["level"])
            files.append(write_csv(outdir / "track.csv", ["t", "x_front"],
                                   [track.times, track.positions]))
            summary["fitted_speed"] = track.fitted_speed
            summary["track_window"] = list(track.window)
            summary["track_complete"] = track.complete
        files.append(write_json(outdir / "summary.json", summary))
        return {"files": files, "data": result, "track": track}

    if command.verb == "sweep":
        grid_vals = np.linspace(opts["lo"], opts["hi"], opts["count"])
        values = [_sweep_value(opts["quantity"], float(a), opts["tol"]) for a in grid_vals]
        out = Path(command.out or "sweep.csv")
        if command.fmt == "json":
            payload = {"parameter": opts["parameter"], "values": grid_vals,
                       opts["quantity"]: values, "config": cfg}
            files = [write_json(out.with_suffix(".json"), payload)]
        else:
            files = [write_csv(out, [opts["parameter"], opts["quantity"]],
                               [grid_vals, values]),
                     write_json(out.with_suffix(".json"),
                                {"config": cfg})]
        return {"files": files, "data": list(zip(grid_vals, values))}

    if command.verb == "verify":
        results = verify.run_checks(preset=opts.get("preset", "desk"),
                                    names=opts.get("only"))
        payload = verify.report_dict(results)
        payload["config"] = cfg
        files = emit(payload, "json", command.out) if command.out else []
        return {"files": files, "data": results,
                "passed": all(r.passed for r in results)}

    raise ConfigError(f"unknown verb {command.verb!r}")


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="alleefront",
        description="Traveling waves, stationary states and PDE fronts of the "
                    "cutoff-Allee reaction-diffusion model.")
    sub = ap.add_subparsers(dest="verb", required=True)

    def common(p):
        p.add_argument("--config", type=str, help="JSON configuration file")
        p.add_argument("--out", type=str, help="output path (file or directory)")
        p.add_argument("--format", dest="fmt", choices=("csv", "json"), default=None)

    p = sub.add_parser("speeds", help="critical wave speeds at a threshold")
    p.add_argument("--alpha", type=float)
    p.add_argument("--tol", type=float)
    p.add_argument("--monotone-tol", dest="monotone_tol", type=float)
    common(p)

    p = sub.add_parser("wave", help="traveling-wave profile")
    p.add_argument("--alpha", type=float)
    p.add_argument("--kind", choices=_WAVE_KINDS)
    p.add_argument("--c", type=float)
    p.add_argument("--length", type=float, help="plateau length (kind=plateau)")
    p.add_argument("--step", type=float, help="output grid step")
    common(p)

    p = sub.add_parser("stationary", help="stationary (c = 0) profile")
    p.add_argument("--alpha", type=float)
    p.add_argument("--kind", choices=_STATIONARY_KINDS)
    p.add_argument("--length", type=float, help="zero-gap length (kind=glued)")
    p.add_argument("--u0", type=float, help="orbit anchor (kind=periodic)")
    p.add_argument("--step", type=float)
    common(p)

    p = sub.add_parser("pde", help="direct finite-difference simulation")
    p.add_argument("--alpha", type=float)
    p.add_argument("--x-min", dest="x_min", type=float)
    p.add_argument("--x-max", dest="x_max", type=float)
    p.add_argument("--dx", type=float)
    p.add_argument("--T", type=float)
    p.add_argument("--dt-factor", dest="dt_factor", type=float)
    p.add_argument("--probe-step", dest="probe_step", type=float)
    p.add_argument("--initial-kind", dest="initial_kind", type=str)
    p.add_argument("--track-level", dest="track_level", type=float)
    common(p)

    p = sub.add_parser("sweep", help="tabulate a quantity over a parameter grid")
    p.add_argument("--parameter", choices=("alpha", "c"))
    p.add_argument("--lo", type=float)
    p.add_argument("--hi", type=float)
    p.add_argument("--count", type=int)
    p.add_argument("--quantity", choices=_SWEEP_QUANTITIES)
    p.add_argument("--tol", type=float)
    common(p)

    p = sub.add_parser("verify", help="run the acceptance checks")
    p.add_argument("--strict", action="store_true", help="finer grids and tolerances")
    p.add_argument("--only", type=str, help="comma-separated check names")
    common(p)
    return ap


def _merge_cli(verb: str, ns: argparse.Namespace) -> Command:
    """Overlay explicit flags onto an optional --config document."""
    base: dict = {}
    out = None
    fmt = None
    if ns.config:
        cmd = parse_config(Path(ns.config).read_text())
        if cmd.verb != verb:
            raise ConfigError(f"config verb {cmd.verb!r} does not match subcommand {verb!r}")
        base = dict(cmd.options)
        out, fmt = cmd.out, cmd.fmt
    flat = {k: v for k, v in vars(ns).items()
            if k not in ("verb", "config", "out", "fmt") and v is not None}
    if verb == "pde":
        grid = dict(base.get("grid", {}))
        for k in ("x_min", "x_max", "dx"):
            if k in flat:
                grid[k] = flat.pop(k)
        if grid:
            base["grid"] = grid
        if "probe_step" in flat:
            base["probes"] = flat.pop("probe_step")
        if "initial_kind" in flat:
            base["initial"] = {"kind": flat.pop("initial_kind")}
        if "track_level" in flat:
            base["track"] = {"level": flat.pop("track_level")}
    if verb == "verify":
        if flat.pop("strict", False):
            base["preset"] = "strict"
        if "only" in flat:
            base["only"] = [s.strip() for s in flat.pop("only").split(",") if s.strip()]
    base.update(flat)
    return Command(verb=verb,
                   options=_validate(verb, base),
                   out=ns.out if ns.out is not None else out,
                   fmt=ns.fmt if ns.fmt is not None else (fmt or "csv"))


def main(argv=None) -> int:
    ns = _parser().parse_args(argv)
    try:
        command = _merge_cli(ns.verb, ns)
        outcome = execute(command)
    except (ConfigError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if command.verb == "verify":
        return 0 if outcome["passed"] else 2
    if command.verb == "speeds" and not outcome["files"]:
        sys.stdout.write(json_dumps_for_stdout(outcome["data"]))
    for f in outcome["files"]:
        print(f"wrote {f}")
    return 0


def json_dumps_for_stdout(payload: dict) -> str:
    from .serialize import dumps_json

    return dumps_json(payload)


if __name__ == "__main__":
    raise SystemExit(main())
