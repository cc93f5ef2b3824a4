"""Command-line entry point.

Subcommands: evolve (one full run), scan (1D/2D parameter sweeps),
bound-states, pulse-spectrum.  Configuration is a flat JSON file plus
flag overrides (flags win); all physical quantities carry their unit in
the key name, matching the reporting convention (frequencies in c^2,
chirp in c^2/t1, widths in Compton wavelengths, times in 1/c^2).

Exit codes: 0 ok, 2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .constants import C2
from .grid import build_grid
from .observables import bound_states
from .potential import PotentialConfig, pulse_spectrum
from .runner import PRESETS, run_simulation
from .sweep import SweepAxis, SweepSpec, run_sweep


class ConfigError(Exception):
    pass


DEFAULT_CONFIG = {
    "preset": "ci",
    "L_au": 2.0,
    "nz": None,
    "dt_au": None,
    "checkpoint_stride": 50,
    "bin_width_c2": 0.02,
    "v1_c2": 1.5,
    "v2_c2": 1.5,
    "w_le": 0.3,
    "d_le": 10.0,
    "omega0_c2": 1.0,
    "b_c2_per_t1": 0.0,
    "phi_rad": 0.0,
    "t0_c2inv": 5.0,
    "t1_c2inv": 20.0 * math.pi,
    "literal_ramp": False,
}

# config key -> PotentialConfig field (values in t0/t1 converted to a.u.)
_AXIS_NAMES = {
    "omega0_c2": "omega0",
    "b_c2_per_t1": "b",
    "v1_c2": "v1",
    "v2_c2": "v2",
    "w_le": "w",
    "d_le": "d",
    "phi_rad": "phi",
}


def load_config(path: str | None, overrides: dict) -> dict:
    """Merge defaults <- config file <- non-None flag overrides."""
    cfg = dict(DEFAULT_CONFIG)
    if path is not None:
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if "config" in data and isinstance(data["config"], dict):
            data = data["config"]  # a meta file round-trips as a config
        for key, value in data.items():
            if key == "scan":
                cfg["scan"] = value
                continue
            if key not in DEFAULT_CONFIG:
                raise ConfigError(f"unknown config key {key!r}")
            cfg[key] = value
    for key, value in overrides.items():
        if value is not None:
            cfg[key] = value
    _validate(cfg)
    return cfg


def _validate(cfg: dict) -> None:
    if cfg["preset"] not in PRESETS:
        raise ConfigError(f"unknown preset {cfg['preset']!r}")
    for key in ("L_au", "t0_c2inv", "t1_c2inv", "w_le", "d_le", "bin_width_c2"):
        if not cfg[key] > 0:
            raise ConfigError(f"config key {key!r} must be positive, got {cfg[key]}")
    for key in ("omega0_c2", "b_c2_per_t1"):
        if cfg[key] < 0:
            raise ConfigError(f"config key {key!r} must be nonnegative, got {cfg[key]}")
    if cfg["nz"] is not None and (cfg["nz"] < 16 or cfg["nz"] % 2):
        raise ConfigError(f"config key 'nz' must be even and >= 16, got {cfg['nz']}")
    if cfg["dt_au"] is not None and not cfg["dt_au"] > 0:
        raise ConfigError(f"config key 'dt_au' must be positive, got {cfg['dt_au']}")


def potential_from_config(cfg: dict) -> PotentialConfig:
    try:
        return PotentialConfig(
            v1=cfg["v1_c2"], v2=cfg["v2_c2"], w=cfg["w_le"], d=cfg["d_le"],
            omega0=cfg["omega0_c2"], b=cfg["b_c2_per_t1"], phi=cfg["phi_rad"],
            t0=cfg["t0_c2inv"] / C2, t1=cfg["t1_c2inv"] / C2,
            literal_ramp=bool(cfg["literal_ramp"]))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _write_csv(path: Path, header: list[str], rows) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([str(v) for v in row])


def _write_meta(path: Path, cfg: dict, command: str, wall: float,
                derived: dict) -> None:
    meta = {
        "command": command,
        "version": __version__,
        "wall_time_s": wall,
        "config": {k: v for k, v in cfg.items()},
        "derived": derived,
    }
    with path.open("w") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _threads(args: argparse.Namespace) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("DIRACWELL_THREADS")
    if env is not None:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise ConfigError(f"DIRACWELL_THREADS={env!r} is not an integer") from exc
    return 1


def cmd_evolve(args: argparse.Namespace) -> int:
    cfg = load_config(args.config, _flag_overrides(args))
    pot = potential_from_config(cfg)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = [out / "number_vs_time.csv", out / "spectrum.csv",
             out / "density.csv", out / "meta.json"]
    t_start = time.perf_counter()
    try:
        res = run_simulation(
            pot, length=cfg["L_au"], nz=cfg["nz"], dt=cfg["dt_au"],
            preset=cfg["preset"], checkpoint_stride=cfg["checkpoint_stride"],
            bin_width=cfg["bin_width_c2"], progress=args.progress)
        _write_csv(paths[0], ["t_au", "N"], zip(res.times, res.numbers))
        _write_csv(paths[1], ["E_c2", "dN_dE"],
                   zip(res.spectrum.centers, res.spectrum.counts))
        _write_csv(paths[2], ["z_au", "rho"], zip(res.grid.z, res.rho))
        _write_meta(paths[3], cfg, "evolve", time.perf_counter() - t_start,
                    res.meta)
    except Exception:
        for p in paths:
            p.unlink(missing_ok=True)
        raise
    print(f"N_final = {res.n_final:.6f}  ({res.meta['n_steps']} steps, "
          f"preset {cfg['preset']})")
    return 0


def _parse_axis(text: str) -> SweepAxis:
    """Parse 'name=start:stop:step' or 'name=v1,v2,...' (config-key names)."""
    try:
        name, rhs = text.split("=", 1)
    except ValueError as exc:
        raise ConfigError(f"bad axis spec {text!r}") from exc
    if name not in _AXIS_NAMES:
        raise ConfigError(f"cannot sweep {name!r}; choose from {sorted(_AXIS_NAMES)}")
    try:
        if ":" in rhs:
            start, stop, step = (float(v) for v in rhs.split(":"))
            n = int(round((stop - start) / step)) + 1
            values = tuple(start + k * step for k in range(n))
        else:
            values = tuple(float(v) for v in rhs.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad axis values in {text!r}") from exc
    return SweepAxis(name=_AXIS_NAMES[name], values=values)


def _axis_from_dict(d: dict) -> SweepAxis:
    name = d.get("name")
    if name not in _AXIS_NAMES:
        raise ConfigError(f"cannot sweep {name!r}; choose from {sorted(_AXIS_NAMES)}")
    if "values" in d:
        values = tuple(float(v) for v in d["values"])
    else:
        try:
            start, stop, step = d["start"], d["stop"], d["step"]
        except KeyError as exc:
            raise ConfigError(f"axis {name!r} needs 'values' or start/stop/step") from exc
        n = int(round((stop - start) / step)) + 1
        values = tuple(start + k * step for k in range(n))
    return SweepAxis(name=_AXIS_NAMES[name], values=values)


def cmd_scan(args: argparse.Namespace) -> int:
    cfg = load_config(args.config, _flag_overrides(args))
    pot = potential_from_config(cfg)
    if args.axis1 is not None:
        axis1 = _parse_axis(args.axis1)
        axis2 = _parse_axis(args.axis2) if args.axis2 is not None else None
    elif "scan" in cfg:
        scan_cfg = cfg["scan"]
        axis1 = _axis_from_dict(scan_cfg["axis1"])
        axis2 = (_axis_from_dict(scan_cfg["axis2"])
                 if scan_cfg.get("axis2") else None)
    else:
        raise ConfigError("scan needs --axis1 or a 'scan' section in the config")
    try:
        spec = SweepSpec(axis1=axis1, axis2=axis2, base=pot,
                         preset=cfg["preset"], length=cfg["L_au"],
                         nz=cfg["nz"], dt=cfg["dt_au"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    ckpt = out / "scan.checkpoint.jsonl"
    t_start = time.perf_counter()
    result = run_sweep(spec, checkpoint_path=ckpt, workers=_threads(args),
                       progress=args.progress)

    rows = []
    n1, n2 = spec.cell_shape
    for i in range(n1):
        for j in range(n2):
            omega0, b = spec.cell_point(i, j)
            n_val = result.numbers[i, j]
            rows.append([omega0, b, "nan" if np.isnan(n_val) else n_val,
                         result.status[i, j], result.runtime[i, j]])
    _write_csv(out / "scan.csv",
               ["omega0_c2", "b_c2_per_t1", "N", "status", "runtime_s"], rows)
    derived = {"spec_hash": spec.spec_hash(), "cells": spec.n_cells(),
               "failed": int(np.sum(result.status == "failed"))}
    _write_meta(out / "meta.json", cfg, "scan",
                time.perf_counter() - t_start, derived)
    n_fail = derived["failed"]
    print(f"scan complete: {spec.n_cells()} cells, {n_fail} failed")
    return 0 if n_fail == 0 else 3


def cmd_bound_states(args: argparse.Namespace) -> int:
    cfg = load_config(args.config, _flag_overrides(args))
    pot = potential_from_config(cfg)
    nz = cfg["nz"] if cfg["nz"] is not None else 1024
    grid = build_grid(cfg["L_au"], nz)
    t_start = time.perf_counter()
    bs = bound_states(grid, pot, include_oscillating=args.combined_depth)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    _write_csv(out / "bound_states.csv", ["E_c2", "localization"],
               zip(bs.energies, bs.localization))
    _write_meta(out / "meta.json", cfg, "bound-states",
                time.perf_counter() - t_start,
                {"nz": nz, "levels": len(bs.energies),
                 "combined_depth": bool(args.combined_depth)})
    print(f"{'level':>5}  {'E [c^2]':>10}  {'localization':>12}")
    for k, (e, loc) in enumerate(zip(bs.energies, bs.localization), start=1):
        print(f"{k:>5}  {e:>10.4f}  {loc:>12.4f}")
    return 0


def cmd_pulse_spectrum(args: argparse.Namespace) -> int:
    cfg = load_config(args.config, _flag_overrides(args))
    pot = potential_from_config(cfg)
    try:
        spec = pulse_spectrum(pot, n_samples=args.samples,
                              window="hann" if args.hann else None)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    _write_csv(out / "pulse_spectrum.csv", ["omega_c2", "magnitude"],
               zip(spec.frequencies, spec.magnitudes))
    _write_meta(out / "meta.json", cfg, "pulse-spectrum", 0.0,
                {"n_samples": args.samples, "hann": bool(args.hann)})
    print(f"pulse spectrum written ({len(spec.frequencies)} bins)")
    return 0


_FLAG_KEYS = list(DEFAULT_CONFIG)


def _flag_overrides(args: argparse.Namespace) -> dict:
    return {k: getattr(args, k, None) for k in _FLAG_KEYS}


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON config file (a meta.json also works)")
    p.add_argument("--out-dir", default=".", help="output directory")
    p.add_argument("--threads", type=int, default=None,
                   help="worker bound (fallback: DIRACWELL_THREADS)")
    p.add_argument("--progress", action="store_true")
    p.add_argument("--preset", choices=sorted(PRESETS), default=None)
    phys = p.add_argument_group("physics overrides")
    phys.add_argument("--omega0-c2", dest="omega0_c2", type=float)
    phys.add_argument("--b-c2-per-t1", dest="b_c2_per_t1", type=float)
    phys.add_argument("--v1-c2", dest="v1_c2", type=float)
    phys.add_argument("--v2-c2", dest="v2_c2", type=float)
    phys.add_argument("--w-le", dest="w_le", type=float)
    phys.add_argument("--d-le", dest="d_le", type=float)
    phys.add_argument("--phi-rad", dest="phi_rad", type=float)
    phys.add_argument("--t0-c2inv", dest="t0_c2inv", type=float)
    phys.add_argument("--t1-c2inv", dest="t1_c2inv", type=float)
    phys.add_argument("--literal-eq6", dest="literal_ramp", action="store_const",
                      const=True, help="use the literal descending turn-on ramp")
    num = p.add_argument_group("resolution overrides")
    num.add_argument("--L-au", dest="L_au", type=float)
    num.add_argument("--nz", type=int)
    num.add_argument("--dt-au", dest="dt_au", type=float)
    num.add_argument("--checkpoint-stride", dest="checkpoint_stride", type=int)
    num.add_argument("--bin-width-c2", dest="bin_width_c2", type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diracwell",
        description="Pair creation in combined static + chirped oscillating wells")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evolve", help="one full pulse, CSV outputs")
    _add_common(p)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("scan", help="1D/2D parameter sweep")
    _add_common(p)
    p.add_argument("--axis1", help="e.g. b_c2_per_t1=0:2:0.1 or omega0_c2=0.5,1.0")
    p.add_argument("--axis2", help="optional second axis, same syntax")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("bound-states", help="static-well gap levels")
    _add_common(p)
    p.add_argument("--combined-depth", action="store_true",
                   help="use V1+V2 instead of the static depth V1")
    p.set_defaults(func=cmd_bound_states)

    p = sub.add_parser("pulse-spectrum", help="frequency content of the drive")
    _add_common(p)
    p.add_argument("--samples", type=int, default=8192)
    p.add_argument("--hann", action="store_true")
    p.set_defaults(func=cmd_pulse_spectrum)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, np.linalg.LinAlgError,
            MemoryError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
