"""Parameter scans over (omega0, b) with resumable per-cell checkpoints.

Cells are independent simulations; the result grid is deterministic for a
given spec and preset, regardless of worker count or interruption.  The
checkpoint file is newline-delimited JSON, append-only; completed cells
found there (with a matching spec hash) are not recomputed.
"""

from __future__ import annotations

import dataclasses
import hashlib
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .potential import PotentialConfig
from .runner import run_simulation

SWEEPABLE = ("omega0", "b", "v1", "v2", "w", "d", "phi")


@dataclass(frozen=True)
class SweepAxis:
    name: str
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.name not in SWEEPABLE:
            raise ValueError(f"cannot sweep {self.name!r}; choose from {SWEEPABLE}")
        if len(self.values) == 0:
            raise ValueError(f"axis {self.name!r} has no values")
        if not all(np.isfinite(self.values)):
            raise ValueError(f"axis {self.name!r} contains non-finite values")


@dataclass(frozen=True)
class SweepSpec:
    axis1: SweepAxis
    axis2: SweepAxis | None = None
    base: PotentialConfig = field(default_factory=PotentialConfig)
    preset: str = "ci"
    length: float = 2.0
    nz: int | None = None
    dt: float | None = None
    max_cells: int = 4096

    @property
    def cell_shape(self) -> tuple[int, int]:
        n2 = len(self.axis2.values) if self.axis2 is not None else 1
        return len(self.axis1.values), n2

    def n_cells(self) -> int:
        n1, n2 = self.cell_shape
        return n1 * n2

    def cell_config(self, i: int, j: int) -> PotentialConfig:
        return dataclasses.replace(self.base, **self.cell_params(i, j))

    def cell_params(self, i: int, j: int) -> dict[str, float]:
        """Axis overrides for cell (i, j), without config validation."""
        kw = {self.axis1.name: self.axis1.values[i]}
        if self.axis2 is not None:
            kw[self.axis2.name] = self.axis2.values[j]
        return kw

    def cell_point(self, i: int, j: int) -> tuple[float, float]:
        """(omega0, b) coordinates of cell (i, j), without validation."""
        kw = self.cell_params(i, j)
        return (kw.get("omega0", self.base.omega0), kw.get("b", self.base.b))

    def spec_hash(self) -> str:
        payload = {
            "axis1": [self.axis1.name, list(self.axis1.values)],
            "axis2": ([self.axis2.name, list(self.axis2.values)]
                      if self.axis2 is not None else None),
            "base": dataclasses.asdict(self.base),
            "preset": self.preset,
            "length": self.length,
            "nz": self.nz,
            "dt": self.dt,
        }
        blob = json.dumps(payload, sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


@dataclass
class SweepResult:
    spec: SweepSpec
    numbers: np.ndarray   # (n1, n2) N_final, NaN for failed cells
    status: np.ndarray    # (n1, n2) of "ok" / "failed"
    runtime: np.ndarray   # (n1, n2) seconds, NaN for resumed-from-checkpoint 0 cost
    errors: dict = field(default_factory=dict)


def _run_cell(args) -> tuple[int, int, float, float]:
    spec, i, j = args
    cfg = spec.cell_config(i, j)
    t0 = time.perf_counter()
    res = run_simulation(cfg, length=spec.length, nz=spec.nz, dt=spec.dt,
                         preset=spec.preset, checkpoint_stride=10 ** 9)
    return i, j, res.n_final, time.perf_counter() - t0


def _load_checkpoint(path: Path, spec_hash: str) -> dict[tuple[int, int], dict]:
    done: dict[tuple[int, int], dict] = {}
    if not path.exists():
        return done
    with path.open() as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            if rec.get("spec_hash") == spec_hash:
                done[(rec["i"], rec["j"])] = rec
    return done


def run_sweep(spec: SweepSpec, *, checkpoint_path: str | os.PathLike | None = None,
              workers: int = 1, progress: bool = False) -> SweepResult:
    """Evaluate N_final on every cell of the sweep's parameter grid.

    Failed cells are recorded (status "failed", N=NaN) and the sweep
    continues.  With a checkpoint path, completed cells are appended as
    they finish and skipped on re-entry.
    """
    if spec.n_cells() > spec.max_cells:
        raise ValueError(f"sweep of {spec.n_cells()} cells exceeds budget "
                         f"{spec.max_cells}")
    n1, n2 = spec.cell_shape
    numbers = np.full((n1, n2), np.nan)
    status = np.full((n1, n2), "pending", dtype=object)
    runtime = np.full((n1, n2), np.nan)
    errors: dict[tuple[int, int], str] = {}

    spec_hash = spec.spec_hash()
    ckpt = Path(checkpoint_path) if checkpoint_path is not None else None
    done = _load_checkpoint(ckpt, spec_hash) if ckpt is not None else {}
    for (i, j), rec in done.items():
        if 0 <= i < n1 and 0 <= j < n2:
            numbers[i, j] = rec["N"]
            status[i, j] = rec["status"]
            runtime[i, j] = rec["runtime_s"]
            if rec["status"] == "failed":
                errors[(i, j)] = rec.get("error", "unknown")

    todo = [(i, j) for i in range(n1) for j in range(n2)
            if (i, j) not in done]

    fh = ckpt.open("a") if ckpt is not None else None

    def record(i: int, j: int, n: float, secs: float, err: str | None) -> None:
        ok = err is None
        numbers[i, j] = n if ok else np.nan
        status[i, j] = "ok" if ok else "failed"
        runtime[i, j] = secs
        omega0, b = spec.cell_point(i, j)
        rec = {"i": i, "j": j, "omega0_c2": omega0, "b_c2_per_t1": b,
               "N": n if ok else None, "status": status[i, j],
               "runtime_s": secs, "spec_hash": spec_hash}
        if err is not None:
            rec["error"] = err
            errors[(i, j)] = err
        if fh is not None:
            fh.write(json.dumps(rec) + "\n")
            fh.flush()
        if progress:
            print(f"  cell ({i},{j}) {status[i, j]} N={n:.4f} "
                  f"[{len(errors)} failed]", flush=True)

    try:
        if workers > 1 and len(todo) > 1:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                futures = {(i, j): pool.submit(_run_cell, (spec, i, j))
                           for i, j in todo}
                for (i, j), fut in futures.items():
                    try:
                        _, _, n, secs = fut.result()
                        record(i, j, n, secs, None)
                    except Exception as exc:  # per-cell failure, keep going
                        record(i, j, float("nan"), 0.0, str(exc))
        else:
            for i, j in todo:
                try:
                    _, _, n, secs = _run_cell((spec, i, j))
                    record(i, j, n, secs, None)
                except Exception as exc:
                    record(i, j, float("nan"), 0.0, str(exc))
    finally:
        if fh is not None:
            fh.close()

    return SweepResult(spec=spec, numbers=numbers, status=status,
                       runtime=runtime, errors=errors)


def find_peaks(series: np.ndarray, x: np.ndarray | None = None,
               min_prominence: float = 0.0) -> tuple[np.ndarray, float]:
    """Strict interior local maxima of a uniformly sampled 1D scan.

    A point counts as a peak when it exceeds both neighbors by at least
    min_prominence, which screens out ripple riding on a dominant comb.
    Returns (indices, mean adjacent-peak spacing in x units); the spacing
    is NaN when fewer than two peaks exist.
    """
    series = np.asarray(series, dtype=float)
    if series.ndim != 1 or series.size < 5:
        raise ValueError("need a 1D series with at least 5 points")
    if x is None:
        x = np.arange(series.size, dtype=float)
    else:
        x = np.asarray(x, dtype=float)
        dx = np.diff(x)
        if x.size != series.size or not np.allclose(dx, dx[0], rtol=1e-6):
            raise ValueError("x must be uniformly spaced and match series")
    if min_prominence < 0:
        raise ValueError("min_prominence must be nonnegative")
    interior = ((series[1:-1] > series[:-2] + min_prominence)
                & (series[1:-1] > series[2:] + min_prominence))
    idx = np.nonzero(interior)[0] + 1
    spacing = float(np.mean(np.diff(x[idx]))) if idx.size >= 2 else float("nan")
    return idx, spacing
