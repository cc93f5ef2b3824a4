"""Render figures from diracwell CSV outputs.

Every figure kind maps to one CSV schema produced by the diracwell CLI.
Inputs are validated (header and non-empty body) before any drawing
happens, so a bad file never leaves a partial image behind, and rendering
never modifies its inputs.
"""

from __future__ import annotations

import csv
import hashlib
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

# figure kind -> (expected CSV header, default x label, default y label)
KINDS = {
    "n_vs_b": (["omega0_c2", "b_c2_per_t1", "N", "status", "runtime_s"],
               None, "N"),
    "n_vs_time": (["t_au", "N"], "t (a.u.)", "N"),
    "spectrum": (["E_c2", "dN_dE"], "E (c^2)", "dN/dE (1/c^2)"),
    "pulse_spectrum": (["omega_c2", "magnitude"], "omega (c^2)",
                       "relative magnitude"),
    "contour": (["omega0_c2", "b_c2_per_t1", "N", "status", "runtime_s"],
                "omega0 (c^2)", "b (c^2/t1)"),
}

SCAN_AXIS_LABELS = {"omega0_c2": "omega0 (c^2)", "b_c2_per_t1": "b (c^2/t1)"}


class FigureInputError(ValueError):
    """Raised when an input CSV is missing, empty, or the wrong schema."""


@dataclass(frozen=True)
class FigureSpec:
    """One figure: input CSVs, kind, destination, and axis labels."""

    inputs: tuple[Path, ...]
    kind: str
    output: Path
    xlabel: str | None = None
    ylabel: str | None = None
    labels: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r}; "
                             f"expected one of {sorted(KINDS)}")
        if not self.inputs:
            raise ValueError("at least one input CSV is required")
        if self.kind != "spectrum" and len(self.inputs) != 1:
            raise ValueError(f"kind {self.kind!r} takes exactly one input")
        if self.labels and len(self.labels) != len(self.inputs):
            raise ValueError("one label per input, or none")
        object.__setattr__(self, "inputs",
                           tuple(Path(p) for p in self.inputs))
        object.__setattr__(self, "output", Path(self.output))


def read_table(path: Path, expected_header: list[str]) -> np.ndarray:
    """Read a CSV into a float array (strings become NaN), checking schema."""
    path = Path(path)
    if not path.exists():
        raise FigureInputError(f"input not found: {path}")
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != expected_header:
        raise FigureInputError(
            f"{path}: expected header {expected_header}, "
            f"got {rows[0] if rows else 'an empty file'}")
    if len(rows) < 2:
        raise FigureInputError(f"{path}: no data rows")
    width = len(expected_header)
    data = np.full((len(rows) - 1, width), np.nan)
    for i, row in enumerate(rows[1:]):
        if len(row) != width:
            raise FigureInputError(f"{path}: row {i + 2} has {len(row)} "
                                   f"fields, expected {width}")
        for j, cell in enumerate(row):
            try:
                data[i, j] = float(cell)
            except ValueError:
                pass  # status strings stay NaN; numeric columns parse
    return data


def _file_hash(path: Path) -> str:
    path = Path(path)
    if not path.exists():
        raise FigureInputError(f"input not found: {path}")
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _draw_n_vs_b(ax, spec, tables):
    data = tables[0]
    omega0, b, n = data[:, 0], data[:, 1], data[:, 2]
    # the scan may vary either parameter; plot against the one that changes
    if np.nanstd(b) > 0 and np.nanstd(omega0) == 0:
        x, name = b, "b_c2_per_t1"
    elif np.nanstd(omega0) > 0 and np.nanstd(b) == 0:
        x, name = omega0, "omega0_c2"
    else:
        raise FigureInputError("n_vs_b needs a scan along exactly one axis")
    order = np.argsort(x)
    x, n = x[order], n[order]
    ax.plot(x, n, marker="o", markersize=3)
    k = int(np.nanargmax(n))
    ax.plot(x[k], n[k], marker="*", markersize=12, color="tab:red")
    ax.annotate(f"max N = {n[k]:.3g}\nat {x[k]:.3g}", xy=(x[k], n[k]),
                xytext=(8, -12), textcoords="offset points")
    ax.set_xlabel(spec.xlabel or SCAN_AXIS_LABELS[name])


def _draw_lines(ax, spec, tables):
    for i, data in enumerate(tables):
        label = spec.labels[i] if spec.labels else spec.inputs[i].stem
        ax.plot(data[:, 0], data[:, 1],
                label=label if len(tables) > 1 else None)
    if len(tables) > 1:
        ax.legend()


def _draw_contour(ax, spec, tables):
    data = tables[0]
    omega0 = np.unique(data[:, 0])
    b = np.unique(data[:, 1])
    if omega0.size * b.size != data.shape[0]:
        raise FigureInputError("contour needs a complete rectangular scan")
    grid = np.full((b.size, omega0.size), np.nan)
    i = np.searchsorted(b, data[:, 1])
    j = np.searchsorted(omega0, data[:, 0])
    grid[i, j] = data[:, 2]
    mesh = ax.pcolormesh(omega0, b, grid, shading="nearest")
    ax.figure.colorbar(mesh, ax=ax, label="N")
    ax.set_xlim(omega0.min(), omega0.max())
    ax.set_ylim(b.min(), b.max())


def build_figure(spec: FigureSpec) -> plt.Figure:
    """Validate inputs and build the matplotlib figure without saving it."""
    header, default_x, default_y = KINDS[spec.kind]
    tables = [read_table(p, header) for p in spec.inputs]
    fig, ax = plt.subplots(figsize=(6.0, 4.0), dpi=150)
    try:
        if spec.kind == "n_vs_b":
            _draw_n_vs_b(ax, spec, tables)
        elif spec.kind == "contour":
            _draw_contour(ax, spec, tables)
        else:
            _draw_lines(ax, spec, tables)
        if spec.kind != "n_vs_b":
            ax.set_xlabel(spec.xlabel or default_x)
        ax.set_ylabel(spec.ylabel or default_y)
        fig.tight_layout()
    except Exception:
        plt.close(fig)
        raise
    return fig


def render(spec: FigureSpec) -> Path:
    """Render the figure to spec.output; inputs are left untouched."""
    before = [_file_hash(p) for p in spec.inputs]
    fig = build_figure(spec)
    try:
        spec.output.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(spec.output)
    finally:
        plt.close(fig)
    after = [_file_hash(p) for p in spec.inputs]
    if before != after:
        raise RuntimeError("input files changed during rendering")
    return spec.output
