"""Physical outputs: pair number, spatial density, energy spectrum, bound states."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import C2
from .grid import FreeBasis, Grid
from .potential import PotentialConfig, shape
from .propagator import BogoliubovMatrix, dense_hamiltonian


def number_of_electrons(u: BogoliubovMatrix) -> float:
    """N = sum_p sum_n |U_pn|^2."""
    return float(np.sum(np.abs(u.u_pn) ** 2))


def density(u: BogoliubovMatrix, grid: Grid, basis: FreeBasis) -> np.ndarray:
    """Created-electron density rho(z), normalized so sum_j rho_j dz = N.

    rho(z) = (1/dz) sum_n |sum_p U_pn W_p(z)|^2 with the lattice-normalized
    plane waves W_p(z) = u_plus(p) e^{ipz}/sqrt(Nz).
    """
    # per column n, momentum amplitudes U_pn * u_plus(p)
    phi_k = np.einsum("kn,ks->nks", u.u_pn, basis.u_plus)
    phi_z = grid.to_position(phi_k)
    return np.sum(np.abs(phi_z) ** 2, axis=(0, 2)) / grid.dz


@dataclass(frozen=True)
class EnergySpectrum:
    """Histogram dN/dE of created electrons over E/c^2 in (1, E_max)."""

    bin_edges: np.ndarray  # [c^2], length n_bins + 1, starting at 1.0
    counts: np.ndarray     # dN/dE per bin [1/c^2]
    bin_width: float       # [c^2]

    @property
    def centers(self) -> np.ndarray:
        return 0.5 * (self.bin_edges[:-1] + self.bin_edges[1:])

    @property
    def total(self) -> float:
        return float(np.sum(self.counts) * self.bin_width)


def energy_spectrum(u: BogoliubovMatrix, basis: FreeBasis,
                    bin_width: float = 0.02) -> EnergySpectrum:
    """Bin the per-mode weights n_p = sum_n |U_pn|^2 by E(p)/c^2.

    Both momentum signs share an energy, so each bin collects +-p together.
    """
    if bin_width <= 0:
        raise ValueError("bin_width must be positive")
    weights = np.sum(np.abs(u.u_pn) ** 2, axis=1)
    e_c2 = basis.energy / C2
    n_bins = int(np.ceil((e_c2.max() - 1.0) / bin_width)) + 1
    edges = 1.0 + bin_width * np.arange(n_bins + 1)
    idx = np.minimum(((e_c2 - 1.0) / bin_width).astype(int), n_bins - 1)
    counts = np.zeros(n_bins)
    np.add.at(counts, idx, weights)
    return EnergySpectrum(bin_edges=edges, counts=counts / bin_width,
                          bin_width=bin_width)


@dataclass(frozen=True)
class BoundStateSet:
    """Discrete levels of the static well inside the mass gap (-c^2, c^2)."""

    energies: np.ndarray      # [c^2], sorted ascending
    localization: np.ndarray  # norm fraction within |z - z_center| <= D


def bound_states(grid: Grid, cfg: PotentialConfig, *,
                 include_oscillating: bool = False,
                 localization_threshold: float = 0.5) -> BoundStateSet:
    """Gap eigenstates of H = c sigma1 p + sigma3 c^2 + depth * S(z).

    Uses the static depth V1 by default; include_oscillating adds V2 (full
    combined depth at the oscillation maximum).  States are accepted when
    the eigenvalue lies strictly inside (-c^2, c^2) and more than the
    threshold fraction of the norm sits within |z - z_center| <= D.
    """
    if grid.nz > 2048:
        raise ValueError(f"dense eigensolve limited to Nz <= 2048, got {grid.nz}")
    depth = cfg.v1_abs + (cfg.v2_abs if include_oscillating else 0.0)
    h = dense_hamiltonian(grid, depth * shape(grid.z, cfg))
    vals, vecs = np.linalg.eigh(h)
    inside = np.abs(vals) < C2 * (1.0 - 1e-12)  # gap window (-c^2, c^2)
    in_well = np.abs(grid.z - cfg.z_center) <= cfg.d_abs
    mask = np.concatenate([in_well, in_well])
    energies = []
    locs = []
    for i in np.nonzero(inside)[0]:
        v = vecs[:, i]
        loc = float(np.sum(np.abs(v[mask]) ** 2) / np.sum(np.abs(v) ** 2))
        if loc > localization_threshold:
            energies.append(vals[i] / C2)
            locs.append(loc)
    order = np.argsort(energies)
    return BoundStateSet(energies=np.array(energies)[order] if energies else np.empty(0),
                         localization=np.array(locs)[order] if locs else np.empty(0))
