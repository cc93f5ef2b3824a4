"""Periodic spatial lattice, its momentum dual, and the free Dirac eigenbasis.

The 1+1D Dirac Hamiltonian decouples into two identical 2-component blocks;
we work with one block, H(p) = c*sigma1*p + sigma3*c^2 = [[c^2, c*p], [c*p, -c^2]].

Spinor states are complex arrays of shape (..., Nz, 2): the second-to-last
axis is the lattice, the last axis the spinor component.  A basis state
carries total norm sum_{j,s} |psi_{j,s}|^2 = 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.fft as sfft

from .constants import C


@dataclass(frozen=True)
class Grid:
    """Uniform periodic lattice z_j = -L/2 + j*dz with FFT-ordered momenta."""

    length: float
    nz: int
    dz: float
    z: np.ndarray
    p: np.ndarray
    # phase e^{i p L/2} relating the raw DFT to overlaps with e^{ipz}/sqrt(Nz)
    momentum_phase: np.ndarray

    @property
    def max_momentum(self) -> float:
        return float(np.max(np.abs(self.p)))

    def to_momentum(self, state: np.ndarray) -> np.ndarray:
        """Unitary transform to momentum space along axis -2.

        Component k of the result is the overlap of the state with the
        plane wave e^{i p_k z}/sqrt(Nz), per spinor component.
        """
        self._check_shape(state)
        out = sfft.fft(state, axis=-2, norm="ortho")
        out *= self.momentum_phase[:, None]
        return out

    def to_position(self, state: np.ndarray) -> np.ndarray:
        """Inverse of :meth:`to_momentum`."""
        self._check_shape(state)
        return sfft.ifft(state * np.conj(self.momentum_phase)[:, None],
                         axis=-2, norm="ortho")

    def _check_shape(self, state: np.ndarray) -> None:
        if state.ndim < 2 or state.shape[-2] != self.nz or state.shape[-1] != 2:
            raise ValueError(
                f"expected spinor state shaped (..., {self.nz}, 2), got {state.shape}"
            )


def build_grid(length: float, nz: int) -> Grid:
    """Build the lattice for domain size `length` with `nz` points.

    `nz` must be even and at least 16 so the momentum lattice is symmetric
    about zero (up to the single Nyquist mode).
    """
    if length <= 0:
        raise ValueError(f"domain length must be positive, got {length}")
    if nz < 16:
        raise ValueError(f"nz must be at least 16, got {nz}")
    if nz % 2 != 0:
        raise ValueError(f"nz must be even, got {nz}")
    dz = length / nz
    z = -length / 2 + dz * np.arange(nz)
    p = 2.0 * np.pi * sfft.fftfreq(nz, d=dz)
    phase = np.exp(1j * p * length / 2)
    return Grid(length=float(length), nz=int(nz), dz=dz, z=z, p=p,
                momentum_phase=phase)


def _fix_phase(u: np.ndarray) -> np.ndarray:
    """Make the first nonzero component real positive (deterministic phase)."""
    for comp in u:
        if abs(comp) > 1e-12:
            return u * (np.conj(comp) / abs(comp))
    return u


def free_eigenpair(p: float, sign: int, c: float = C) -> tuple[float, np.ndarray]:
    """Eigenvalue and unit eigenspinor of H(p) for the given energy sign.

    sign=+1: E = +sqrt(c^4 + c^2 p^2), u ~ (E + c^2, c p).
    sign=-1: E = -sqrt(c^4 + c^2 p^2), u ~ (-c p, |E| + c^2).
    """
    if sign not in (+1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    if not np.isfinite(p):
        raise ValueError(f"momentum must be finite, got {p}")
    e = np.hypot(c * c, c * p)
    if sign > 0:
        u = np.array([e + c * c, c * p], dtype=complex)
    else:
        u = np.array([-c * p, e + c * c], dtype=complex)
    u /= np.linalg.norm(u)
    return sign * e, _fix_phase(u)


@dataclass(frozen=True)
class FreeBasis:
    """Free Dirac eigenpairs at every lattice momentum.

    `energy[k]` is the positive branch +E(p_k); `u_plus[k]` / `u_minus[k]`
    are the corresponding +E / -E unit spinors.
    """

    grid: Grid
    c: float
    energy: np.ndarray   # (nz,), positive branch
    u_plus: np.ndarray   # (nz, 2)
    u_minus: np.ndarray  # (nz, 2)


def build_free_basis(grid: Grid, c: float = C) -> FreeBasis:
    nz = grid.nz
    energy = np.hypot(c * c, c * grid.p)
    u_plus = np.empty((nz, 2), dtype=complex)
    u_minus = np.empty((nz, 2), dtype=complex)
    for k in range(nz):
        _, u_plus[k] = free_eigenpair(grid.p[k], +1, c)
        _, u_minus[k] = free_eigenpair(grid.p[k], -1, c)
    return FreeBasis(grid=grid, c=c, energy=energy, u_plus=u_plus,
                     u_minus=u_minus)
