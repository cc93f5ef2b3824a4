"""Split-operator time evolution and the Bogoliubov projection matrix.

One Strang step is exp(-i K dt/2) exp(-i V(t+dt/2) dt) exp(-i K dt/2).
The kinetic factor is applied in momentum space through the closed form

    exp(-i H(p) tau) = cos(E tau) I - i sin(E tau) H(p)/E,

with H(p) = [[c^2, c p], [c p, -c^2]] and E = sqrt(c^4 + c^2 p^2); the
electrostatic potential is a scalar phase per lattice point.

`evolve_basis` advances all Nz negative-energy (or positive-energy) plane
waves in lockstep through shared per-step phase tables and projects onto
the free basis at checkpoints, yielding U_pn and the running pair count
N(t) = sum_pn |U_pn|^2.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.fft as sfft

from .constants import C, C2
from .grid import FreeBasis, Grid
from .potential import PotentialConfig, potential_on_grid


def dt_max(cfg: PotentialConfig) -> float:
    """Accuracy guard on the step size (not a stability limit)."""
    return 0.1 / (C2 + cfg.v1 + cfg.v2)


@dataclass(frozen=True)
class EvolutionSchedule:
    """Step size and count covering the full pulse 0 .. t1 + 2*t0."""

    dt: float
    n_steps: int
    checkpoint_stride: int = 50

    @classmethod
    def for_config(cls, cfg: PotentialConfig, dt: float,
                   checkpoint_stride: int = 50) -> "EvolutionSchedule":
        """Snap dt so that n_steps * dt lands exactly on t_total."""
        if dt <= 0:
            raise ValueError("dt must be positive")
        if dt > dt_max(cfg):
            raise ValueError(
                f"dt={dt} exceeds accuracy guard dt_max={dt_max(cfg):.3e}")
        n_steps = max(1, round(cfg.t_total / dt))
        return cls(dt=cfg.t_total / n_steps, n_steps=n_steps,
                   checkpoint_stride=max(1, checkpoint_stride))


class _KineticTable:
    """Cached spinor-space factors of exp(-i H(p) tau) on the momentum lattice."""

    def __init__(self, basis: FreeBasis, tau: float):
        c = basis.c
        e = basis.energy
        theta = e * tau
        cos_t = np.cos(theta)
        sin_t = np.sin(theta)
        self.m11 = cos_t - 1j * sin_t * (c * c / e)
        self.m22 = cos_t + 1j * sin_t * (c * c / e)
        self.m12 = -1j * sin_t * (c * basis.grid.p / e)

    def apply(self, psi_k: np.ndarray) -> None:
        """In-place application on (..., nz, 2) momentum-space amplitudes."""
        u = psi_k[..., 0].copy()
        v = psi_k[..., 1]
        psi_k[..., 0] = self.m11 * u + self.m12 * v
        psi_k[..., 1] = self.m12 * u + self.m22 * v


def split_step(state: np.ndarray, t: float, dt: float, grid: Grid,
               cfg: PotentialConfig, basis: FreeBasis | None = None) -> np.ndarray:
    """One Strang step of a position-space spinor state (any batch shape).

    Accepts negative dt (backward stepping, midpoint at t + dt/2).
    """
    if abs(dt) > dt_max(cfg):
        raise ValueError(f"|dt|={abs(dt)} exceeds accuracy guard {dt_max(cfg):.3e}")
    if basis is None:
        from .grid import build_free_basis
        basis = build_free_basis(grid)
    half = _KineticTable(basis, dt / 2)
    phase_v = np.exp(-1j * dt * potential_on_grid(grid, cfg, t + dt / 2))
    psi_k = grid.to_momentum(np.asarray(state, dtype=complex))
    half.apply(psi_k)
    psi = grid.to_position(psi_k)
    psi *= phase_v[:, None]
    psi_k = grid.to_momentum(psi)
    half.apply(psi_k)
    return grid.to_position(psi_k)


@dataclass
class BogoliubovMatrix:
    """Free-basis projections of the evolved initial modes.

    `u_pn[k, n]` is the overlap of evolved initial column n with the
    positive-energy free state at momentum index k; `u_nn` (optional) the
    overlaps with the negative-energy states.  `times`/`numbers` hold the
    N(t) checkpoints recorded during the evolution.
    """

    u_pn: np.ndarray
    time: float
    u_nn: np.ndarray | None = None
    times: np.ndarray = field(default_factory=lambda: np.empty(0))
    numbers: np.ndarray = field(default_factory=lambda: np.empty(0))

    def column_norms(self) -> np.ndarray:
        """Per-column total probability sum_p |U_pn|^2 + sum_n' |U_n'n|^2."""
        if self.u_nn is None:
            raise ValueError("negative-energy rows were not computed")
        return (np.sum(np.abs(self.u_pn) ** 2, axis=0)
                + np.sum(np.abs(self.u_nn) ** 2, axis=0))


def evolve_basis(grid: Grid, basis: FreeBasis, cfg: PotentialConfig,
                 schedule: EvolutionSchedule, *, initial_sign: int = -1,
                 include_negative_rows: bool = False,
                 progress: bool = False) -> BogoliubovMatrix:
    """Evolve every free mode of the given energy sign through the pulse.

    Initial column n is the plane wave u(p_n) e^{i p_n z}/sqrt(Nz).  With
    initial_sign=-1 (the default) the diagnostics count created electrons;
    with +1 they count created positrons (rows swap roles accordingly).
    """
    if initial_sign not in (+1, -1):
        raise ValueError("initial_sign must be +1 or -1")
    nz = grid.nz
    dt = schedule.dt
    stride = schedule.checkpoint_stride
    u_init = basis.u_minus if initial_sign < 0 else basis.u_plus

    # Raw-FFT momentum representation: the e^{i p L/2} offset phase commutes
    # with every k-diagonal factor, so it is folded in only at start and
    # projection time.
    conj_phase = np.conj(grid.momentum_phase)
    psi_k = np.zeros((nz, nz, 2), dtype=complex)
    idx = np.arange(nz)
    psi_k[idx, idx, :] = u_init * conj_phase[:, None]

    half = _KineticTable(basis, dt / 2)
    full = _KineticTable(basis, dt)
    proj_u = basis.u_minus if initial_sign < 0 else basis.u_plus
    count_u = basis.u_plus if initial_sign < 0 else basis.u_minus

    def project(u_rows: np.ndarray) -> np.ndarray:
        return np.einsum("ks,nks->kn", np.conj(u_rows), psi_k) \
            * grid.momentum_phase[:, None]

    times: list[float] = []
    numbers: list[float] = []
    half.apply(psi_k)
    for step in range(schedule.n_steps):
        t_mid = (step + 0.5) * dt
        phase_v = np.exp(-1j * dt * potential_on_grid(grid, cfg, t_mid))
        psi = sfft.ifft(psi_k, axis=1, norm="ortho")
        psi *= phase_v[None, :, None]
        psi_k = sfft.fft(psi, axis=1, norm="ortho")
        last = step == schedule.n_steps - 1
        if last or (step + 1) % stride == 0:
            half.apply(psi_k)
            u_count = project(count_u)
            times.append((step + 1) * dt)
            numbers.append(float(np.sum(np.abs(u_count) ** 2)))
            if progress:
                print(f"  step {step + 1}/{schedule.n_steps}  N={numbers[-1]:.6f}",
                      flush=True)
            if last:
                want_same = include_negative_rows or initial_sign > 0
                u_same = project(proj_u) if want_same else None
                if initial_sign < 0:
                    return BogoliubovMatrix(
                        u_pn=u_count, u_nn=u_same, time=times[-1],
                        times=np.array(times), numbers=np.array(numbers))
                return BogoliubovMatrix(
                    u_pn=u_same, u_nn=u_count, time=times[-1],
                    times=np.array(times), numbers=np.array(numbers))
            half.apply(psi_k)
        else:
            full.apply(psi_k)
    raise RuntimeError("schedule had zero steps")  # pragma: no cover


def spectral_momentum_matrix(grid: Grid) -> np.ndarray:
    """Dense momentum operator F^-1 diag(p) F on the lattice."""
    return sfft.ifft(grid.p[:, None] * sfft.fft(np.eye(grid.nz), axis=0), axis=0)


def dense_hamiltonian(grid: Grid, v_diag: np.ndarray, c: float = C) -> np.ndarray:
    """Dense 2Nz x 2Nz Dirac Hamiltonian, component-major ordering.

    State vector layout: [psi_0(z_0..z_{Nz-1}), psi_1(z_0..z_{Nz-1})].
    """
    nz = grid.nz
    pmat = spectral_momentum_matrix(grid)
    sigma1 = np.array([[0.0, 1.0], [1.0, 0.0]])
    sigma3 = np.array([[1.0, 0.0], [0.0, -1.0]])
    h = c * np.kron(sigma1, pmat)
    h += c * c * np.kron(sigma3, np.eye(nz))
    h += np.kron(np.eye(2), np.diag(v_diag))
    return h


def oracle_step(state: np.ndarray, t: float, dt: float, grid: Grid,
                cfg: PotentialConfig) -> np.ndarray:
    """Crank-Nicolson reference step with the densely assembled Hamiltonian.

    Independent of the split-operator path; restricted to small grids
    (Nz <= 256) because of the dense solve.
    """
    if grid.nz > 256:
        raise ValueError(f"oracle_step limited to Nz <= 256, got {grid.nz}")
    h = dense_hamiltonian(grid, potential_on_grid(grid, cfg, t + dt / 2))
    vec = np.concatenate([state[:, 0], state[:, 1]])
    eye = np.eye(2 * grid.nz)
    rhs = (eye - 0.5j * dt * h) @ vec
    out = np.linalg.solve(eye + 0.5j * dt * h, rhs)
    return np.stack([out[:grid.nz], out[grid.nz:]], axis=1)
