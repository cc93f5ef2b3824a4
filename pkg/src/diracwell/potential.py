"""Combined static + chirped oscillating Sauter well.

V(z, t) = S(z) * [V1 * f_static(t) + V2 * f_osc(t)] with the tanh edge
profile S(z) in [-1, 0] and three temporal phases: a cosine turn-on ramp
of duration t0, the interaction window of duration t1 during which the
oscillating depth follows cos(b*(t-t0)^2 + omega0*(t-t0) + phi), and a
cosine turn-off ramp during which the oscillating part stays frozen at
its end-of-window value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.fft as sfft

from .constants import C, C2
from .grid import Grid

DEFAULT_T0 = 5.0 / C2
DEFAULT_T1 = 20.0 * math.pi / C2


@dataclass(frozen=True)
class PotentialConfig:
    """Well parameters in natural reporting units.

    Depths and omega0 in multiples of c^2, the chirp b in multiples of
    c^2/t1, widths in Compton wavelengths, times in a.u.  Absolute values
    (plain a.u.) are exposed as *_abs properties.
    """

    v1: float = 1.5        # static depth [c^2]
    v2: float = 1.5        # oscillating depth [c^2]
    w: float = 0.3         # edge width [lambda_e]
    d: float = 10.0        # well width [lambda_e]
    omega0: float = 1.0    # fundamental frequency [c^2]
    b: float = 0.0         # chirp parameter [c^2/t1]
    phi: float = 0.0       # phase [rad]
    t0: float = DEFAULT_T0  # ramp duration [a.u.]
    t1: float = DEFAULT_T1  # interaction duration [a.u.]
    z_center: float = 0.0  # well center [a.u.]
    literal_ramp: bool = False  # reproduce the descending literal turn-on branch

    def __post_init__(self) -> None:
        if self.t0 <= 0 or self.t1 <= 0:
            raise ValueError("t0 and t1 must be positive")
        if self.w <= 0 or self.d <= 0:
            raise ValueError("W and D must be positive")
        if self.omega0 < 0:
            raise ValueError("omega0 must be nonnegative")
        if self.b < 0:
            raise ValueError("chirp parameter b must be nonnegative")

    @property
    def v1_abs(self) -> float:
        return self.v1 * C2

    @property
    def v2_abs(self) -> float:
        return self.v2 * C2

    @property
    def omega_abs(self) -> float:
        return self.omega0 * C2

    @property
    def b_abs(self) -> float:
        return self.b * C2 / self.t1

    @property
    def w_abs(self) -> float:
        return self.w / C

    @property
    def d_abs(self) -> float:
        return self.d / C

    @property
    def t_total(self) -> float:
        return self.t1 + 2.0 * self.t0

    @property
    def omega_eff_end(self) -> float:
        """End-of-sweep effective frequency omega0 + b*t1 [c^2]."""
        return self.omega0 + self.b

    @property
    def omega_inst_end(self) -> float:
        """Instantaneous frequency at t1, d(phase)/dt = omega0 + 2*b*t1 [c^2]."""
        return self.omega0 + 2.0 * self.b


def shape(z, cfg: PotentialConfig):
    """Edge profile S(z) = {tanh[(z-D/2)/W] - tanh[(z+D/2)/W]}/2, in [-1, 0]."""
    zz = np.asarray(z, dtype=float) - cfg.z_center
    half_d = cfg.d_abs / 2.0
    return 0.5 * (np.tanh((zz - half_d) / cfg.w_abs)
                  - np.tanh((zz + half_d) / cfg.w_abs))


def _osc_phase(cfg: PotentialConfig, tau: float) -> float:
    """Oscillation phase at time tau after the ramp."""
    return cfg.b_abs * tau * tau + cfg.omega_abs * tau + cfg.phi


def time_factor(t: float, cfg: PotentialConfig) -> tuple[float, float]:
    """Multiplicative depth factors (f_static, f_osc) at time t.

    V(z,t) = S(z) * [V1_abs * f_static + V2_abs * f_osc].  Raises for t
    outside [0, t1 + 2*t0] (tiny floating-point overshoot is tolerated).
    """
    slack = 1e-9 * cfg.t_total
    if t < -slack or t > cfg.t_total + slack:
        raise ValueError(f"t={t} outside the pulse window [0, {cfg.t_total}]")
    t = min(max(t, 0.0), cfg.t_total)

    if t < cfg.t0:
        if cfg.literal_ramp:
            ramp = math.cos(math.pi * t / (2.0 * cfg.t0))
        else:
            ramp = math.cos(math.pi * (t - cfg.t0) / (2.0 * cfg.t0))
        return ramp, ramp
    if t < cfg.t0 + cfg.t1:
        return 1.0, math.cos(_osc_phase(cfg, t - cfg.t0))
    ramp = math.cos(math.pi * (t - cfg.t1 - cfg.t0) / (2.0 * cfg.t0))
    frozen = math.cos(_osc_phase(cfg, cfg.t1))
    return ramp, frozen * ramp


def potential_on_grid(grid: Grid, cfg: PotentialConfig, t: float) -> np.ndarray:
    """V(z_j, t) in a.u. of energy, length-Nz real array."""
    f_static, f_osc = time_factor(t, cfg)
    return shape(grid.z, cfg) * (cfg.v1_abs * f_static + cfg.v2_abs * f_osc)


@dataclass(frozen=True)
class PulseSpectrum:
    """One-sided magnitude spectrum of the oscillating depth factor."""

    frequencies: np.ndarray  # [c^2], monotone increasing
    magnitudes: np.ndarray   # normalized to max 1


def pulse_spectrum(cfg: PotentialConfig, n_samples: int = 8192,
                   window: str | None = None) -> PulseSpectrum:
    """DFT magnitude of f_osc(t) sampled uniformly on [t0, t0 + t1].

    `n_samples` must be a power of two >= 1024.  No window by default;
    window="hann" applies a Hann window before the transform.
    """
    if n_samples < 1024 or (n_samples & (n_samples - 1)) != 0:
        raise ValueError(f"n_samples must be a power of two >= 1024, got {n_samples}")
    tau = cfg.t1 * np.arange(n_samples) / n_samples
    signal = np.cos(cfg.b_abs * tau * tau + cfg.omega_abs * tau + cfg.phi)
    if window == "hann":
        signal = signal * np.hanning(n_samples)
    elif window is not None:
        raise ValueError(f"unknown window {window!r}")
    mags = np.abs(sfft.rfft(signal))
    freqs = 2.0 * np.pi * sfft.rfftfreq(n_samples, d=cfg.t1 / n_samples) / C2
    peak = mags.max()
    if peak > 0:
        mags = mags / peak
    return PulseSpectrum(frequencies=freqs, magnitudes=mags)
