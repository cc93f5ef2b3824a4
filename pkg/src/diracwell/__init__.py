"""Pair creation from vacuum in combined static + chirped oscillating wells.

1+1D time-dependent Dirac equation, spectral split-operator propagation,
Bogoliubov projections onto the free basis, and parameter-sweep tooling.
"""

from .constants import C, C2, LAMBDA_E
from .grid import FreeBasis, Grid, build_free_basis, build_grid, free_eigenpair
from .observables import (BoundStateSet, EnergySpectrum, bound_states, density,
                          energy_spectrum, number_of_electrons)
from .potential import (PotentialConfig, PulseSpectrum, potential_on_grid,
                        pulse_spectrum, shape, time_factor)
from .propagator import (BogoliubovMatrix, EvolutionSchedule, dt_max,
                         evolve_basis, oracle_step, split_step)
from .runner import PRESETS, Preset, RunResult, run_simulation

__version__ = "0.1.0"

__all__ = [
    "C", "C2", "LAMBDA_E",
    "Grid", "FreeBasis", "build_grid", "build_free_basis", "free_eigenpair",
    "PotentialConfig", "PulseSpectrum", "shape", "time_factor",
    "potential_on_grid", "pulse_spectrum",
    "EvolutionSchedule", "BogoliubovMatrix", "dt_max", "split_step",
    "evolve_basis", "oracle_step",
    "number_of_electrons", "density", "energy_spectrum", "EnergySpectrum",
    "bound_states", "BoundStateSet",
    "PRESETS", "Preset", "RunResult", "run_simulation",
    "__version__",
]
