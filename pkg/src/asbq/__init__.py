"""Pseudospectral laboratory for the Amick-Schonbek Boussinesq system."""

from .config import (ConfigError, ExperimentConfig, parse_config,
                     preset_config, preset_dict, preset_names)
from .diagnostics import NormRecord, axis_slice, record
from .evolve import EvolveConfig, IntegrationFault, evolve, rk4_step, rk4_update
from .grid import (SpectralField, TorusGrid, h1_seminorm, helmholtz_inverse,
                   lp_norm, make_grid, norm_functionals, spectral_derivative)
from .model import (ModelParams, ModelRHS, WaveState, cavitation_indicator,
                    rhs_1d, rhs_2d)
from .runner import RunReport, read_snapshot, run, write_snapshot
from .solitary import (SolitaryProfile, build_initial_data, cavitation,
                       cos_deform, crest_amplitude, decay_rate, gaussian_on_eta,
                       gaussian_on_vx, gaussian_on_vy, line_extend, localized,
                       profile_residual, solve_profile)
from .tracker import (FitUnavailableError, SingularityFit, WindowPolicy,
                      axis_modulus, estimate_vanishing_time, fit_ssf, stop_check)

__version__ = "0.1.0"
