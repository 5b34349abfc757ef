"""Renormalization-group flow of the square-well-regularized inverse-square potential."""

from .errors import (
    BracketError,
    DomainError,
    InvSqError,
    LevelRangeError,
    NumericalError,
    ResolutionError,
    SingularInputError,
    UnsupportedBranchError,
)
from .flow import FlowParams, FlowTrace, cycle_period, detect_discontinuities, omega_of_x, singular_points, trace_flow
from .oracle import PotentialSpec, WaveSolution, closed_zero_energy, integrate_radial, matching_residual, shoot_bound_state, small_r_phase
from .riemann import BranchRoot, OmegaValue, beta0, beta_n, integrand_values, oracle_root
from .specialfn import arg_gamma_one_plus_i_nu, bessel_k_imag_order
from .spectrum import SpectrumLevel, SpectrumParams, bound_state_k, case_phase_B, spectrum_ratio

__version__ = "0.1.0"
