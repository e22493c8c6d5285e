"""Numerical laboratory for the Pochhammer expansion of 1/zeta and its critical-function wave."""

from .bounds import BoundQuery, absolute_bound_monitor, crude_bound, threshold_x
from .coefficients import (
    CoefficientResult,
    Method,
    ModelParams,
    c_binomial,
    c_direct,
    c_exponential,
    poisson_mixture_check,
    psi,
    riesz_function,
)
from .errors import ConfigError, DomainError, PoleError, RefinementError, RHWaveError
from .mobius import MobiusTable, build_sieve, mu
from .pochhammer import pochhammer_asymptotic, pochhammer_base, pochhammer_model, reciprocal_bd
from .scanner import OscillationFeatures, ScanConfig, WaveSample, beta_sweep, extract_features, run_scan
from .special import (
    ZeroRecord,
    ZeroTable,
    build_zero_table,
    gamma_complex,
    zeta_complex,
    zeta_prime,
    zeta_real,
)
from .wave import WavePrediction, bd_identity_residual, first_zero_amplitude, psi_bar

__version__ = "0.1.0"
