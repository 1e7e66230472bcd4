"""Bounds and benchmarks for parameter estimation from one-bit quantized data.

The package computes the pseudo-true parameter, estimation bias, misspecified
Cramer-Rao bound, MSE bound, and quantized-data CRB for signal models
s(theta) = beta a(phi) observed through a complex one-bit quantizer, covering
white and oversampled band-limited noise, and validates them against Monte
Carlo runs of the misspecified ML estimator.
"""

from .bounds import (BoundReport, McrbIntermediates, af, bias_phi,
                     bound_report, maf, mcrb, mse_bound, pseudo_true,
                     quantized_crb)
from .complexity import (OpCount, cost_fine, cost_quantized, oversampled_ratio,
                         ratio)
from .errors import (DegenerateNoiseError, DegenerateSignalError, DomainError,
                     NumericalError, ScenarioError, UndersamplingError)
from .estimators import McResult, SearchConfig, ml_estimate, monte_carlo
from .model import ComplexTone, Theta, UniformLinearArray, signal
from .noise import SincBandlimitedNoise, WhiteNoise, sample_noise, trial_rng
from .orthant import (MomentSet, PairwiseGaussian, moment_matrices_awgn,
                      moment_matrices_colored, pair_orthant_probs)
from .quantize import (mean_vector, one_bit_quantize, q_vector, qfunc,
                       sample_pmf, single_sample_second_moments)

__version__ = "0.1.0"

__all__ = [
    "Theta", "UniformLinearArray", "ComplexTone", "signal",
    "WhiteNoise", "SincBandlimitedNoise", "sample_noise", "trial_rng",
    "qfunc", "one_bit_quantize", "q_vector", "sample_pmf", "mean_vector",
    "single_sample_second_moments",
    "MomentSet", "PairwiseGaussian", "pair_orthant_probs",
    "moment_matrices_awgn", "moment_matrices_colored",
    "af", "maf", "pseudo_true", "bias_phi", "mcrb", "mse_bound",
    "quantized_crb", "McrbIntermediates", "BoundReport", "bound_report",
    "SearchConfig", "McResult", "ml_estimate", "monte_carlo",
    "OpCount", "cost_fine", "cost_quantized", "ratio", "oversampled_ratio",
    "DomainError", "DegenerateNoiseError", "UndersamplingError",
    "DegenerateSignalError", "NumericalError", "ScenarioError",
]
