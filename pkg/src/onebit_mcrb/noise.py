"""True-noise covariance models and the correlated complex Gaussian sampler.

White noise has covariance sigma^2 I.  Band-limited noise sampled at f_s has
the Toeplitz covariance [R]_{n,m} = sigma^2 sinc(2 B (n - m) / f_s); at the
Nyquist rate f_s = 2B the sinc hits integer zeros and the matrix collapses to
sigma^2 I exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import toeplitz

from .errors import DegenerateNoiseError, NumericalError, UndersamplingError

__all__ = ["WhiteNoise", "SincBandlimitedNoise", "sample_noise", "trial_rng"]

# relative eigenvalue floor for factorizing near-singular sinc covariances
_EIG_FLOOR = 1e-10


@dataclass(frozen=True)
class WhiteNoise:
    """Circular complex white Gaussian noise with per-sample variance sigma^2."""

    variance: float

    def __post_init__(self):
        if self.variance <= 0.0:
            raise DegenerateNoiseError("variance must be positive")

    @property
    def is_white(self) -> bool:
        return True

    def covariance(self, n_samples: int) -> np.ndarray:
        if n_samples < 1:
            raise ValueError("n_samples must be >= 1")
        return self.variance * np.eye(n_samples)


@dataclass(frozen=True)
class SincBandlimitedNoise:
    """Low-pass noise of bandwidth B sampled at rate f_s >= 2B."""

    variance: float
    bandwidth: float
    sample_rate: float

    def __post_init__(self):
        if self.variance <= 0.0:
            raise DegenerateNoiseError("variance must be positive")
        if self.bandwidth <= 0.0:
            raise ValueError("bandwidth must be positive")
        if self.sample_rate < 2.0 * self.bandwidth:
            raise UndersamplingError(
                f"sample rate {self.sample_rate} Hz below Nyquist rate "
                f"{2.0 * self.bandwidth} Hz"
            )

    @property
    def oversampling_factor(self) -> float:
        """f_s / (2B); 1 at the Nyquist rate."""
        return self.sample_rate / (2.0 * self.bandwidth)

    @property
    def is_white(self) -> bool:
        return self.sample_rate == 2.0 * self.bandwidth

    def covariance(self, n_samples: int) -> np.ndarray:
        if n_samples < 1:
            raise ValueError("n_samples must be >= 1")
        lags = np.arange(n_samples, dtype=float)
        col = self.variance * np.sinc(2.0 * self.bandwidth * lags / self.sample_rate)
        return toeplitz(col)


@lru_cache(maxsize=64)
def _real_part_factor(noise, n_samples: int) -> np.ndarray:
    """Factor F with F F^T = R/2, the covariance of each real part.

    Symmetric eigendecomposition with eigenvalues floored at
    1e-10 * sigma^2, which keeps numerically singular oversampled sinc
    kernels factorizable without touching any simulated SNR regime.
    """
    r = noise.covariance(n_samples)
    w, v = np.linalg.eigh(r)
    w = np.maximum(w, _EIG_FLOOR * noise.variance)
    factor = v * np.sqrt(w / 2.0)
    if not np.all(np.isfinite(factor)):
        raise NumericalError(f"covariance factorization failed for {noise!r}")
    return factor


def sample_noise(noise, n_samples: int, rng: np.random.Generator) -> np.ndarray:
    """One circularly symmetric complex Gaussian vector with covariance R.

    Real and imaginary parts are drawn independently with covariance R/2, so
    E[v v^H] = R and the pseudo-covariance E[v v^T] vanishes.
    """
    factor = _real_part_factor(noise, n_samples)
    re = factor @ rng.standard_normal(n_samples)
    im = factor @ rng.standard_normal(n_samples)
    return re + 1j * im


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Counter-based substream for one Monte Carlo trial.

    Philox keyed on (seed, trial) gives identical draws whether trials run
    serially or in parallel, in any order.
    """
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, trial])))
