"""Parametric signal families s(theta) = beta * a(phi) with analytic derivatives.

Two steering families are provided:

* :class:`UniformLinearArray` -- half-wavelength ULA for direction-of-arrival,
  a_n(phi) = N^{-1/2} exp[j pi (n - (N+1)/2) sin(phi)], phi in (-pi/2, pi/2).
* :class:`ComplexTone` -- sampled complex exponential for frequency estimation,
  a_n(phi) = N^{-1/2} exp[j 2 pi phi t_n] on a time grid symmetric around zero,
  phi in [0, B).

Both are unit norm and satisfy da^H(phi) a(phi) = 0 on their whole domain,
which the bound formulas rely on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

__all__ = ["Theta", "UniformLinearArray", "ComplexTone", "signal"]


@dataclass(frozen=True)
class Theta:
    """Parameter triple [phi, Re(beta), Im(beta)].

    ``phi`` is the parameter of interest (radians for DOA models, Hz for tone
    models) and ``beta`` the complex amplitude.
    """

    phi: float
    beta: complex

    @classmethod
    def from_polar(cls, phi: float, magnitude: float, phase_rad: float) -> "Theta":
        return cls(phi, magnitude * complex(math.cos(phase_rad), math.sin(phase_rad)))


@dataclass(frozen=True)
class UniformLinearArray:
    """Half-wavelength uniform linear array with unit-norm steering."""

    n_sensors: int

    def __post_init__(self):
        if self.n_sensors < 2:
            raise ValueError("ULA needs at least 2 sensors")

    @property
    def domain(self) -> tuple[float, float]:
        return (-math.pi / 2, math.pi / 2)

    @property
    def n_samples(self) -> int:
        return self.n_sensors

    def contains(self, phi: float) -> bool:
        lo, hi = self.domain
        return lo < phi < hi

    def _check(self, phi):
        if not np.all((phi > -math.pi / 2) & (phi < math.pi / 2)):
            raise DomainError(f"DOA {phi} outside (-pi/2, pi/2)")

    def _offsets(self) -> np.ndarray:
        n = self.n_sensors
        # exactly antisymmetric: +-0.5, +-1.5, ... for even n
        return np.arange(1, n + 1, dtype=float) - (n + 1) / 2.0

    def steering(self, phi: float) -> np.ndarray:
        self._check(phi)
        g = self._offsets()
        return np.exp(1j * np.pi * g * math.sin(phi)) / math.sqrt(self.n_sensors)

    def steering_d1(self, phi: float) -> np.ndarray:
        g = self._offsets()
        return (1j * np.pi * g * math.cos(phi)) * self.steering(phi)

    def steering_d2(self, phi: float) -> np.ndarray:
        g = np.pi * self._offsets()
        c, s = math.cos(phi), math.sin(phi)
        return (-(g * c) ** 2 - 1j * g * s) * self.steering(phi)

    def steering_matrix(self, phis: np.ndarray) -> np.ndarray:
        """Steering vectors for a grid of angles, stacked as rows (K, N)."""
        phis = np.asarray(phis, dtype=float)
        self._check(phis)
        g = self._offsets()
        return np.exp(1j * np.pi * np.sin(phis)[:, None] * g) / math.sqrt(self.n_sensors)

    def grid(self, k: int) -> np.ndarray:
        """K search points strictly inside the open domain (half-step inset)."""
        lo, hi = self.domain
        step = (hi - lo) / k
        return lo + (np.arange(k) + 0.5) * step


@dataclass(frozen=True)
class ComplexTone:
    """Complex exponential on a symmetric time grid t_1 = -T/2 ... t_N = T/2.

    ``duration`` is the observation interval T (s), ``sample_rate`` f_s (Hz)
    with T * f_s an integer, and ``bandwidth`` the low-pass bandwidth B (Hz)
    serving as the open upper edge of the frequency domain [0, B).
    """

    duration: float
    sample_rate: float
    bandwidth: float

    def __post_init__(self):
        if self.duration <= 0 or self.sample_rate <= 0 or self.bandwidth <= 0:
            raise ValueError("duration, sample_rate and bandwidth must be positive")
        steps = self.duration * self.sample_rate
        if abs(steps - round(steps)) > 1e-9:
            raise ValueError("duration * sample_rate must be an integer sample count")

    @property
    def n_samples(self) -> int:
        return int(round(self.duration * self.sample_rate)) + 1

    @property
    def times(self) -> np.ndarray:
        n = self.n_samples
        ts = 1.0 / self.sample_rate
        # (k - (n-1)/2) * ts is exactly antisymmetric in floating point
        return (np.arange(n, dtype=float) - (n - 1) / 2.0) * ts

    @property
    def domain(self) -> tuple[float, float]:
        return (0.0, self.bandwidth)

    def contains(self, phi: float) -> bool:
        return 0.0 <= phi < self.bandwidth

    def _check(self, phi):
        if not np.all((phi >= 0.0) & (phi < self.bandwidth)):
            raise DomainError(f"frequency {phi} outside [0, {self.bandwidth})")

    def steering(self, phi: float) -> np.ndarray:
        self._check(phi)
        return np.exp(2j * np.pi * phi * self.times) / math.sqrt(self.n_samples)

    def steering_d1(self, phi: float) -> np.ndarray:
        return (2j * np.pi * self.times) * self.steering(phi)

    def steering_d2(self, phi: float) -> np.ndarray:
        return -((2.0 * np.pi * self.times) ** 2) * self.steering(phi)

    def steering_matrix(self, phis: np.ndarray) -> np.ndarray:
        phis = np.asarray(phis, dtype=float)
        self._check(phis)
        t = self.times
        return np.exp(2j * np.pi * phis[:, None] * t) / math.sqrt(self.n_samples)

    def grid(self, k: int) -> np.ndarray:
        """K search points covering [0, B)."""
        return np.linspace(0.0, self.bandwidth, k, endpoint=False)


def signal(model, theta: Theta) -> np.ndarray:
    """Noise-free measurement vector s(theta) = beta * a(phi)."""
    return theta.beta * model.steering(theta.phi)
