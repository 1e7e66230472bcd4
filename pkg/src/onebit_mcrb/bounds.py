"""Pseudo-true parameter, estimation bias, MCRB, MSE bound, and quantized CRB.

An estimator that treats one-bit quantized data as if it were unquantized
white-Gaussian data is misspecified.  Its asymptotic mean is the pseudo-true
parameter (the argmax of the expected assumed log-likelihood), the gap to the
true parameter is the bias, and the error covariance of any such MS-unbiased
estimator obeys the sandwich bound A^{-1} B A^{-1} built from the expected
gradient outer product B and expected Hessian A of the assumed log-likelihood
under the true quantized-data distribution.  The matching
correctly-specified benchmark for white noise is the quantized-data CRB.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import log_ndtr

from ._search import SearchConfig, argmax_correlation
from .errors import DegenerateSignalError, NumericalError
from .model import Theta, signal
from .orthant import MomentSet, moment_matrices_awgn, moment_matrices_colored
from .quantize import mean_vector, q_vector

__all__ = [
    "af",
    "maf",
    "pseudo_true",
    "bias_phi",
    "McrbIntermediates",
    "mcrb",
    "mse_bound",
    "quantized_crb",
    "BoundReport",
    "bound_report",
]

# closed-form [MCRB]_{1,1} must match the assembled sandwich to this accuracy
_CONSISTENCY_RTOL = 1e-8


def af(model, phi_scan: np.ndarray, phi: float) -> np.ndarray:
    """Unquantized ambiguity a^H(phi') a(phi), explicitly normalized.

    Peaks with value 1 at phi' = phi; independent of the amplitude.
    """
    a_true = model.steering(phi)
    mat = model.steering_matrix(np.asarray(phi_scan, dtype=float))
    corr = mat.conj() @ a_true
    norms = np.linalg.norm(mat, axis=1) * np.linalg.norm(a_true)
    return corr / norms


def maf(model, theta: Theta, noise, phi_scan: np.ndarray) -> np.ndarray:
    """Misspecified ambiguity a^H(phi') mu(theta), scaled to peak modulus 1."""
    mu = mean_vector(model, theta, noise)
    if not np.any(mu != 0.0):
        raise DegenerateSignalError("quantized mean vector is zero")
    mat = model.steering_matrix(np.asarray(phi_scan, dtype=float))
    corr = mat.conj() @ mu
    return corr / np.max(np.abs(corr))


def pseudo_true(model, theta: Theta, noise, search: SearchConfig) -> Theta:
    """Asymptotic mean of the misspecified estimator.

    phi_0 maximizes |a^H(phi') mu(theta)| (grid argmax, ties toward the
    smaller phi', then golden-section refinement); beta_0 = a^H(phi_0) mu.
    """
    mu = mean_vector(model, theta, noise)
    if not np.any(mu != 0.0):
        raise DegenerateSignalError("quantized mean vector is zero")
    phi0 = argmax_correlation(model, mu, search)
    beta0 = complex(np.vdot(model.steering(phi0), mu))
    return Theta(phi0, beta0)


def bias_phi(model, theta: Theta, noise, search: SearchConfig) -> float:
    """phi_0 - phi, in the units of phi; no angular wrapping."""
    return pseudo_true(model, theta, noise, search).phi - theta.phi


@dataclass(frozen=True)
class McrbIntermediates:
    """Element values and assembled matrices behind the closed-form bound."""

    j1: float
    j2: complex
    l1: float
    l2: complex
    l3: complex
    l4: float
    l5: float
    l6: float
    a_mat: np.ndarray
    b_mat: np.ndarray


def mcrb(model, theta: Theta, noise, moments: MomentSet, theta0: Theta,
         sigma2_assumed: float | None = None) -> tuple[McrbIntermediates, float]:
    """[MCRB]_{1,1} for the parameter of interest.

    ``moments`` must hold mu, M, P evaluated at the TRUE theta while the
    steering quantities are taken at the pseudo-true theta0; that pairing is
    what the element formulas require.  The closed-form scalar is checked
    against (A^{-1} B A^{-1})_{1,1}; disagreement beyond 1e-8 relative or a
    negative value raises NumericalError.  The assumed-model variance only
    scales A and B and cancels in the sandwich.
    """
    if sigma2_assumed is None:
        sigma2_assumed = noise.variance
    if sigma2_assumed <= 0.0:
        raise ValueError("assumed variance must be positive")

    a0 = model.steering(theta0.phi)
    da = model.steering_d1(theta0.phi)
    dda = model.steering_d2(theta0.phi)
    beta0 = theta0.beta
    mu, m_mat, p_mat = moments.mu, moments.M, moments.P

    j1 = float((np.vdot(mu, dda) * beta0).real)
    j2 = complex(np.vdot(da, mu))
    denom = abs(j2) ** 2 + j1
    if denom == 0.0:
        raise NumericalError("|J2|^2 + J1 vanished; bound undefined")

    a_m_da = complex(np.vdot(a0, m_mat @ da))
    da_m_da = float(np.vdot(da, m_mat @ da).real)
    a_m_a = float(np.vdot(a0, m_mat @ a0).real)

    l1 = float((beta0 ** 2 * (da @ (p_mat.conj() @ da))).real
               + abs(beta0) ** 2 * da_m_da)
    l2 = complex(np.conj(beta0) * np.vdot(da, p_mat @ a0.conj())
                 + beta0 * (a_m_da - 2.0 * (j2 * np.conj(beta0)).real))
    l3 = complex(np.vdot(a0, p_mat @ a0.conj()))
    br, bi = beta0.real, beta0.imag
    l4 = float(l3.imag - 2.0 * br * bi)
    l5 = float(l3.real + a_m_a - 2.0 * br * br)
    l6 = float(-l3.real + a_m_a - 2.0 * bi * bi)

    j2r, j2i = j2.real, j2.imag
    closed = (l1 + 2.0 * (j2 * np.conj(l2)).real + l6 * j2i ** 2 + l5 * j2r ** 2
              + 2.0 * l4 * j2i * j2r) / (2.0 * denom ** 2)

    a_mat = (2.0 / sigma2_assumed) * np.array([
        [j1, j2r, j2i],
        [j2r, -1.0, 0.0],
        [j2i, 0.0, -1.0],
    ])
    b_mat = (2.0 / sigma2_assumed ** 2) * np.array([
        [l1, l2.real, l2.imag],
        [l2.real, l5, l4],
        [l2.imag, l4, l6],
    ])
    try:
        x = np.linalg.solve(a_mat, b_mat)
        sandwich = np.linalg.solve(a_mat, x.T).T[0, 0]
    except np.linalg.LinAlgError as exc:
        raise NumericalError("expected-Hessian matrix A is singular") from exc

    scale = max(abs(closed), abs(sandwich), 1e-300)
    if abs(closed - sandwich) > _CONSISTENCY_RTOL * scale:
        raise NumericalError(
            f"closed-form bound {closed!r} disagrees with sandwich {sandwich!r}")
    if closed < 0.0 or not math.isfinite(closed):
        raise NumericalError(f"bound evaluated to {closed!r}")

    inter = McrbIntermediates(j1=j1, j2=j2, l1=l1, l2=l2, l3=l3, l4=l4, l5=l5,
                              l6=l6, a_mat=a_mat, b_mat=b_mat)
    return inter, float(closed)


def mse_bound(mcrb11: float, bias: float) -> float:
    """Lower bound on E[(phi_hat - phi)^2]: the MCRB plus squared bias."""
    return mcrb11 + bias * bias


def _psi(q: np.ndarray, variance: float) -> np.ndarray:
    # exp(-q^2) / (sigma^2 pi Q(q) Q(-q)), evaluated in log space so the
    # saturated tails underflow to 0 instead of producing 0/0
    q = np.asarray(q, dtype=float)
    return np.exp(-q * q - log_ndtr(-q) - log_ndtr(q)) / (variance * np.pi)


def quantized_crb(model, theta: Theta, noise) -> float:
    """CRB for unbiased estimation from the quantized data, white noise only."""
    if not noise.is_white:
        raise ValueError("quantized_crb is defined for white noise")
    a0 = model.steering(theta.phi)
    da = model.steering_d1(theta.phi)
    q = q_vector(model, theta, noise)
    dphi = theta.beta * da
    g_re = np.column_stack([dphi.real, a0.real, -a0.imag])
    g_im = np.column_stack([dphi.imag, a0.imag, a0.real])
    psi_re = _psi(q.real, noise.variance)
    psi_im = _psi(q.imag, noise.variance)
    fim = (g_re * psi_re[:, None]).T @ g_re + (g_im * psi_im[:, None]).T @ g_im
    try:
        inv = np.linalg.inv(fim)
    except np.linalg.LinAlgError as exc:
        raise NumericalError("quantized-data FIM is singular") from exc
    crb = float(inv[0, 0])
    if crb <= 0.0 or not math.isfinite(crb):
        raise NumericalError(f"quantized CRB evaluated to {crb!r}")
    return crb


@dataclass(frozen=True)
class BoundReport:
    """All bound quantities for one scenario point."""

    theta0: Theta
    bias_phi: float
    mcrb11: float
    mse_bound: float
    crb: float | None = None


def bound_report(model, theta: Theta, noise, search: SearchConfig, *,
                 orthant_method: str = "qmc", qmc_points: int = 2**16,
                 seed: int = 0, with_crb: bool | None = None) -> BoundReport:
    """Pseudo-true parameter, bias, MCRB, MSE bound (and CRB when white)."""
    theta0 = pseudo_true(model, theta, noise, search)
    bias = theta0.phi - theta.phi
    if noise.is_white:
        moments = moment_matrices_awgn(model, theta, noise)
    else:
        moments = moment_matrices_colored(
            model, theta, noise, method=orthant_method, qmc_points=qmc_points,
            seed=seed)
    _, mcrb11 = mcrb(model, theta, noise, moments, theta0)
    if with_crb is None:
        with_crb = noise.is_white
    crb = quantized_crb(model, theta, noise) if with_crb else None
    return BoundReport(theta0=theta0, bias_phi=bias, mcrb11=mcrb11,
                       mse_bound=mse_bound(mcrb11, bias), crb=crb)
