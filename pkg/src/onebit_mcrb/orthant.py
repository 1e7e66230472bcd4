"""Second-moment matrices M = E[z z^H] and P = E[z z^T] of the quantized vector.

For white noise the off-diagonal entries are products of the per-sample means.
For colored noise each pair (i, l) requires the 16 joint sign probabilities of
(x_{i,R}, x_{i,I}, x_{l,R}, x_{l,I}), i.e. quadrivariate Gaussian orthant
probabilities.  Two evaluation paths are provided:

* ``qmc`` -- quasi Monte-Carlo integration of the four-dimensional rectangle
  probabilities (separation-of-variables transform over a scrambled Sobol
  sequence), the default.
* ``factorized`` -- because the pair covariance never couples real with
  imaginary parts, each 4-d probability is a product of two bivariate orthant
  probabilities.  Exact up to the bivariate routine's 1e-14, and much faster;
  kept as an independent cross-check and as an opt-in fast path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr, ndtri
from scipy.stats import qmc

from ._bvn import bvn_upper
from .errors import NumericalError
from .model import Theta, signal
from .quantize import mean_vector, single_sample_second_moments

__all__ = [
    "MomentSet",
    "PairwiseGaussian",
    "pair_orthant_probs",
    "moment_matrices_awgn",
    "moment_matrices_colored",
]

# quantized values by event index k: 0 -> -1-j, 1 -> -1+j, 2 -> 1-j, 3 -> 1+j
_ZVALS = np.array([-1.0 - 1j, -1.0 + 1j, 1.0 - 1j, 1.0 + 1j])
# sign of the real / imaginary part per event index
_SIGN_R = np.array([-1.0, -1.0, 1.0, 1.0])
_SIGN_I = np.array([-1.0, 1.0, -1.0, 1.0])

DEFAULT_QMC_POINTS = 2**16


@dataclass(frozen=True)
class MomentSet:
    """Quantized-data statistics mu, M = E[z z^H], P = E[z z^T]."""

    mu: np.ndarray
    M: np.ndarray
    P: np.ndarray


@dataclass(frozen=True)
class PairwiseGaussian:
    """Mean and covariance of (x_{i,R}, x_{i,I}, x_{l,R}, x_{l,I}).

    The covariance must carry the circularly-symmetric structure: no coupling
    between real and imaginary parts, per-sample variances sigma^2/2 on the
    diagonal and a single real cross term rho/2.
    """

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=float)
        cov = np.asarray(self.cov, dtype=float)
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "cov", cov)
        if mean.shape != (4,) or cov.shape != (4, 4):
            raise ValueError("PairwiseGaussian needs a 4-vector mean and 4x4 cov")
        scale = float(np.max(np.abs(cov)))
        tol = 1e-12 * max(scale, 1.0)
        zeros = [(0, 1), (0, 3), (1, 2), (2, 3)]
        if any(abs(cov[a, b]) > tol or abs(cov[b, a]) > tol for a, b in zeros):
            raise ValueError("real/imaginary parts must be uncoupled")
        if (abs(cov[0, 0] - cov[1, 1]) > tol or abs(cov[2, 2] - cov[3, 3]) > tol
                or abs(cov[0, 2] - cov[1, 3]) > tol):
            raise ValueError("covariance lacks the circular-symmetry pattern")
        if not np.allclose(cov, cov.T, atol=tol):
            raise ValueError("covariance must be symmetric")
        # positive definiteness of each 2x2 block, i.e. |rho| < sigma_i sigma_l
        if cov[0, 0] <= 0.0 or cov[2, 2] <= 0.0 or (
                cov[0, 2] ** 2 >= cov[0, 0] * cov[2, 2]):
            raise NumericalError("pair covariance is not positive definite")

    @classmethod
    def from_signal_pair(cls, s_i: complex, s_l: complex,
                         var_i: float, var_l: float, rho: float) -> "PairwiseGaussian":
        mean = np.array([s_i.real, s_i.imag, s_l.real, s_l.imag])
        cov = 0.5 * np.array([
            [var_i, 0.0, rho, 0.0],
            [0.0, var_i, 0.0, rho],
            [rho, 0.0, var_l, 0.0],
            [0.0, rho, 0.0, var_l],
        ])
        return cls(mean, cov)


def _sobol_points(n_points: int, rng: np.random.Generator) -> np.ndarray:
    engine = qmc.Sobol(d=3, scramble=True, seed=rng)
    m = int(np.log2(n_points))
    if 2**m == n_points:
        return engine.random_base2(m)
    return engine.random(n_points)


def _rectangle_probs_qmc(lower: np.ndarray, upper: np.ndarray, cov: np.ndarray,
                         points: np.ndarray) -> np.ndarray:
    """Gaussian rectangle probabilities, batched over rows of lower/upper.

    Sequential-conditioning transform: after Cholesky factorization each
    coordinate integrates to a product of conditional normal CDF differences,
    leaving a smooth integrand over the unit cube that the low-discrepancy
    points average.  Semi-infinite limits enter as 0/1 CDF values.
    """
    chol = np.linalg.cholesky(cov)
    n_batch, dim = lower.shape
    tiny = 1e-15
    d_cur = ndtr(lower[:, 0] / chol[0, 0])[:, None]
    e_cur = ndtr(upper[:, 0] / chol[0, 0])[:, None]
    f = np.broadcast_to(e_cur - d_cur, (n_batch, points.shape[0])).copy()
    ys = []
    for j in range(1, dim):
        w = points[:, j - 1][None, :]
        arg = np.clip(d_cur + w * (e_cur - d_cur), tiny, 1.0 - tiny)
        ys.append(ndtri(arg))
        partial = sum(chol[j, i] * ys[i] for i in range(j))
        d_cur = ndtr((lower[:, j][:, None] - partial) / chol[j, j])
        e_cur = ndtr((upper[:, j][:, None] - partial) / chol[j, j])
        f = f * (e_cur - d_cur)
    return f.mean(axis=1)


def _orthant_bounds(mean: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Rectangle limits for all 16 sign patterns of the centered pair vector."""
    signs = np.empty((16, 4))
    for idx in range(16):
        k_i, k_l = divmod(idx, 4)
        signs[idx] = [_SIGN_R[k_i], _SIGN_I[k_i], _SIGN_R[k_l], _SIGN_I[k_l]]
    lower = np.where(signs > 0, -mean, -np.inf)
    upper = np.where(signs > 0, np.inf, -mean)
    return lower, upper


def _pair_probs_factorized(pg: PairwiseGaussian) -> np.ndarray:
    sd = np.sqrt(np.diag(pg.cov))
    r = pg.cov[0, 2] / (sd[0] * sd[2])
    h = pg.mean / sd

    def part_probs(h_i, h_l):
        # P(eps_i x_i > 0, eps_l x_l > 0) over the 2x2 sign grid
        eps = np.array([-1.0, 1.0])
        ei = eps[:, None]
        el = eps[None, :]
        return bvn_upper(-ei * h_i, -el * h_l, ei * el * r)

    pr = part_probs(h[0], h[2])
    pi = part_probs(h[1], h[3])
    bit_r = (np.arange(4) >= 2).astype(int)
    bit_i = (np.arange(4) % 2).astype(int)
    out = np.empty((4, 4))
    for k_i in range(4):
        for k_l in range(4):
            out[k_i, k_l] = pr[bit_r[k_i], bit_r[k_l]] * pi[bit_i[k_i], bit_i[k_l]]
    return out


def pair_orthant_probs(pg: PairwiseGaussian, *, method: str = "qmc",
                       qmc_points: int = DEFAULT_QMC_POINTS,
                       rng: np.random.Generator | None = None) -> np.ndarray:
    """Joint PMF of a quantized sample pair as a (4, 4) array over (k_i, k_l).

    ``qmc`` integrates the sixteen 4-d Gaussian rectangle probabilities with a
    scrambled Sobol sequence and renormalizes the set to sum exactly to one;
    ``factorized`` multiplies the two exact bivariate orthant probabilities
    that the uncoupled covariance structure admits.
    """
    if method == "factorized":
        probs = _pair_probs_factorized(pg)
    elif method == "qmc":
        if rng is None:
            rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(0)))
        points = _sobol_points(qmc_points, rng)
        lower, upper = _orthant_bounds(pg.mean)
        probs = _rectangle_probs_qmc(lower, upper, pg.cov, points).reshape(4, 4)
    else:
        raise ValueError(f"unknown orthant method {method!r}")
    probs = np.clip(probs, 0.0, None)
    total = probs.sum()
    if not np.isfinite(total) or total <= 0.0:
        raise NumericalError("orthant probabilities did not integrate to a mass")
    return probs / total


def _moments_from_probs(probs: np.ndarray) -> tuple[complex, complex]:
    zi = _ZVALS[:, None]
    zl = _ZVALS[None, :]
    m_il = np.sum(probs * zi * zl.conj())
    p_il = np.sum(probs * zi * zl)
    return m_il, p_il


def moment_matrices_awgn(model, theta: Theta, noise) -> MomentSet:
    """Closed-form M, P for white noise: off-diagonals factor into means."""
    if not noise.is_white:
        raise ValueError("moment_matrices_awgn requires white noise; "
                         "use moment_matrices_colored")
    mu = mean_vector(model, theta, noise)
    m = np.outer(mu, mu.conj())
    p = np.outer(mu, mu)
    _, p_diag = single_sample_second_moments(mu)
    np.fill_diagonal(m, 2.0)
    np.fill_diagonal(p, p_diag)
    return MomentSet(mu=mu, M=m, P=p)


def _colored_factorized(s: np.ndarray, r_cov: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized factorized-path M, P off-diagonals for all pairs at once."""
    n = s.size
    iu, il = np.triu_indices(n, 1)
    sd = np.sqrt(np.diag(r_cov) / 2.0)
    corr = r_cov[iu, il] / (2.0 * sd[iu] * sd[il])
    if np.any(np.abs(corr) >= 1.0):
        raise NumericalError("pair covariance is not positive definite")
    h_ir, h_ii = s.real[iu] / sd[iu], s.imag[iu] / sd[iu]
    h_lr, h_li = s.real[il] / sd[il], s.imag[il] / sd[il]

    eps = np.array([-1.0, 1.0])
    ei = eps[:, None, None]
    el = eps[None, :, None]
    pr = bvn_upper(-ei * h_ir, -el * h_lr, ei * el * corr)   # (2, 2, npairs)
    pi = bvn_upper(-ei * h_ii, -el * h_li, ei * el * corr)

    bit_r = (np.arange(4) >= 2).astype(int)
    bit_i = np.arange(4) % 2
    probs = pr[bit_r[:, None], bit_r[None, :]] * pi[bit_i[:, None], bit_i[None, :]]
    probs = np.clip(probs, 0.0, None)
    probs /= probs.sum(axis=(0, 1))

    zi = _ZVALS[:, None, None]
    zl = _ZVALS[None, :, None]
    m_off = np.sum(probs * zi * zl.conj(), axis=(0, 1))
    p_off = np.sum(probs * zi * zl, axis=(0, 1))
    return m_off, p_off


def moment_matrices_colored(model, theta: Theta, noise, *, method: str = "qmc",
                            qmc_points: int = DEFAULT_QMC_POINTS,
                            seed: int = 0) -> MomentSet:
    """M, P from pairwise orthant probabilities under an arbitrary covariance.

    Only the N(N-1)/2 upper-triangle pairs are computed; Hermitian/symmetric
    structure fills the rest.  Each pair's QMC stream is keyed on
    (seed, i, l) so results are independent of evaluation order.
    """
    s = signal(model, theta)
    n = s.size
    r_cov = noise.covariance(n)
    mu = mean_vector(model, theta, noise)
    m = np.zeros((n, n), dtype=complex)
    p = np.zeros((n, n), dtype=complex)

    if method == "factorized":
        m_off, p_off = _colored_factorized(s, r_cov)
        iu, il = np.triu_indices(n, 1)
        m[iu, il] = m_off
        p[iu, il] = p_off
    elif method == "qmc":
        for i in range(n - 1):
            for l in range(i + 1, n):
                pg = PairwiseGaussian.from_signal_pair(
                    s[i], s[l], r_cov[i, i], r_cov[l, l], r_cov[i, l])
                rng = np.random.Generator(
                    np.random.Philox(np.random.SeedSequence([seed, i, l])))
                probs = pair_orthant_probs(
                    pg, method="qmc", qmc_points=qmc_points, rng=rng)
                m[i, l], p[i, l] = _moments_from_probs(probs)
    else:
        raise ValueError(f"unknown orthant method {method!r}")

    m = m + m.conj().T
    p = p + p.T
    _, p_diag = single_sample_second_moments(mu)
    np.fill_diagonal(m, 2.0)
    np.fill_diagonal(p, p_diag)
    return MomentSet(mu=mu, M=m, P=p)
