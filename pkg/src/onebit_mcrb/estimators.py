"""Misspecified ML estimation and the Monte Carlo benchmarking harness.

The estimator correlates the data against candidate steering vectors and
returns the grid argmax of |a^H(phi') w|^2 refined by golden-section search;
the identical procedure runs on fine (unquantized) and on one-bit quantized
inputs.  The Monte Carlo driver derives one counter-based RNG substream per
trial from (seed, trial index), so serial, chunked, and parallel executions
produce bit-identical results.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._search import SearchConfig, argmax_correlation
from .model import Theta, signal
from .noise import sample_noise, trial_rng
from .quantize import one_bit_quantize

__all__ = ["SearchConfig", "McResult", "ml_estimate", "monte_carlo"]


@dataclass(frozen=True)
class McResult:
    """Aggregate error statistics of one Monte Carlo run."""

    rmse: float
    mean_bias: float
    trials: int
    std_error: float


def ml_estimate(model, data: np.ndarray, search: SearchConfig, *,
                grid: np.ndarray | None = None,
                steering_matrix: np.ndarray | None = None) -> float:
    """argmax_phi' |a^H(phi') data|^2 over the search grid, then refined.

    Grid ties resolve toward the smallest phi'.  Raises
    DegenerateSignalError for all-zero data.
    """
    data = np.asarray(data)
    if data.size != model.n_samples:
        raise ValueError(
            f"data length {data.size} does not match model size {model.n_samples}")
    return argmax_correlation(model, data, search, grid=grid,
                              steering_matrix=steering_matrix)


def _run_trials(model, s, noise, search, quantized, seed, trials_idx, grid, amat,
                out):
    n = model.n_samples
    for t in trials_idx:
        rng = trial_rng(seed, int(t))
        x = s + sample_noise(noise, n, rng)
        data = one_bit_quantize(x) if quantized else x
        out[t] = ml_estimate(model, data, search, grid=grid, steering_matrix=amat)


def monte_carlo(model, theta: Theta, noise, search: SearchConfig, trials: int,
                *, quantized: bool = True, seed: int = 0,
                workers: int = 1) -> McResult:
    """RMSE and bias of the (misspecified) ML estimator over repeated draws.

    Each trial synthesizes s(theta) plus sampled noise, optionally quantizes,
    and estimates phi.  Results are deterministic for a fixed seed regardless
    of ``workers``; trial errors are aggregated in trial order.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    s = signal(model, theta)
    grid = model.grid(search.grid_size)
    amat = model.steering_matrix(grid)
    estimates = np.empty(trials)

    if workers <= 1:
        _run_trials(model, s, noise, search, quantized, seed,
                    range(trials), grid, amat, estimates)
    else:
        chunks = np.array_split(np.arange(trials), workers)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_run_trials, model, s, noise, search, quantized,
                            seed, chunk, grid, amat, estimates)
                for chunk in chunks if chunk.size
            ]
            for fut in futures:
                fut.result()

    errors = estimates - theta.phi
    rmse = float(np.sqrt(np.mean(errors**2)))
    mean_bias = float(np.mean(errors))
    if trials > 1:
        std_error = float(np.std(estimates, ddof=1) / np.sqrt(trials))
    else:
        std_error = 0.0
    return McResult(rmse=rmse, mean_bias=mean_bias, trials=trials,
                    std_error=std_error)
