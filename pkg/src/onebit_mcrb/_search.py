"""Grid-plus-golden-section argmax used by the bounds and the estimators."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSignalError

__all__ = ["SearchConfig", "golden_max", "argmax_correlation"]

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class SearchConfig:
    """Coarse grid size and golden-section refinement tolerance."""

    grid_size: int = 4096
    refine_tolerance: float = 1e-8

    def __post_init__(self):
        if self.grid_size < 2:
            raise ValueError("grid_size must be >= 2")
        if self.refine_tolerance <= 0.0:
            raise ValueError("refine_tolerance must be positive")


def golden_max(f, lo: float, hi: float, tol: float) -> float:
    """Maximize unimodal f on [lo, hi] to bracket width tol.

    Ties keep the left interval, so equal-score plateaus resolve toward the
    smaller argument.
    """
    a, b = float(lo), float(hi)
    h = b - a
    if h <= tol:
        return 0.5 * (a + b)
    c = b - _INVPHI * h
    d = a + _INVPHI * h
    fc, fd = f(c), f(d)
    while h > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            h = b - a
            c = b - _INVPHI * h
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + _INVPHI * h
            fd = f(d)
    return 0.5 * (a + b)


def argmax_correlation(model, vec: np.ndarray, search: SearchConfig, *,
                       grid: np.ndarray | None = None,
                       steering_matrix: np.ndarray | None = None) -> float:
    """phi maximizing |a^H(phi) vec|: coarse grid argmax, then refinement.

    Grid ties break toward the smallest phi (first maximum).  ``grid`` and
    ``steering_matrix`` may be passed in to amortize their construction over
    many calls with the same model and search config.
    """
    vec = np.asarray(vec)
    if not np.any(vec != 0.0):
        raise DegenerateSignalError("cannot locate a correlation peak of zero data")
    if grid is None:
        grid = model.grid(search.grid_size)
    if steering_matrix is None:
        steering_matrix = model.steering_matrix(grid)
    scores = np.abs(steering_matrix.conj() @ vec)
    k = int(np.argmax(scores))

    lo, hi = model.domain
    span = hi - lo
    lo_in = lo if model.contains(lo) else lo + 1e-12 * span
    hi_in = hi - 1e-12 * span
    step = grid[1] - grid[0] if grid.size > 1 else span
    a = max(lo_in, grid[k] - step)
    b = min(hi_in, grid[k] + step)

    def score(phi: float) -> float:
        return abs(np.vdot(model.steering(phi), vec))

    return golden_max(score, a, b, search.refine_tolerance)
