"""Operation-count model for the grid correlator, one-bit versus fine inputs.

Counting unit: one real multiplication, addition, or subtraction.  Per grid
point, the fine-data correlator spends 6 ops on each a_n^* x_n product
(4 multiplies, 2 adds), 2(N-1) ops summing N complex terms, and 3 ops on the
squared modulus: (8N + 1) in total.  With one-bit data every product
a_n^* z_n is one of {+-f_n +- j d_n} with f = Re a + Im a, d = Re a - Im a,
so the products come from a lookup table (4N ops per grid point to build,
once, offline) and only (2N + 1) ops remain online.  The online ratio tends
to 1/4, and to U/4 when the quantized input is oversampled U-fold.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "OpCount",
    "cost_fine",
    "cost_quantized",
    "ratio",
    "oversampled_ratio",
    "OpCounter",
    "quantized_lookup",
    "correlator_score_fine",
    "correlator_score_quantized",
]


@dataclass(frozen=True)
class OpCount:
    """Real-operation count for a grid search, offline table cost kept apart."""

    real_ops: int
    n_samples: int
    grid_size: int
    offline_ops: int = 0

    def __post_init__(self):
        if self.real_ops < 0 or self.offline_ops < 0:
            raise ValueError("operation counts cannot be negative")


def cost_quantized(n_samples: int, grid_size: int) -> OpCount:
    """(2N + 1) K online ops; the 4NK lookup build is reported as offline."""
    _validate(n_samples, grid_size)
    return OpCount(real_ops=(2 * n_samples + 1) * grid_size,
                   n_samples=n_samples, grid_size=grid_size,
                   offline_ops=4 * n_samples * grid_size)


def cost_fine(n_samples: int, grid_size: int) -> OpCount:
    """(8N + 1) K ops for the fine-quantized correlator search."""
    _validate(n_samples, grid_size)
    return OpCount(real_ops=(8 * n_samples + 1) * grid_size,
                   n_samples=n_samples, grid_size=grid_size)


def _validate(n_samples, grid_size):
    if n_samples < 1 or grid_size < 1:
        raise ValueError("n_samples and grid_size must be >= 1")


def ratio(n_samples: int, grid_size: int = 1) -> float:
    """Online cost ratio quantized / fine; tends to 1/4 as N grows."""
    return (cost_quantized(n_samples, grid_size).real_ops
            / cost_fine(n_samples, grid_size).real_ops)


def oversampled_ratio(n_samples: int, grid_size: int, oversampling: float) -> float:
    """(2 U N + 1) / (8 N + 1): quantized cost at U N samples over fine at N."""
    _validate(n_samples, grid_size)
    if oversampling <= 0.0:
        raise ValueError("oversampling factor must be positive")
    return (2.0 * oversampling * n_samples + 1.0) / (8.0 * n_samples + 1.0)


class OpCounter:
    """Counts real multiply/add/subtract while computing through it."""

    def __init__(self):
        self.count = 0

    def mul(self, a, b):
        self.count += 1
        return a * b

    def add(self, a, b):
        self.count += 1
        return a + b

    def sub(self, a, b):
        self.count += 1
        return a - b


def quantized_lookup(a_vec: np.ndarray, counter: OpCounter):
    """Per-sample product table {+-f_n, +-d_n} for one grid point (4N ops)."""
    f = [counter.add(a.real, a.imag) for a in a_vec]
    d = [counter.sub(a.real, a.imag) for a in a_vec]
    neg_f = [counter.sub(0.0, v) for v in f]
    neg_d = [counter.sub(0.0, v) for v in d]
    return f, d, neg_f, neg_d


def _accumulate(parts, counter: OpCounter):
    # summing N complex terms: 2(N-1) real additions
    acc_re, acc_im = parts[0]
    for re, im in parts[1:]:
        acc_re = counter.add(acc_re, re)
        acc_im = counter.add(acc_im, im)
    # squared modulus: 2 multiplies + 1 add
    return counter.add(counter.mul(acc_re, acc_re), counter.mul(acc_im, acc_im))


def correlator_score_fine(a_vec: np.ndarray, x: np.ndarray,
                          counter: OpCounter) -> float:
    """|a^H x|^2 computed scalar-by-scalar under the counting rules."""
    parts = []
    for a, v in zip(a_vec, x):
        re = counter.add(counter.mul(v.real, a.real), counter.mul(v.imag, a.imag))
        im = counter.sub(counter.mul(v.imag, a.real), counter.mul(v.real, a.imag))
        parts.append((re, im))
    return _accumulate(parts, counter)


def correlator_score_quantized(tables, z: np.ndarray,
                               counter: OpCounter) -> float:
    """|a^H z|^2 from the sign-indexed lookup table; no per-sample arithmetic."""
    f, d, neg_f, neg_d = tables
    parts = []
    for n, zn in enumerate(z):
        zr = zn.real >= 0
        zi = zn.imag >= 0
        if zr and zi:
            parts.append((f[n], d[n]))
        elif zr and not zi:
            parts.append((d[n], neg_f[n]))
        elif not zr and zi:
            parts.append((neg_d[n], f[n]))
        else:
            parts.append((neg_f[n], neg_d[n]))
    return _accumulate(parts, counter)
