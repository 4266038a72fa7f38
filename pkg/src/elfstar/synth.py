"""Synthetic series for tests, demos and the bench harness."""

import numpy as np


def random_walk(n, alpha=2, step=0.05, start=20.0, seed=0):
    """Decimal random walk with exactly ``alpha`` fractional digits.

    Steps are drawn uniformly from the multiples of ``10**-alpha`` in
    ``[-step, step]``.  The walk runs on integers and each value is the
    correctly rounded double of ``d / 10**alpha``.
    """
    rng = np.random.default_rng(seed)
    scale = 10**alpha
    k = int(round(step * scale))
    d0 = int(round(start * scale))
    d = d0 + np.cumsum(rng.integers(-k, k + 1, size=n))
    return d.astype(np.float64) / float(scale)


def uniform(n, low=0.0, high=1.0, seed=0):
    return np.random.default_rng(seed).uniform(low, high, size=n)


def decimal_uniform(n, alpha=3, low=-1000.0, high=1000.0, seed=0):
    """Uniform values rounded to ``alpha`` decimals (no serial correlation)."""
    rng = np.random.default_rng(seed)
    scale = 10**alpha
    d = rng.integers(int(low * scale), int(high * scale) + 1, size=n)
    return d.astype(np.float64) / float(scale)


def specials():
    """NaNs with payloads, infinities, signed zeros, subnormals, extremes."""
    bits = np.array(
        [
            0x7FF8000000000000,  # quiet NaN
            0xFFF8000000000000,  # negative quiet NaN
            0x7FF0000000000001,  # signalling NaN
            0x7FF4000000000BAD,  # NaN with payload
            0x7FF0000000000000,  # +inf
            0xFFF0000000000000,  # -inf
            0x0000000000000000,  # +0
            0x8000000000000000,  # -0
            0x0000000000000001,  # smallest subnormal
            0x800FFFFFFFFFFFFF,  # largest negative subnormal
            0x0010000000000000,  # smallest normal
            0x7FEFFFFFFFFFFFFF,  # largest finite
        ],
        dtype=np.uint64,
    )
    return bits.view(np.float64)


def high_beta(n, seed=0):
    """Values with 16+ significant decimal digits, which are never erased."""
    rng = np.random.default_rng(seed)
    return rng.uniform(-np.pi, np.pi, size=n) * 10.0 ** rng.integers(-3, 4, size=n)
