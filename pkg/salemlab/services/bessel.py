"""
Bessel function of the first kind, order zero.

The domain is split in three:
  [0, 8]    ascending power series
  (8, 25)   Miller backward recurrence normalised by J0 + 2 sum J_2k = 1
  [25, inf) Hankel asymptotic expansion, truncated at its smallest term

Absolute error is below 1e-13 on each branch.
"""

import math

import numpy as np

SERIES_LIMIT = 8.0
HANKEL_LIMIT = 25.0
_MAX_TERMS = 80


def _series(x: np.ndarray) -> np.ndarray:
    q = -(x * x) / 4.0
    term = np.ones_like(x)
    total = np.ones_like(x)
    for k in range(1, _MAX_TERMS):
        term = term * q / (k * k)
        total += term
        if np.all(np.abs(term) < 1e-18):
            break
    return total


def _miller(x: np.ndarray) -> np.ndarray:
    top = 2 * ((int(x.max()) + 20 + int(math.sqrt(40.0 * x.max()))) // 2)
    upper = np.zeros_like(x)  # J_{k+1}
    current = np.full_like(x, 1e-30)  # J_k
    norm = np.zeros_like(x)
    for k in range(top, 0, -1):
        lower = (2.0 * k / x) * current - upper
        upper, current = current, lower
        if (k - 1) % 2 == 0 and k - 1 > 0:
            norm += 2.0 * current
        big = np.abs(current) > 1e250
        if np.any(big):
            upper[big] *= 1e-250
            current[big] *= 1e-250
            norm[big] *= 1e-250
    return current / (current + norm)


def _hankel(x: np.ndarray) -> np.ndarray:
    eight_x = 8.0 * x
    term = np.ones_like(x)
    p = np.ones_like(x)
    q = np.zeros_like(x)
    active = np.ones(x.shape, dtype=bool)
    for k in range(1, _MAX_TERMS):
        nxt = term * (-((2 * k - 1) ** 2)) / (k * eight_x)
        active &= np.abs(nxt) < np.abs(term)
        term = np.where(active, nxt, 0.0)
        if k % 2 == 0:
            p += (-1) ** (k // 2) * term
        else:
            q += (-1) ** ((k - 1) // 2) * term
        if not np.any(active & (np.abs(term) > 1e-18)):
            break
    chi = x - math.pi / 4.0
    return np.sqrt(2.0 / (math.pi * x)) * (p * np.cos(chi) - q * np.sin(chi))


def j0(x):
    """J0 for a scalar or array argument."""
    arr = np.abs(np.asarray(x, dtype=float))
    flat = arr.reshape(-1)
    out = np.empty_like(flat)
    small = flat <= SERIES_LIMIT
    large = flat >= HANKEL_LIMIT
    middle = ~(small | large)
    if np.any(small):
        out[small] = _series(flat[small])
    if np.any(middle):
        out[middle] = _miller(flat[middle])
    if np.any(large):
        out[large] = _hankel(flat[large])
    out = out.reshape(arr.shape)
    return float(out) if out.ndim == 0 else out
