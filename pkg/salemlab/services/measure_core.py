"""Exact measure algebra on step measures and finite atom lists."""

import logging
import math
from bisect import bisect_left
from fractions import Fraction
from typing import Union

import numpy as np

from ..core.exceptions import EmptyMeasure, InvalidArgument, InvalidInterval
from ..schemas.measure_schemas import AtomMeasure, GridMeasure
from .parallel import parallel_scan

logger = logging.getLogger(__name__)

MERGE_DIGITS = 15
_MAX_BLOCK = 1 << 22  # complex entries per transform block


def _require_atoms(*measures: AtomMeasure) -> None:
    for m in measures:
        if m.size == 0:
            raise EmptyMeasure("measure has no atoms")


def total_mass(m: Union[GridMeasure, AtomMeasure]) -> float:
    """Total mass; a GridMeasure is a probability measure."""
    if isinstance(m, GridMeasure):
        return 1.0
    _require_atoms(m)
    return math.fsum(m.weights.tolist())


def measure_of_interval(m: GridMeasure, lo: float, hi: float) -> Fraction:
    """
    Exact mass of [lo, hi] under the step measure.

    Args:
        m: Level measure
        lo: Left end (any real or Fraction)
        hi: Right end

    Returns:
        The mass as a Fraction
    """
    if lo > hi:
        raise InvalidInterval(f"lo={lo} exceeds hi={hi}")
    n = m.scale_den
    u_lo = (Fraction(lo) - 1) * n
    u_hi = (Fraction(hi) - 1) * n
    first_cell = math.floor(u_lo)
    last_cell = math.ceil(u_hi) - 1
    if last_cell < first_cell:
        return Fraction(0)

    offsets = m.offsets
    start = bisect_left(offsets, first_cell)
    stop = bisect_left(offsets, last_cell + 1)
    if stop <= start:
        return Fraction(0)

    covered = Fraction(stop - start)
    if offsets[start] == first_cell:
        covered -= u_lo - first_cell
    if offsets[stop - 1] == last_cell:
        covered -= last_cell + 1 - u_hi
    return covered / m.count


def cdf(m: GridMeasure, t: float) -> Fraction:
    """F_j(t) = mu_j((-inf, t])."""
    if t < 1:
        return Fraction(0)
    if t >= 2:
        return Fraction(1)
    return measure_of_interval(m, 1, t)


def _merge_keys(values: np.ndarray) -> np.ndarray:
    """Round each coordinate to MERGE_DIGITS significant digits as (exponent, mantissa) pairs."""
    magnitude = np.abs(values)
    exponent = np.zeros_like(values)
    nonzero = magnitude > 0
    exponent[nonzero] = np.floor(np.log10(magnitude[nonzero]))
    mantissa = np.round(values * 10.0 ** (MERGE_DIGITS - 1 - exponent))
    # log10 can land one decade off near powers of ten
    overflow = np.abs(mantissa) >= 10.0**MERGE_DIGITS
    exponent[overflow] += 1
    mantissa[overflow] = np.round(values[overflow] * 10.0 ** (MERGE_DIGITS - 1 - exponent[overflow]))
    return np.column_stack([exponent, mantissa])


def merge_atoms(positions: np.ndarray, weights: np.ndarray, dim: int = 1) -> AtomMeasure:
    """Collapse atoms whose positions agree to MERGE_DIGITS significant digits."""
    positions = np.asarray(positions, dtype=float)
    weights = np.asarray(weights, dtype=float)
    coords = positions.reshape(-1, dim)
    keys = np.hstack([_merge_keys(coords[:, c]) for c in range(dim)])
    _, first, inverse = np.unique(keys, axis=0, return_index=True, return_inverse=True)
    merged_weights = np.bincount(inverse.reshape(-1), weights=weights, minlength=first.size)
    merged = coords[first]
    order = np.lexsort(merged.T[::-1])
    merged, merged_weights = merged[order], merged_weights[order]
    if positions.shape[0] != merged.shape[0]:
        logger.debug(f"Merged {positions.shape[0]} atoms into {merged.shape[0]}")
    return AtomMeasure.from_arrays(merged.reshape(-1) if dim == 1 else merged, merged_weights, dim)


def product_measure(mu: AtomMeasure, nu: AtomMeasure) -> AtomMeasure:
    """
    Pushforward of mu x nu under (r, y) -> r y.

    Args:
        mu: Dilation measure on the line
        nu: Measure on the line or in the plane

    Returns:
        The merged product measure mu . nu
    """
    _require_atoms(mu, nu)
    if mu.dim != 1:
        raise InvalidArgument("the dilating measure must live on the line")
    radii = mu.positions
    if nu.dim == 1:
        positions = np.outer(radii, nu.positions).reshape(-1)
    else:
        positions = (radii[:, None, None] * nu.positions[None, :, :]).reshape(-1, 2)
    weights = np.outer(mu.weights, nu.weights).reshape(-1)
    return merge_atoms(positions, weights, nu.dim)


def discretize(m: GridMeasure) -> AtomMeasure:
    """One atom of mass 1/T_j at the midpoint of each level interval."""
    midpoints = 1.0 + (m.offsets_array + 0.5) / m.scale_den
    return AtomMeasure.from_arrays(midpoints, np.full(m.count, 1.0 / m.count), 1)


def convolve(a: AtomMeasure, b: AtomMeasure) -> AtomMeasure:
    """Convolution: atoms x + y with weight w_x w_y."""
    _require_atoms(a, b)
    if a.dim != b.dim:
        raise InvalidArgument("cannot convolve measures of different dimension")
    if a.dim == 1:
        positions = np.add.outer(a.positions, b.positions).reshape(-1)
    else:
        positions = (a.positions[:, None, :] + b.positions[None, :, :]).reshape(-1, 2)
    weights = np.outer(a.weights, b.weights).reshape(-1)
    return merge_atoms(positions, weights, a.dim)


def transform_kernel(positions: np.ndarray, weights: np.ndarray, dim: int = 1):
    """Vectorized xi -> sum w exp(-2 pi i x . xi); weights may be signed."""
    rows = max(1, _MAX_BLOCK // max(1, weights.shape[0]))

    def kernel(xis: np.ndarray) -> np.ndarray:
        out = np.empty(xis.shape[0], dtype=complex)
        for i in range(0, xis.shape[0], rows):
            block = xis[i : i + rows]
            if dim == 1:
                phase = np.multiply.outer(block, positions)
            else:
                phase = block @ positions.T
            out[i : i + rows] = np.sum(np.exp(-2j * np.pi * phase) * weights, axis=1)
        return out

    return kernel


def fourier_atoms(m: AtomMeasure, xi) -> Union[complex, np.ndarray]:
    """
    Transform sum_x w exp(-2 pi i x . xi) of an atom list.

    Args:
        m: Atom measure
        xi: A frequency (real, or 2-vector for planar measures) or an array of them

    Returns:
        complex for a single frequency, otherwise an array
    """
    xi = np.asarray(xi, dtype=float)
    single = xi.ndim == 0 if m.dim == 1 else xi.ndim == 1
    points = xi.reshape(-1) if m.dim == 1 else xi.reshape(-1, 2)
    if m.size == 0:
        values = np.zeros(points.shape[0], dtype=complex)
    else:
        values = parallel_scan(transform_kernel(m.positions, m.weights, m.dim), points)
    return complex(values[0]) if single else values
