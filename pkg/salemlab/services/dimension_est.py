"""Riesz energies and Hausdorff / Fourier dimension estimates."""

import logging
import math
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import trapezoid
from scipy.special import gamma

from ..core.config import settings
from ..core.exceptions import EmptyMeasure, InvalidArgument, InvalidExponent, NonconvergentTail
from ..schemas.construction_schemas import CantorMeasure
from ..schemas.energy_schemas import EnergyResult, EnergySpec
from ..schemas.fourier_schemas import DecayReport
from ..schemas.measure_schemas import AtomMeasure
from .cantor_construct import anchors_at, level_measure
from .fourier_lab import decay_fit
from .measure_core import measure_of_interval

logger = logging.getLogger(__name__)

Transform = Callable[[np.ndarray], np.ndarray]

_PAIR_BLOCK = 1 << 22
ANGLES = 64
TAIL_BINS = 8


def check_exponent(s: float, d: int) -> None:
    if not 0 < s < d:
        raise InvalidExponent(f"s={s} must lie in (0, {d})")


def riesz_constant(d: int, s: float) -> float:
    """c(d, s) = pi^(s - d/2) Gamma((d - s)/2) / Gamma(s/2), so I_s = c int |mu^|^2 |xi|^(s-d)."""
    check_exponent(s, d)
    return float(math.pi ** (s - d / 2.0) * gamma((d - s) / 2.0) / gamma(s / 2.0))


def _cell_kernel(r: np.ndarray, h: float, s: float) -> np.ndarray:
    """Average of |x - y|^(-s) over two cells of width h whose centres are r apart."""
    p = 2.0 - s
    second = np.abs(r + h) ** p - 2.0 * np.abs(r) ** p + np.abs(r - h) ** p
    return second / ((1.0 - s) * (2.0 - s) * h * h)


def energy_direct(m: AtomMeasure, spec: EnergySpec) -> EnergyResult:
    """
    Pairwise s-energy sum_{x,y} w_x w_y max(|x - y|, eps)^(-s).

    With eps = 0, coincident pairs (the diagonal included) are left out and their
    mass is reported. With cell_width h > 0 every atom is spread uniformly over a
    cell of width h and the exact cell-averaged kernel is used for all pairs.

    Args:
        m: Atom measure
        spec: Energy parameters

    Returns:
        EnergyResult
    """
    check_exponent(spec.s, spec.d)
    if m.size == 0:
        raise EmptyMeasure("measure has no atoms")
    if m.dim != spec.d:
        raise InvalidArgument(f"measure lives in d={m.dim}, spec has d={spec.d}")
    s, eps, h = spec.s, spec.mollify_eps, spec.cell_width
    pts = m.positions if m.dim == 2 else m.positions[:, None]
    w = m.weights
    rows = max(1, _PAIR_BLOCK // m.size)

    parts: List[float] = []
    coincident: List[float] = []
    for start in range(0, m.size, rows):
        block = pts[start : start + rows]
        wb = w[start : start + rows]
        if h > 0:
            diff = block[:, 0][:, None] - pts[:, 0][None, :]
            kernel = _cell_kernel(diff, h, s)
        else:
            dist = np.sqrt(((block[:, None, :] - pts[None, :, :]) ** 2).sum(axis=-1))
            if eps > 0:
                kernel = np.maximum(dist, eps) ** -s
            else:
                same = dist == 0
                coincident.append(float(np.sum(np.outer(wb, w)[same])))
                kernel = np.where(same, 0.0, np.where(same, 1.0, dist) ** -s)
        parts.append(float(np.sum(kernel * wb[:, None] * w[None, :])))

    warnings = []
    coincident_mass = math.fsum(coincident)
    if coincident_mass > 0:
        warnings.append(f"coincident pairs carry mass {coincident_mass:.6g} and were excluded")
    return EnergyResult(
        method="direct",
        s=s,
        value=math.fsum(parts),
        coincident_mass=coincident_mass,
        warnings=warnings,
    )


def radial_grid(cutoff: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    Hybrid radial grid: linear (32 per unit) up to 64, then 256 points per decade.

    Returns:
        (linear part, logarithmic part); the first starts at 1, the second at its end
    """
    linear_end = min(cutoff, 64.0)
    linear = np.linspace(1.0, linear_end, max(2, int(round((linear_end - 1.0) * 32)) + 1))
    if cutoff <= linear_end:
        return linear, np.empty(0)
    count = max(2, int(round(math.log10(cutoff / linear_end) * 256)) + 1)
    return linear, np.geomspace(linear_end, cutoff, count)


def angular_power(transform: Transform, rho: np.ndarray, d: int) -> np.ndarray:
    """Integral of |transform|^2 over the unit sphere scaled by rho (two points for d=1)."""
    if d == 1:
        power = np.abs(np.asarray(transform(np.concatenate([rho, -rho])))) ** 2
        return power[: rho.size] + power[rho.size :]
    theta = 2.0 * math.pi * np.arange(ANGLES) / ANGLES
    dirs = np.column_stack([np.cos(theta), np.sin(theta)])
    points = (rho[:, None, None] * dirs[None, :, :]).reshape(-1, 2)
    power = np.abs(np.asarray(transform(points))).reshape(rho.size, ANGLES) ** 2
    return power.sum(axis=1) * (2.0 * math.pi / ANGLES)


def _tail_slope(rho: np.ndarray, integrand: np.ndarray) -> float:
    """Log-log slope of the integrand from bin means over the last decade."""
    last = rho >= rho[-1] / 10.0
    if last.sum() < 2 * TAIL_BINS:
        return float("nan")
    edges = np.geomspace(rho[last][0], rho[-1], TAIL_BINS + 1)
    centers, means = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        sel = last & (rho >= lo) & (rho <= hi)
        mean = float(np.mean(integrand[sel])) if sel.any() else 0.0
        if mean > 0:
            centers.append(math.sqrt(lo * hi))
            means.append(mean)
    if len(means) < 2:
        return float("-inf")
    return float(np.polyfit(np.log(centers), np.log(means), 1)[0])


def energy_fourier(transform: Transform, spec: EnergySpec) -> EnergyResult:
    """
    c(d, s) times the integral of |transform|^2 |xi|^(s-d) over |xi| <= cutoff.

    In polar form the integrand is rho^(s-1) Q(rho) with Q the spherical integral
    of |transform|^2. On [0, 1] the substitution v = rho^s absorbs the singularity
    at the origin; beyond that a trapezoid rule runs on the hybrid grid.

    Args:
        transform: Vectorized frequency -> complex map ((k,) or (k, 2) input)
        spec: Energy parameters

    Returns:
        EnergyResult with the last-decade tail fraction and slope

    Raises:
        NonconvergentTail: the last decade holds more than ENERGY_TAIL_FRACTION
            of the integral and decays no faster than 1/rho
    """
    check_exponent(spec.s, spec.d)
    s, d, cutoff = spec.s, spec.d, spec.cutoff

    inner_end = min(1.0, cutoff)
    v = np.linspace(0.0, inner_end**s, 257)
    inner = trapezoid(angular_power(transform, v ** (1.0 / s), d), v) / s

    pieces = [inner]
    rho_parts, integrand_parts = [], []
    if cutoff > 1.0:
        for grid in radial_grid(cutoff):
            if grid.size:
                values = grid ** (s - 1.0) * angular_power(transform, grid, d)
                pieces.append(trapezoid(values, grid))
                rho_parts.append(grid)
                integrand_parts.append(values)

    total_integral = math.fsum(pieces)
    if total_integral <= 0:
        return EnergyResult(method="fourier", s=s, value=0.0, tail_fraction=0.0)
    value = riesz_constant(d, s) * total_integral

    tail_fraction, slope = 0.0, float("nan")
    if rho_parts:
        rho = np.concatenate(rho_parts)
        integrand = np.concatenate(integrand_parts)
        rho, keep = np.unique(rho, return_index=True)
        integrand = integrand[keep]
        last = rho >= cutoff / 10.0
        if last.sum() > 1:
            tail_fraction = float(trapezoid(integrand[last], rho[last]) / total_integral)
        slope = _tail_slope(rho, integrand)

    result = EnergyResult(
        method="fourier", s=s, value=value, tail_fraction=tail_fraction, slope=slope
    )
    if tail_fraction > settings.ENERGY_TAIL_FRACTION and not slope < -1.0:
        raise NonconvergentTail(
            f"last decade holds {tail_fraction:.1%} of the s={s} energy integral "
            f"with slope {slope:.3f}",
            tail_fraction=tail_fraction,
            slope=slope,
        )
    logger.debug(f"energy_fourier s={s}: {value:.6g}, tail {tail_fraction:.2%}, slope {slope:.3f}")
    return result


def _concentration(cm: CantorMeasure, j: int) -> Fraction:
    """Largest mu_J mass of [a, a + 2/N_j] over level-j anchors a, exactly."""
    top = level_measure(cm, cm.params.depth)
    n = cm.params.n_scale(j)
    width = Fraction(2, n)
    best = Fraction(0)
    for m in anchors_at(cm, j):
        lo = 1 + Fraction(m, n)
        best = max(best, measure_of_interval(top, lo, lo + width))
    return best


def hausdorff_dim_estimate(cm: CantorMeasure, tolerance: float = 0.005) -> float:
    """
    Frostman exponent from the two-interval bound at the construction scales.

    An interval of length 1/N_j meets at most two level-j intervals, so
    M_j = max_a mu([a, a + 2/N_j]) bounds the mass of every such interval.
    s is feasible when M_j N_j^s does not grow with N_j (non-positive fitted
    slope of log M_j N_j^s against log N_j over the finer half of the scales);
    the largest feasible s is bisected.

    Args:
        cm: Constructed (or deterministic) Cantor measure
        tolerance: Bisection tolerance

    Returns:
        Estimated Hausdorff dimension
    """
    depth = cm.params.depth
    if depth < 2:
        return float(cm.params.alpha)
    scales = range(max(1, depth // 2), depth + 1)
    log_n = np.array([math.log(cm.params.n_scale(j)) for j in scales])
    log_m = np.array([math.log(float(_concentration(cm, j))) for j in scales])

    def slope(s: float) -> float:
        return float(np.polyfit(log_n, log_m + s * log_n, 1)[0])

    lo, hi = 0.0, 1.0
    if slope(hi) <= 0:
        return hi
    while hi - lo > tolerance:
        mid = 0.5 * (lo + hi)
        if slope(mid) <= 0:
            lo = mid
        else:
            hi = mid
    logger.debug(f"hausdorff estimate {lo:.4f} for alpha={cm.params.alpha}")
    return lo


def default_box_scales(finest: float = 2.0**-10) -> np.ndarray:
    """Dyadic box sizes 2^-2 down to finest."""
    return 2.0 ** -np.arange(2, int(math.floor(-math.log2(finest))) + 1, dtype=float)


def box_counting_dimension(points: np.ndarray, scales: Optional[Sequence[float]] = None) -> float:
    """
    Box-counting dimension of a point cloud: slope of log N(eps) against log(1/eps).

    Args:
        points: (n,) or (n, 2) array
        scales: Box sizes (defaults to 2^-2 .. 2^-10)

    Returns:
        Fitted slope
    """
    pts = np.asarray(points, dtype=float)
    if pts.size == 0:
        raise EmptyMeasure("no points to count")
    pts = pts.reshape(pts.shape[0], -1)
    scales = np.asarray(scales if scales is not None else default_box_scales(), dtype=float)
    counts = [np.unique(np.floor(pts / eps).astype(np.int64), axis=0).shape[0] for eps in scales]
    return float(np.polyfit(np.log(1.0 / scales), np.log(counts), 1)[0])


def support_box_dimension(cm: CantorMeasure) -> float:
    """Box-counting dimension of the level-J interval midpoints, down to scale 1/N_J."""
    depth = cm.params.depth
    n = cm.params.n_scale(depth)
    points = 1.0 + (np.asarray(anchors_at(cm, depth), dtype=float) + 0.5) / n
    scales = [1.0 / cm.params.n_scale(j) for j in range(1, depth + 1)]
    return box_counting_dimension(points, scales)


def sample_frequencies(window: Tuple[float, float], step: float = 1.0, offset: float = 0.5) -> np.ndarray:
    """offset + step * k for all k with the value inside the window."""
    lo, hi = window
    first = math.ceil((lo - offset) / step)
    last = math.floor((hi - offset) / step)
    return offset + step * np.arange(first, last + 1, dtype=float)


def fourier_decay_report(
    transform: Transform,
    window: Tuple[float, float],
    log_correct: bool = False,
    step: float = 1.0,
    offset: float = 0.5,
    zeta0: Optional[float] = None,
    direction: Optional[Tuple[float, float]] = None,
) -> DecayReport:
    """Sample |transform| on offset + step * Z inside the window and fit its decay."""
    xi = sample_frequencies(window, step, offset)
    points = xi if direction is None else np.outer(xi, np.asarray(direction, dtype=float))
    values = np.abs(np.asarray(transform(points)))
    return decay_fit(np.column_stack([xi, values]), window, log_correct, zeta0)


def fourier_dim_estimate(
    transform: Transform,
    window: Tuple[float, float],
    log_correct: bool = False,
    d: int = 1,
    step: float = 1.0,
    offset: float = 0.5,
    zeta0: Optional[float] = None,
) -> float:
    """
    min(d, beta) for the fitted decay |transform(xi)| <= C (1 + |xi|)^(-beta/2).

    Frequencies sit at half-integers by default, away from the zeros that
    interval transforms have at the integers. Planar transforms are sampled
    along the first axis.
    """
    direction = (1.0, 0.0) if d == 2 else None
    report = fourier_decay_report(transform, window, log_correct, step, offset, zeta0, direction)
    return min(float(d), report.fitted_beta)
