"""Fourier transforms of level and product measures, decay envelopes and fits."""

import logging
import math
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from ..core.config import settings
from ..core.exceptions import (
    EmptyMeasure,
    InvalidArgument,
    NonpositiveRadius,
    SupportContainsZero,
    TooFewSamples,
)
from ..schemas.construction_schemas import default_zeta0
from ..schemas.fourier_schemas import DecayReport, EnvelopeG
from ..schemas.measure_schemas import AtomMeasure, GridMeasure
from .bessel import j0
from .measure_core import fourier_atoms, transform_kernel
from .parallel import parallel_scan

logger = logging.getLogger(__name__)

CIRCLE_PHASE = complex(math.cos(math.pi / 4), -math.sin(math.pi / 4))  # e^{-i pi/4}
_MAX_BLOCK = 1 << 22


def step_factor(x):
    """(1 - e^{-2 pi i x}) / (2 pi i x), equal to 1 at x = 0."""
    x = np.asarray(x, dtype=float)
    return np.exp(-1j * np.pi * x) * np.sinc(x)


def _as_points(xi) -> Tuple[np.ndarray, bool]:
    xi = np.asarray(xi, dtype=float)
    return xi.reshape(-1), xi.ndim == 0


def _grid_kernel(m: GridMeasure):
    offsets = m.offsets_array.astype(float)
    n = float(m.scale_den)
    rows = max(1, _MAX_BLOCK // m.count)

    def kernel(xis: np.ndarray) -> np.ndarray:
        out = np.empty(xis.shape[0], dtype=complex)
        for i in range(0, xis.shape[0], rows):
            block = xis[i : i + rows]
            phases = np.exp(-2j * np.pi * np.multiply.outer(block / n, offsets))
            out[i : i + rows] = np.sum(phases, axis=1) / m.count
        return out * np.exp(-2j * np.pi * xis) * step_factor(xis / n)

    return kernel


def fourier_grid(m: GridMeasure, xi) -> Union[complex, np.ndarray]:
    """
    Closed-form transform of the level-j step density.

    Args:
        m: Level measure
        xi: Frequency or array of frequencies

    Returns:
        complex for a single frequency, otherwise an array
    """
    points, single = _as_points(xi)
    values = parallel_scan(_grid_kernel(m), points)
    return complex(values[0]) if single else values


def fourier_product(m: GridMeasure, nu: AtomMeasure, xi) -> Union[complex, np.ndarray]:
    """Transform of mu_j . nu: sum_y w_y mu_j^(y xi), exact for atomic nu."""
    if nu.size == 0:
        raise EmptyMeasure("nu has no atoms")
    if nu.dim != 1:
        raise InvalidArgument("fourier_product expects nu on the line")
    points, single = _as_points(xi)
    scaled = np.multiply.outer(points, nu.positions).reshape(-1)
    inner = parallel_scan(_grid_kernel(m), scaled).reshape(points.shape[0], nu.size)
    values = np.sum(inner * nu.weights, axis=1)
    return complex(values[0]) if single else values


def _t_grid(env: EnvelopeG) -> np.ndarray:
    decades = math.log10(env.t_max)
    count = max(1, int(round(decades * env.points_per_decade))) + 1
    return np.logspace(0.0, decades, count)


def envelope_g(env: EnvelopeG, x) -> Union[float, np.ndarray]:
    """
    g(x) = (1+x)^(-1/2) + max over t in [1, t_max] of |nu^(t x)|.

    Array input is monotonized with a running maximum from the right, so the
    output is non-increasing in x.

    Args:
        env: Envelope parameters and reference measure
        x: Non-negative point or array of points

    Returns:
        float for a single point, otherwise an array aligned with x
    """
    points, single = _as_points(x)
    if np.any(points < 0):
        raise InvalidArgument("envelope_g is defined for x >= 0")
    if env.nu_ref.size == 0:
        raise EmptyMeasure("reference measure has no atoms")
    t = _t_grid(env)
    samples = np.abs(fourier_atoms(env.nu_ref, np.multiply.outer(points, t).reshape(-1)))
    raw = (1.0 + points) ** -0.5 + samples.reshape(points.shape[0], t.size).max(axis=1)
    if single:
        return float(raw[0])
    order = np.argsort(points, kind="stable")
    monotone = np.empty_like(raw)
    monotone[order] = np.maximum.accumulate(raw[order][::-1])[::-1]
    return monotone


def phi_envelope(
    nu: AtomMeasure,
    scan_max: Optional[float] = None,
    points: Optional[int] = None,
    env: Optional[EnvelopeG] = None,
) -> float:
    """
    K_phi = max over a linear scan of |(phi nu)^(x)| / g(x/2), with phi(y) = 1/y.

    Args:
        nu: Atomic measure whose support avoids 0
        scan_max: Right end of the scan (defaults to PHI_SCAN_MAX)
        points: Scan points (defaults to PHI_SCAN_POINTS)
        env: Envelope of nu (defaults to EnvelopeG(nu_ref=nu))

    Returns:
        The fitted constant K_phi
    """
    if nu.size == 0:
        raise EmptyMeasure("nu has no atoms")
    if np.any(np.abs(nu.positions) < 1e-9):
        raise SupportContainsZero("phi = 1/y needs supp(nu) away from 0")
    scan_max = scan_max or settings.PHI_SCAN_MAX
    points = points or settings.PHI_SCAN_POINTS
    env = env or EnvelopeG(nu_ref=nu)
    x = np.linspace(0.0, scan_max, points)
    kernel = transform_kernel(nu.positions, nu.weights / nu.positions)
    phi_hat = np.abs(parallel_scan(kernel, x))
    k_phi = float(np.max(phi_hat / envelope_g(env, x / 2.0)))
    logger.debug(f"K_phi={k_phi:.6g} on [0, {scan_max}] with {points} points")
    return k_phi


def log_factor(xi, zeta0: Optional[float] = None):
    """ln^{1/2}(4 zeta0 (1 + xi^2)), the logarithmic loss in the construction's decay bound."""
    zeta0 = zeta0 or default_zeta0(1.0)
    xi = np.asarray(xi, dtype=float)
    return np.sqrt(np.log(4.0 * zeta0 * (1.0 + xi * xi)))


def decay_fit(
    samples: Union[Sequence[Tuple[float, float]], np.ndarray],
    window: Tuple[float, float],
    log_correct: bool = False,
    zeta0: Optional[float] = None,
) -> DecayReport:
    """
    Fit C (1 + |xi|)^(-beta/2) above the running-maximum envelope of the samples.

    beta is feasible when the envelope times (1+|xi|)^(beta/2) peaks no higher on
    the upper half of the window (log scale) than on the lower half; the largest
    feasible beta is found by bisection.

    Args:
        samples: (xi, |value|) pairs
        window: Closed range of |xi| to fit on
        log_correct: Divide out ln^{1/2}(4 zeta0 (1 + xi^2)) first
        zeta0: Constant of the log factor (defaults to the d0 = 1 value)

    Returns:
        DecayReport
    """
    data = np.asarray(samples, dtype=float).reshape(-1, 2)
    xi = np.abs(data[:, 0])
    values = np.abs(data[:, 1])
    lo, hi = window
    inside = (xi >= lo) & (xi <= hi)
    if int(inside.sum()) < settings.DECAY_MIN_SAMPLES:
        raise TooFewSamples(
            f"{int(inside.sum())} samples in window {window}, need {settings.DECAY_MIN_SAMPLES}"
        )
    order = np.argsort(xi[inside], kind="stable")
    xi, values = xi[inside][order], values[inside][order]
    if log_correct:
        values = values / log_factor(xi, zeta0)

    envelope = np.maximum.accumulate(values[::-1])[::-1]
    base = 1.0 + xi
    split = math.sqrt(base[0] * base[-1])
    lower = base <= split

    def weighted(beta: float) -> np.ndarray:
        return envelope * base ** (beta / 2.0)

    def feasible(beta: float) -> bool:
        w = weighted(beta)
        if lower.all():
            return True
        return w[~lower].max() <= w[lower].max()

    beta_lo, beta_hi = 0.0, settings.DECAY_BETA_CAP
    if feasible(beta_hi):
        beta_lo = beta_hi
    else:
        while beta_hi - beta_lo > settings.DECAY_TOLERANCE / 4:
            mid = 0.5 * (beta_lo + beta_hi)
            if feasible(mid):
                beta_lo = mid
            else:
                beta_hi = mid

    fitted_c = float(weighted(beta_lo).max())
    logger.debug(f"decay fit on {window}: beta={beta_lo:.4f}, C={fitted_c:.4g}")
    return DecayReport(
        grid=xi.tolist(),
        values=values.tolist(),
        fitted_C=fitted_c,
        fitted_beta=beta_lo,
        window=(float(lo), float(hi)),
        n_samples=int(xi.size),
        log_corrected=log_correct,
    )


def circle_sigma_hat(xi_norm):
    """Transform of arclength on the unit circle: 2 pi J0(2 pi |xi|)."""
    r = np.asarray(xi_norm, dtype=float)
    if np.any(r < 0):
        raise InvalidArgument("circle_sigma_hat takes |xi| >= 0")
    value = 2.0 * math.pi * np.asarray(j0(2.0 * math.pi * r))
    return float(value) if value.ndim == 0 else value


def circle_asymptotic(xi_norm):
    """Leading large-|xi| term 2 |xi|^(-1/2) cos(2 pi (|xi| - 1/8))."""
    r = np.asarray(xi_norm, dtype=float)
    return 2.0 * r**-0.5 * np.cos(2.0 * math.pi * (r - 0.125))


def _radial(xi, radial: bool) -> Tuple[np.ndarray, bool]:
    xi = np.asarray(xi, dtype=float)
    if not radial:
        if xi.shape[-1:] != (2,):
            raise InvalidArgument("planar frequencies must have shape (..., 2)")
        return np.sqrt((xi.reshape(-1, 2) ** 2).sum(axis=1)), xi.ndim == 1
    return np.abs(xi.reshape(-1)), xi.ndim == 0


def weighted_circle_product_hat(mu: AtomMeasure, xi, radial: bool = False) -> Union[complex, np.ndarray]:
    """
    Transform of the radially weighted measure on R.S: sum_r w r^(1/2) sigma^(r |xi|).

    Args:
        mu: Radius measure on (0, inf)
        xi: A 2-vector or an array of 2-vectors
        radial: Treat xi as values of |xi| instead

    Returns:
        complex for a single frequency, otherwise an array
    """
    if mu.size == 0:
        raise EmptyMeasure("radius measure has no atoms")
    radii = mu.positions
    if np.any(radii <= 0):
        raise NonpositiveRadius("radii must be positive")
    norms, single = _radial(xi, radial)
    weights = mu.weights * np.sqrt(radii)
    sigma = circle_sigma_hat(np.multiply.outer(norms, radii).reshape(-1))
    values = (np.asarray(sigma).reshape(norms.size, radii.size) * weights).sum(axis=1)
    values = values.astype(complex)
    return complex(values[0]) if single else values


def circle_leading_term(mu: AtomMeasure, xi_norm):
    """|xi|^(-1/2) (c mu^(-|xi|) + conj(c) mu^(|xi|)) with c = e^{-i pi/4}."""
    r = np.asarray(xi_norm, dtype=float)
    plus = np.asarray(fourier_atoms(mu, r))
    minus = np.asarray(fourier_atoms(mu, -r))
    return r**-0.5 * (CIRCLE_PHASE * minus + CIRCLE_PHASE.conjugate() * plus)
