"""
Randomized Cantor construction with certified digit-set selection.

Level j has T_j intervals [a, a + 1/N_j] with anchors a = 1 + m/N_j. Each anchor
keeps a random t_{j+1}-subset of its n_{j+1} children; a level is accepted only
when the transform increments stay under their concentration thresholds on the
check grid d0 * k, 1 <= k <= k_max.
"""

import logging
import math
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.random import Generator

from ..core.config import settings
from ..core.exceptions import (
    DepthExceeded,
    EmptyMeasure,
    InvalidArgument,
    InvalidKeepCount,
    RetryExhausted,
    VerificationRejected,
)
from ..schemas.construction_schemas import (
    CantorMeasure,
    ConstructionParams,
    LevelCertificate,
    LevelDigits,
    default_zeta0,
    level_ratios,
    zeta_lower_bound,
)
from ..schemas.fourier_schemas import EnvelopeG
from ..schemas.measure_schemas import AtomMeasure, GridMeasure, MeasureDiam
from .fourier_lab import envelope_g, phi_envelope, step_factor
from .measure_core import measure_of_interval, transform_kernel
from .parallel import parallel_scan
from .rng import DigitStream, make_generator

logger = logging.getLogger(__name__)

Anchors = Sequence[int]


def default_sequences(alpha: float, n_star: int, depth: int) -> Tuple[List[int], List[int]]:
    """
    Branching n_j = n_star and keep counts t_j = clamp(round(N_j^alpha / T_{j-1}), 1, n_j).

    Args:
        alpha: Target dimension in [0, 1]
        n_star: Branching factor
        depth: Number of levels J

    Returns:
        (branch, keep)
    """
    if not 0 <= alpha <= 1:
        raise InvalidArgument(f"alpha={alpha} must lie in [0, 1]")
    if n_star < 2:
        raise InvalidArgument("n_star must be at least 2")
    branch, keep = [], []
    log_n = 0.0
    t_total = 1
    for _ in range(depth):
        log_n += math.log(n_star)
        target = math.exp(alpha * log_n) / t_total
        t = min(max(int(round(target)), 1), n_star)
        branch.append(n_star)
        keep.append(t)
        t_total *= t
    return branch, keep


def measure_diam(mu_diam: float = 1.0, nu: Optional[AtomMeasure] = None) -> MeasureDiam:
    """Diameters of supp(mu) and of the hull of [1, 2] . supp(nu), and d0."""
    if nu is None:
        return MeasureDiam.from_diameters(mu_diam, mu_diam)
    if nu.size == 0:
        raise EmptyMeasure("nu has no atoms")
    y = nu.positions
    products = np.concatenate([y, 2.0 * y])
    diam_prod = float(products.max() - products.min())
    return MeasureDiam.from_diameters(mu_diam, diam_prod if diam_prod > 0 else mu_diam)


def build_params(
    alpha: float,
    n_star: int,
    depth: int,
    seed: int,
    nu: Optional[AtomMeasure] = None,
    zeta0: Optional[float] = None,
    k_max: Optional[int] = None,
    retry_cap: Optional[int] = None,
    branch: Optional[List[int]] = None,
    keep: Optional[List[int]] = None,
) -> ConstructionParams:
    """
    Fill in the derived construction constants.

    Args:
        alpha: Target dimension
        n_star: Largest branching factor
        depth: Number of levels J
        seed: 64-bit seed
        nu: Optional measure the product transform is certified against
        zeta0: Defaults to one plus the bounded check-grid series
        k_max: Defaults to max(K_MAX_FLOOR, 4 N_J)
        retry_cap: Defaults to RETRY_CAP
        branch: Explicit n_j (defaults from default_sequences)
        keep: Explicit t_j

    Returns:
        Validated ConstructionParams
    """
    if branch is None or keep is None:
        branch, keep = default_sequences(alpha, n_star, depth)
    d0 = measure_diam(1.0, nu).d0
    ratios = level_ratios(alpha, branch, keep)
    n_total = math.prod(branch)
    return ConstructionParams(
        alpha=alpha,
        n_star=n_star,
        branch=branch,
        keep=keep,
        depth=depth,
        zeta0=zeta0 if zeta0 is not None else default_zeta0(d0),
        d0=d0,
        k_max=k_max if k_max is not None else max(settings.K_MAX_FLOOR, 4 * n_total),
        seed=seed,
        retry_cap=retry_cap if retry_cap is not None else settings.RETRY_CAP,
        ratio_lo=min(ratios),
        ratio_hi=max(ratios),
    )


def random_digit_sets(
    t: int, n: int, count: int, rng_stream: Union[DigitStream, Generator]
) -> List[List[int]]:
    """
    Draw ``count`` independent uniform t-subsets of {0, ..., n-1}, each sorted.

    A DigitStream gives every set its own substream; a plain Generator is used
    sequentially.
    """
    if t > n or t < 1:
        raise InvalidKeepCount(f"cannot keep {t} of {n} digits")
    if t == n:
        return [list(range(n)) for _ in range(count)]
    sets = []
    for index in range(count):
        gen = rng_stream.generator(index) if isinstance(rng_stream, DigitStream) else rng_stream
        sets.append(sorted(int(b) for b in gen.choice(n, t, replace=False)))
    return sets


def term_I(a: float, b: float, j: int, xi: float, params: ConstructionParams) -> complex:
    """Integral of e^{-2 pi i xi x} over [a + b, a + b + 1/N_{j+1}], normalised to mass 1."""
    n_next = params.n_scale(j + 1)
    return complex(np.exp(-2j * np.pi * xi * (a + b)) * step_factor(xi / n_next))


def term_J(
    a: float, b: float, j: int, xi: float, nu: AtomMeasure, params: ConstructionParams
) -> complex:
    """term_I averaged against nu: sum_y w_y I(a, b, j, xi y)."""
    if nu.size == 0:
        raise EmptyMeasure("nu has no atoms")
    return complex(
        sum(w * term_I(a, b, j, xi * y, params) for y, w in zip(nu.positions, nu.weights))
    )


def _children(j: int, anchors: Anchors, digit_sets: Sequence[Sequence[int]], params: ConstructionParams):
    """Child positions at level j+1 and their weights in mu_{j+1} - mu_j."""
    n = params.branch[j]
    t = params.keep[j]
    if len(digit_sets) != len(anchors):
        raise InvalidArgument(f"{len(digit_sets)} digit sets for {len(anchors)} anchors")
    count = len(anchors)
    base = np.asarray(anchors, dtype=np.int64) * n
    cells = (base[:, None] + np.arange(n)[None, :]).reshape(-1)
    weights = np.full((count, n), -1.0 / (count * n))
    for row, digits in enumerate(digit_sets):
        if len(digits) != t:
            raise InvalidKeepCount(f"digit set {list(digits)} does not keep {t} digits")
        weights[row, list(digits)] += 1.0 / (count * t)
    positions = 1.0 + cells / params.n_scale(j + 1)
    return positions, weights.reshape(-1)


def _increment_kernel(j: int, anchors: Anchors, digit_sets, params: ConstructionParams):
    positions, weights = _children(j, anchors, digit_sets, params)
    inner = transform_kernel(positions, weights)
    n_next = float(params.n_scale(j + 1))

    def kernel(xis: np.ndarray) -> np.ndarray:
        return inner(xis) * step_factor(xis / n_next)

    return kernel


def transform_increment(j: int, anchors: Anchors, digit_sets, xi, params: ConstructionParams) -> np.ndarray:
    """Complex mu_{j+1}^(xi) - mu_j^(xi) over an array of frequencies."""
    xi = np.asarray(xi, dtype=float).reshape(-1)
    return parallel_scan(_increment_kernel(j, anchors, digit_sets, params), xi)


def deviation_X(j: int, anchors: Anchors, digit_sets, xi, params: ConstructionParams):
    """
    |(1/T_j) sum_a X_a(j, xi)|, i.e. |mu_{j+1}^(xi) - mu_j^(xi)|.

    Args:
        j: Level of the anchors
        anchors: Offsets m of A_j at scale N_j, in order
        digit_sets: B_{j+1,a} for each anchor
        xi: Frequency or array of frequencies
        params: Construction parameters

    Returns:
        float for a single frequency, otherwise an array
    """
    single = np.ndim(xi) == 0
    values = np.abs(transform_increment(j, anchors, digit_sets, xi, params))
    return float(values[0]) if single else values


def deviation_Y(j: int, anchors: Anchors, digit_sets, xi, nu: AtomMeasure, params: ConstructionParams):
    """|(1/T_j) sum_a Y_a(j, xi)| = |sum_y w_y (mu_{j+1}^ - mu_j^)(y xi)|."""
    if nu.size == 0:
        raise EmptyMeasure("nu has no atoms")
    single = np.ndim(xi) == 0
    points = np.asarray(xi, dtype=float).reshape(-1)
    scaled = np.multiply.outer(points, nu.positions).reshape(-1)
    inc = transform_increment(j, anchors, digit_sets, scaled, params)
    values = np.abs((inc.reshape(points.size, nu.size) * nu.weights).sum(axis=1))
    return float(values[0]) if single else values


def hoeffding_threshold(j: int, xi, params: ConstructionParams):
    """u_{j,xi} = sqrt(ln(4 zeta0 (1 + xi^2)) / T_j)."""
    xi = np.asarray(xi, dtype=float)
    u = np.sqrt(np.log(4.0 * params.zeta0 * (1.0 + xi * xi)) / params.t_count(j))
    return float(u) if u.ndim == 0 else u


def failure_bound(j: int, xi, params: ConstructionParams):
    """4 exp(-T_j u^2), which equals 1 / (zeta0 (1 + xi^2))."""
    u = hoeffding_threshold(j, xi, params)
    bound = 4.0 * np.exp(-params.t_count(j) * np.asarray(u) ** 2)
    return float(bound) if bound.ndim == 0 else bound


def acceptance_lower_bound(params: ConstructionParams) -> float:
    """Lower bound 1 - sum_k 2 / (zeta0 (1 + d0^2 k^2)) on the per-attempt acceptance rate."""
    return 1.0 - zeta_lower_bound(params.d0) / params.zeta0


def check_frequencies(params: ConstructionParams) -> np.ndarray:
    """Positive half of the grid d0 * k, 1 <= k <= k_max; the deviations are even in xi."""
    return params.d0 * np.arange(1, params.k_max + 1, dtype=float)


class ProductEnvelope(NamedTuple):
    """g(|xi|), g(|xi|/2) on a frequency grid, and the phi-envelope constant of nu."""

    g_full: np.ndarray
    g_half: np.ndarray
    k_phi: float


def product_envelope(nu: AtomMeasure, xis: np.ndarray) -> ProductEnvelope:
    env = EnvelopeG(nu_ref=nu)
    norms = np.abs(xis)
    return ProductEnvelope(
        g_full=envelope_g(env, norms),
        g_half=envelope_g(env, norms / 2.0),
        k_phi=phi_envelope(nu, env=env),
    )


def verify_level(
    j: int,
    anchors: Anchors,
    digit_sets,
    nu: Optional[AtomMeasure],
    params: ConstructionParams,
    frequencies: Optional[Sequence[float]] = None,
    envelope: Optional[ProductEnvelope] = None,
) -> LevelCertificate:
    """
    Check the level-(j+1) digit sets against the concentration bounds.

    deviation_X <= 2 u min(1, N_{j+1}/|xi|) and, with nu, deviation_Y <= 2 u B_J
    where B_J = min(g(|xi|), (1/pi)(N_{j+1}/|xi|) g(|xi|/2) K_phi).

    Args:
        j: Level of the anchors
        anchors: Offsets of A_j
        digit_sets: Candidate B_{j+1,a}
        nu: Optional product measure
        params: Construction parameters
        frequencies: Explicit check frequencies (defaults to the d0 grid)
        envelope: Precomputed ProductEnvelope on the same frequencies

    Returns:
        LevelCertificate with the largest deviation/bound ratios

    Raises:
        VerificationRejected: some ratio exceeds 1
    """
    n, t = params.branch[j], params.keep[j]
    if t == n:
        return LevelCertificate(
            level=j + 1, max_slack_X=0.0, max_slack_Y=0.0 if nu is not None else None
        )

    if frequencies is None:
        xis = check_frequencies(params)
    else:
        xis = np.asarray(frequencies, dtype=float).reshape(-1)
        xis = xis[xis != 0]
    if xis.size == 0:
        return LevelCertificate(
            level=j + 1, max_slack_X=0.0, max_slack_Y=0.0 if nu is not None else None
        )
    norms = np.abs(xis)
    n_next = params.n_scale(j + 1)
    u = hoeffding_threshold(j, xis, params)
    decay = np.minimum(1.0, n_next / norms)

    ratio_x = deviation_X(j, anchors, digit_sets, xis, params) / (2.0 * u * decay)
    worst = int(np.argmax(ratio_x))
    if ratio_x[worst] > 1.0:
        raise VerificationRejected(j + 1, float(xis[worst]), float(ratio_x[worst]), "X")

    max_y = implied_c0 = None
    if nu is not None:
        envelope = envelope or product_envelope(nu, xis)
        b_j = np.minimum(
            envelope.g_full, (n_next / (math.pi * norms)) * envelope.g_half * envelope.k_phi
        )
        dev_y = deviation_Y(j, anchors, digit_sets, xis, nu, params)
        ratio_y = dev_y / (2.0 * u * b_j)
        worst = int(np.argmax(ratio_y))
        if ratio_y[worst] > 1.0:
            raise VerificationRejected(j + 1, float(xis[worst]), float(ratio_y[worst]), "Y")
        max_y = float(ratio_y[worst])
        implied_c0 = float(np.max(dev_y / (2.0 * u * envelope.g_half * decay)))

    return LevelCertificate(
        level=j + 1,
        max_slack_X=float(ratio_x.max()),
        max_slack_Y=max_y,
        implied_c0=implied_c0,
        frequencies_checked=int(xis.size),
    )


def construct(params: ConstructionParams, nu: Optional[AtomMeasure] = None) -> CantorMeasure:
    """
    Build levels 1..J by draw-and-verify.

    Args:
        params: Construction parameters
        nu: Optional measure whose product transform is also certified

    Returns:
        CantorMeasure with one certificate per level

    Raises:
        RetryExhausted: a level failed retry_cap + 1 attempts
    """
    logger.info(
        f"Constructing alpha={params.alpha} depth={params.depth} k_max={params.k_max} "
        f"seed={params.seed}; acceptance bound {acceptance_lower_bound(params):.3f}"
    )
    envelope = product_envelope(nu, check_frequencies(params)) if nu is not None else None
    anchors: List[int] = [0]
    levels: List[LevelDigits] = []
    certificates: List[LevelCertificate] = []

    for j in range(params.depth):
        n, t = params.branch[j], params.keep[j]
        last: Optional[VerificationRejected] = None
        for attempt in range(params.retry_cap + 1):
            stream = DigitStream(params.seed, j + 1, attempt)
            digit_sets = random_digit_sets(t, n, len(anchors), stream)
            try:
                cert = verify_level(j, anchors, digit_sets, nu, params, envelope=envelope)
                break
            except VerificationRejected as e:
                logger.warning(f"Attempt {attempt + 1} at level {j + 1} rejected: {e}")
                last = e
        else:
            raise RetryExhausted(j + 1, params.retry_cap + 1, last)

        cert = cert.model_copy(update={"attempts": attempt + 1})
        levels.append(LevelDigits(n=n, t=t, digit_sets=digit_sets))
        certificates.append(cert)
        anchors = [m * n + b for m, digits in zip(anchors, digit_sets) for b in digits]
        logger.info(
            f"Level {j + 1} accepted after {attempt + 1} attempt(s): "
            f"max ratio X={cert.max_slack_X:.3f}"
            + (f", Y={cert.max_slack_Y:.3f}" if cert.max_slack_Y is not None else "")
        )

    return CantorMeasure(params=params, levels=levels, certificates=certificates, nu=nu)


def anchors_at(cm: CantorMeasure, j: int) -> List[int]:
    """Offsets of A_j at scale N_j."""
    if j < 0 or j > cm.params.depth:
        raise DepthExceeded(f"level {j} outside 0..{cm.params.depth}")
    anchors = [0]
    for level in cm.levels[:j]:
        anchors = [m * level.n + b for m, digits in zip(anchors, level.digit_sets) for b in digits]
    return anchors


def level_measure(cm: CantorMeasure, j: int) -> GridMeasure:
    """mu_j as a GridMeasure."""
    anchors = anchors_at(cm, j)
    return GridMeasure(
        level=j, scale_den=cm.params.n_scale(j), count=len(anchors), offsets=anchors
    )


def support_intervals(cm: CantorMeasure, j: int) -> List[Tuple[Fraction, Fraction]]:
    """The level-j intervals [a, a + 1/N_j] with exact endpoints."""
    n = cm.params.n_scale(j)
    return [(1 + Fraction(m, n), 1 + Fraction(m + 1, n)) for m in anchors_at(cm, j)]


def is_nested(cm: CantorMeasure) -> bool:
    """True when supp(mu_{j+1}) lies inside supp(mu_j) for every level."""
    parents = {0}
    for j, level in enumerate(cm.levels):
        children = anchors_at(cm, j + 1)
        if any(c // level.n not in parents for c in children):
            return False
        parents = set(children)
    return True


def deterministic_cantor(n: int, digits: Sequence[int], depth: int) -> CantorMeasure:
    """
    Natural measure of the fixed-digit Cantor set in [1, 2].

    Every interval keeps the same digits, so no certificates are attached.
    Middle thirds: n=3, digits [0, 2].
    """
    digits = sorted(set(int(b) for b in digits))
    t = len(digits)
    alpha = math.log(t) / math.log(n)
    params = build_params(
        alpha, n, depth, seed=0, branch=[n] * depth, keep=[t] * depth, k_max=settings.K_MAX_FLOOR
    )
    levels = [LevelDigits(n=n, t=t, digit_sets=[digits] * t**j) for j in range(depth)]
    return CantorMeasure(params=params, levels=levels, certificates=[])


def frostman_ratio(cm: CantorMeasure, num_samples: int, rng: Optional[Generator] = None) -> float:
    """
    Largest mu_J(I) / |I|^alpha over sampled intervals.

    Ancestor intervals of every level are always included; the random intervals
    have log-uniform lengths between 1/N_J and 1.

    Args:
        cm: Constructed measure
        num_samples: Random intervals to test
        rng: Generator (defaults to one derived from the construction seed)

    Returns:
        The largest ratio found
    """
    rng = rng or make_generator(cm.params.seed, purpose=1)
    alpha = cm.params.alpha
    depth = cm.params.depth
    top = level_measure(cm, depth)
    n_total = cm.params.n_scale(depth)

    best = 0.0
    for j in range(depth + 1):
        width = Fraction(1, cm.params.n_scale(j))
        for lo, hi in support_intervals(cm, j):
            mass = measure_of_interval(top, lo, hi)
            best = max(best, float(mass) / float(width) ** alpha)

    exponents = rng.uniform(0.0, 1.0, size=num_samples)
    uniforms = rng.uniform(0.0, 1.0, size=num_samples)
    for e, v in zip(exponents, uniforms):
        length = float(n_total) ** (-e)
        lo = 1.0 - length + v * (1.0 + length)
        mass = measure_of_interval(top, lo, lo + length)
        best = max(best, float(mass) / length**alpha)
    return best
