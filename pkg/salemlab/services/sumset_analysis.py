"""
Desk checks for dilated sumsets RY + Z.

Sets are materialized twice: as point nets (for the cell-cover proxy) and as
measures with vectorized Fourier transforms (for the L2 and energy proxies).
Line sets are placed in the plane along their ``direction`` when d = 2.
"""

import logging
import math
from functools import lru_cache
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import cumulative_trapezoid

from ..core.config import settings
from ..core.exceptions import InvalidArgument, NonconvergentTail, ResolutionTooCoarse
from ..schemas.construction_schemas import CantorMeasure
from ..schemas.energy_schemas import EnergyResult, EnergySpec
from ..schemas.measure_schemas import AtomMeasure
from ..schemas.sumset_schemas import (
    CoverReport,
    L2Report,
    OrderingReport,
    PipelineReport,
    SetDescription,
    SetKind,
    SumsetSpec,
)
from .cantor_construct import anchors_at, build_params, construct, deterministic_cantor, level_measure
from .dimension_est import angular_power, box_counting_dimension, energy_fourier, fourier_decay_report
from .fourier_lab import circle_sigma_hat, fourier_grid, step_factor, weighted_circle_product_hat
from .measure_core import discretize, fourier_atoms
from .parallel import parallel_scan
from .storage import load_cantor_measure

logger = logging.getLogger(__name__)

Transform = Callable[[np.ndarray], np.ndarray]

LATTICE_REFINE = 8  # lattice steps per cover cell
ATOMS_PER_UNIT = 1024  # discretization of interval measures used as Y or as radii
L2_POINTS_PER_UNIT = 32
DIRECTIONS = 8  # sampled directions for planar decay fits
_PAIR_BLOCK = 1 << 22
_KEY_SHIFT = 1 << 32
_KEY_OFFSET = 1 << 31


# ---------------------------------------------------------------------------
# Set materialization
# ---------------------------------------------------------------------------


@lru_cache(maxsize=8)
def _reference_measure(
    path: Optional[str], alpha: Optional[float], n_star: int, depth: int, seed: int
) -> CantorMeasure:
    if path is not None:
        return load_cantor_measure(path)
    logger.info(f"Building reference construction alpha={alpha} depth={depth} seed={seed}")
    return construct(build_params(alpha, n_star, depth, seed))


def reference_measure(desc: SetDescription) -> CantorMeasure:
    """CantorMeasure behind a cantor_ref description (loaded or constructed)."""
    return _reference_measure(desc.path, desc.alpha, desc.n_star, desc.depth, desc.seed)


def _ref_level(desc: SetDescription, cm: CantorMeasure) -> int:
    return cm.params.depth if desc.level is None else desc.level


def _cantor_offsets(n: int, digits: Sequence[int], depth: int) -> np.ndarray:
    offsets = np.zeros(1, dtype=np.int64)
    digit_arr = np.asarray(sorted(set(digits)), dtype=np.int64)
    for _ in range(depth):
        offsets = (offsets[:, None] * n + digit_arr[None, :]).reshape(-1)
    return offsets


def _unit(direction: Optional[Tuple[float, float]]) -> np.ndarray:
    u = np.asarray(direction if direction is not None else (1.0, 0.0), dtype=float)
    return u / np.linalg.norm(u)


def _interval_net(left: np.ndarray, width: float, delta: float) -> np.ndarray:
    per = 2 * math.ceil(width / delta) + 1
    steps = np.linspace(0.0, width, per)
    return (left[:, None] + steps[None, :]).reshape(-1)


def set_net(desc: SetDescription, delta: float) -> np.ndarray:
    """
    Representative points of the set: endpoints plus a delta-net.

    Intervals (and each construction interval of a Cantor set) get
    2 ceil(length / delta) + 1 evenly spaced points.

    Returns:
        (n,) for line sets, (n, 2) for planar ones
    """
    kind = desc.kind
    if kind == SetKind.INTERVAL:
        return _interval_net(np.array([desc.lo]), desc.hi - desc.lo, delta)
    if kind == SetKind.ATOMS:
        return np.asarray(desc.points, dtype=float)
    if kind == SetKind.CANTOR:
        length = desc.hi - desc.lo
        width = length / desc.n**desc.depth
        left = desc.lo + width * _cantor_offsets(desc.n, desc.digits, desc.depth)
        return _interval_net(left, width, delta)
    if kind == SetKind.CANTOR_REF:
        cm = reference_measure(desc)
        level = _ref_level(desc, cm)
        n = cm.params.n_scale(level)
        left = 1.0 + np.asarray(anchors_at(cm, level), dtype=float) / n
        return _interval_net(left, 1.0 / n, delta)
    count = 2 * math.ceil(2.0 * math.pi * desc.radius / delta) + 1
    theta = np.linspace(0.0, 2.0 * math.pi, count, endpoint=False)
    return desc.radius * np.column_stack([np.cos(theta), np.sin(theta)])


def feature_size(desc: SetDescription) -> float:
    """Smallest length scale the set description resolves."""
    kind = desc.kind
    if kind == SetKind.INTERVAL:
        return desc.hi - desc.lo
    if kind == SetKind.ATOMS:
        # points are exact at every resolution; close pairs just share a cell
        return math.inf
    if kind == SetKind.CANTOR:
        return (desc.hi - desc.lo) / desc.n
    if kind == SetKind.CANTOR_REF:
        cm = reference_measure(desc)
        return 1.0 / cm.params.branch[0] if cm.params.depth else 1.0
    return desc.radius


def set_measure(desc: SetDescription) -> AtomMeasure:
    """Atomic stand-in for the natural measure of the set."""
    kind = desc.kind
    if kind == SetKind.INTERVAL:
        count = max(16, math.ceil((desc.hi - desc.lo) * ATOMS_PER_UNIT))
        mid = desc.lo + (desc.hi - desc.lo) * (np.arange(count) + 0.5) / count
        return AtomMeasure.uniform(mid)
    if kind == SetKind.ATOMS:
        pts = np.asarray(desc.points, dtype=float)
        if desc.weights is None:
            return AtomMeasure.uniform(pts)
        return AtomMeasure.from_arrays(pts, np.asarray(desc.weights, dtype=float))
    if kind == SetKind.CANTOR:
        width = (desc.hi - desc.lo) / desc.n**desc.depth
        mid = desc.lo + width * (_cantor_offsets(desc.n, desc.digits, desc.depth) + 0.5)
        return AtomMeasure.uniform(mid)
    if kind == SetKind.CANTOR_REF:
        cm = reference_measure(desc)
        return discretize(level_measure(cm, _ref_level(desc, cm)))
    raise InvalidArgument("the circle has no atomic stand-in; use its transform")


def line_transform(desc: SetDescription) -> Transform:
    """Transform of the natural measure of a line set, as a function of real xi."""
    kind = desc.kind
    if kind == SetKind.INTERVAL:
        lo, length = desc.lo, desc.hi - desc.lo

        def interval_hat(xi: np.ndarray) -> np.ndarray:
            xi = np.asarray(xi, dtype=float)
            return np.exp(-2j * np.pi * lo * xi) * step_factor(length * xi)

        return interval_hat
    if kind == SetKind.CANTOR:
        grid = level_measure(deterministic_cantor(desc.n, desc.digits, desc.depth), desc.depth)
        lo, length = desc.lo, desc.hi - desc.lo

        def cantor_hat(xi: np.ndarray) -> np.ndarray:
            xi = np.asarray(xi, dtype=float)
            return np.exp(-2j * np.pi * (lo - length) * xi) * fourier_grid(grid, length * xi)

        return cantor_hat
    if kind == SetKind.CANTOR_REF:
        cm = reference_measure(desc)
        grid = level_measure(cm, _ref_level(desc, cm))
        return lambda xi: np.asarray(fourier_grid(grid, np.asarray(xi, dtype=float).reshape(-1)))
    if desc.is_planar:
        raise InvalidArgument(f"{kind.value} set is not on the line")
    measure = set_measure(desc)
    return lambda xi: np.asarray(fourier_atoms(measure, np.asarray(xi, dtype=float).reshape(-1)))


def _embed(transform: Transform, direction: Optional[Tuple[float, float]]) -> Transform:
    u = _unit(direction)
    return lambda xi: transform(np.asarray(xi, dtype=float).reshape(-1, 2) @ u)


def set_transform(desc: SetDescription, d: int) -> Transform:
    """Transform of the natural measure in the ambient dimension d."""
    if desc.kind == SetKind.CIRCLE:
        radius = desc.radius
        return lambda xi: np.asarray(
            circle_sigma_hat(radius * np.sqrt((np.asarray(xi, dtype=float).reshape(-1, 2) ** 2).sum(axis=1)))
        ).astype(complex) / (2.0 * math.pi)
    if desc.is_planar:
        measure = set_measure(desc)
        return lambda xi: np.asarray(fourier_atoms(measure, np.asarray(xi, dtype=float).reshape(-1, 2)))
    transform = line_transform(desc)
    return transform if d == 1 else _embed(transform, desc.direction)


def dilation_transform(R: SetDescription, Y: SetDescription, d: int) -> Transform:
    """
    Transform of the measure on RY: xi -> sum_y w_y mu_R^(y . xi).

    A circle Y uses the radially weighted circle measure with radii drawn from R.
    """
    if Y.kind == SetKind.CIRCLE:
        radii = set_measure(R)
        scaled = AtomMeasure.from_arrays(radii.positions * Y.radius, radii.weights, 1)
        return lambda xi: np.asarray(
            weighted_circle_product_hat(scaled, np.asarray(xi, dtype=float).reshape(-1, 2))
        )

    f_r = line_transform(R)
    ys = set_measure(Y)
    weights = ys.weights
    if ys.dim == 2:
        directions = ys.positions
    elif d == 2:
        directions = np.outer(ys.positions, _unit(Y.direction))
    else:
        directions = ys.positions
    rows = max(1, _PAIR_BLOCK // weights.size)

    def ry_hat(xi: np.ndarray) -> np.ndarray:
        xi = np.asarray(xi, dtype=float)
        points = xi.reshape(-1) if d == 1 else xi.reshape(-1, 2)
        out = np.empty(points.shape[0], dtype=complex)
        for i in range(0, points.shape[0], rows):
            block = points[i : i + rows]
            proj = np.multiply.outer(block, directions) if d == 1 else block @ directions.T
            values = np.asarray(f_r(proj.reshape(-1))).reshape(proj.shape)
            out[i : i + rows] = values @ weights
        return out

    return ry_hat


# ---------------------------------------------------------------------------
# Cover proxy
# ---------------------------------------------------------------------------


def _lift(points: np.ndarray, desc: SetDescription, d: int) -> np.ndarray:
    if d == 1 or points.ndim == 2:
        return points
    return np.outer(points, _unit(desc.direction))


def _check_resolution(spec: SumsetSpec, delta: float) -> None:
    smallest = min(feature_size(spec.R), feature_size(spec.Y), feature_size(spec.Z))
    if delta > smallest:
        raise ResolutionTooCoarse(f"delta={delta:g} exceeds the smallest feature size {smallest:g}")


def _keys(lattice: np.ndarray, d: int) -> np.ndarray:
    if d == 1:
        return lattice.reshape(-1)
    return lattice[:, 0] * _KEY_SHIFT + (lattice[:, 1] + _KEY_OFFSET)


def _unkey(keys: np.ndarray, d: int) -> np.ndarray:
    if d == 1:
        return keys
    return np.column_stack([keys >> 32, (keys & (_KEY_SHIFT - 1)) - _KEY_OFFSET])


def _dilation_lattice(spec: SumsetSpec, step: float) -> np.ndarray:
    """Distinct points r*y of the nets rounded to the lattice step * Z^d."""
    radii = set_net(spec.R, step * LATTICE_REFINE)
    ys = _lift(set_net(spec.Y, step * LATTICE_REFINE), spec.Y, spec.d)
    per_y = ys.reshape(ys.shape[0], -1)
    rows = max(1, _PAIR_BLOCK // per_y.shape[0])
    found: List[np.ndarray] = []
    for i in range(0, radii.size, rows):
        block = radii[i : i + rows]
        prod = block[:, None, None] * per_y[None, :, :]
        lattice = np.rint(prod.reshape(-1, per_y.shape[1]) / step).astype(np.int64)
        found.append(np.unique(_keys(lattice, spec.d)))
    return _unkey(np.unique(np.concatenate(found)), spec.d)


def sumset_cells(spec: SumsetSpec, delta: Optional[float] = None) -> np.ndarray:
    """
    Keys of the delta-grid cells hit by r*y + z over the representative nets.

    Products are rounded to a lattice LATTICE_REFINE times finer than delta and
    deduplicated before Z is added, so the cell of each point is an integer division.
    """
    delta = delta or spec.delta
    _check_resolution(spec, delta)
    step = delta / LATTICE_REFINE
    ry = _dilation_lattice(spec, step)
    zs = _lift(set_net(spec.Z, delta), spec.Z, spec.d)
    z_lattice = np.rint(zs.reshape(zs.shape[0], -1) / step).astype(np.int64)
    ry = ry.reshape(ry.shape[0], -1)
    rows = max(1, _PAIR_BLOCK // z_lattice.shape[0])

    def mark(block: np.ndarray) -> np.ndarray:
        sums = block[:, None, :] + z_lattice[None, :, :]
        cells = np.floor_divide(sums.reshape(-1, ry.shape[1]), LATTICE_REFINE)
        return np.unique(_keys(cells, spec.d))

    cells = np.unique(parallel_scan(mark, ry, chunk=rows))
    logger.debug(f"delta={delta:g}: {ry.shape[0]} dilation points x {z_lattice.shape[0]} shifts, {cells.size} cells")
    return cells


def sumset_cover_measure(spec: SumsetSpec) -> float:
    """
    Outer-measure proxy of RY + Z: (number of delta-cells hit) * delta^d.

    Raises:
        ResolutionTooCoarse: delta exceeds the smallest feature of R, Y or Z
    """
    return float(sumset_cells(spec).size * spec.delta**spec.d)


def dilation_cover_measure(spec: SumsetSpec) -> float:
    """Cover proxy of RY alone at the resolution of spec (Z is ignored)."""
    _check_resolution(spec, spec.delta)
    lattice = _dilation_lattice(spec, spec.delta / LATTICE_REFINE)
    cells = np.unique(_keys(np.floor_divide(lattice, LATTICE_REFINE), spec.d))
    return float(cells.size * spec.delta**spec.d)


def cover_schedule(spec: SumsetSpec, deltas: Sequence[float]) -> CoverReport:
    """
    Cover measures on a schedule of resolutions from one finest-resolution cover.

    Every delta must be an integer multiple of the smallest one; coarser covers
    are images of the finest cells, so the measures are monotone in delta.

    Returns:
        CoverReport with the log-log slope and whether successive measures change
        by less than COVER_STABILITY
    """
    deltas = sorted({float(x) for x in deltas}, reverse=True)
    if not deltas:
        raise InvalidArgument("empty delta schedule")
    finest = deltas[-1]
    _check_resolution(spec, deltas[0])
    fine = _unkey(sumset_cells(spec, finest), spec.d)

    measures = []
    for delta in deltas:
        ratio = delta / finest
        factor = int(round(ratio))
        if abs(ratio - factor) > 1e-9:
            raise InvalidArgument(f"delta={delta:g} is not a multiple of the finest {finest:g}")
        coarse = np.unique(_keys(np.floor_divide(fine, factor), spec.d))
        measures.append(float(coarse.size * delta**spec.d))

    if len(deltas) > 1:
        slope = float(np.polyfit(np.log(deltas), np.log(measures), 1)[0])
    else:
        slope = 0.0
    changes = [abs(b - a) / a for a, b in zip(measures[:-1], measures[1:])]
    stabilized = all(c < settings.COVER_STABILITY for c in changes)
    logger.info(f"cover schedule: slope {slope:.3f}, floor {min(measures):.4g}, stabilized={stabilized}")
    return CoverReport(
        deltas=deltas, measures=measures, slope=slope, stabilized=stabilized, floor=min(measures)
    )


# ---------------------------------------------------------------------------
# Fourier-side proxies
# ---------------------------------------------------------------------------


def _product(mu_hat: Transform, nu_hat: Transform) -> Transform:
    return lambda xi: np.asarray(mu_hat(xi)) * np.asarray(nu_hat(xi))


def l2_density_check(
    mu_hat: Transform, nu_hat: Transform, cutoff_schedule: Sequence[float], d: int = 1
) -> L2Report:
    """
    P(c) = integral of |mu^ nu^|^2 over |xi| <= c for each cutoff c.

    The increments P(c_k) - P(c_{k-1}) must shrink by a factor below
    L2_RATIO_THRESHOLD over the last two steps for the report to count as
    converged. Zero increments count as converged.

    Args:
        mu_hat: Vectorized transform
        nu_hat: Vectorized transform
        cutoff_schedule: Increasing cutoffs
        d: Ambient dimension

    Returns:
        L2Report
    """
    cutoffs = [float(c) for c in cutoff_schedule]
    if not cutoffs or any(c <= 0 for c in cutoffs) or any(b <= a for a, b in zip(cutoffs, cutoffs[1:])):
        raise InvalidArgument("cutoff schedule must be positive and increasing")
    top = cutoffs[-1]
    rho = np.linspace(0.0, top, int(math.ceil(top * L2_POINTS_PER_UNIT)) + 1)
    integrand = rho ** (d - 1) * angular_power(_product(mu_hat, nu_hat), rho, d)
    running = cumulative_trapezoid(integrand, rho, initial=0.0)
    values = np.interp(cutoffs, rho, running).tolist()

    increments = [values[0]] + [b - a for a, b in zip(values[:-1], values[1:])]
    ratios = []
    for prev, cur in zip(increments[:-1], increments[1:]):
        if prev > 0:
            ratios.append(cur / prev)
        else:
            ratios.append(0.0 if cur <= 0 else math.inf)
    tail = ratios[-2:]
    converged = bool(tail) and all(r < settings.L2_RATIO_THRESHOLD for r in tail)
    if not tail:
        converged = increments[0] == 0
    logger.debug(f"L2 proxy values {values}, ratios {ratios}")
    return L2Report(
        cutoffs=cutoffs,
        values=values,
        increments=increments,
        ratios=ratios,
        converged=converged,
        verdict="L2" if converged else "not L2",
    )


def convolution_energy(mu_hat: Transform, nu_hat: Transform, s: float, d: int, cutoff: float) -> EnergyResult:
    """energy_fourier of the product transform mu^ nu^, the Fourier side of I_s(mu * nu)."""
    spec = EnergySpec.model_construct(s=s, d=d, cutoff=cutoff, mollify_eps=0.0, cell_width=0.0)
    return energy_fourier(_product(mu_hat, nu_hat), spec)


# ---------------------------------------------------------------------------
# Theorem pipeline
# ---------------------------------------------------------------------------


def set_dimension(desc: SetDescription) -> float:
    """Hausdorff dimension of the set as described."""
    kind = desc.kind
    if kind in (SetKind.INTERVAL, SetKind.CIRCLE):
        return 1.0
    if kind == SetKind.ATOMS:
        return 0.0
    if kind == SetKind.CANTOR:
        return math.log(len(set(desc.digits))) / math.log(desc.n)
    return reference_measure(desc).params.alpha


def _single_point(desc: SetDescription) -> bool:
    return desc.kind == SetKind.ATOMS and len(desc.points) == 1


def dilation_dimension(spec: SumsetSpec) -> float:
    """Hausdorff dimension of RY, by box counting when no closed form applies."""
    if _single_point(spec.Y):
        return set_dimension(spec.R)
    if _single_point(spec.R):
        return set_dimension(spec.Y)
    if spec.Y.kind == SetKind.CIRCLE:
        return min(2.0, set_dimension(spec.R) + 1.0)
    step = spec.delta / LATTICE_REFINE
    points = _dilation_lattice(spec, step) * step
    finest = 2.0 ** math.floor(math.log2(spec.delta))
    scales = 2.0 ** -np.arange(2, int(-math.log2(finest)) + 1, dtype=float)
    return min(float(spec.d), box_counting_dimension(points, scales))


def decay_bound(transform: Transform, d: int, window: Tuple[float, float]) -> Tuple[float, Transform]:
    """
    Fitted decay exponent beta of |transform| and the radial majorant
    min(1, C (1 + |xi|)^(-beta/2)) built from it.

    In the plane beta is the smallest exponent over DIRECTIONS directions in the
    upper half plane, and C the smallest constant covering every sampled direction.
    """
    if d == 1:
        reports = [fourier_decay_report(transform, window)]
    else:
        reports = []
        for k in range(DIRECTIONS):
            theta = math.pi * k / DIRECTIONS
            reports.append(fourier_decay_report(transform, window, direction=(math.cos(theta), math.sin(theta))))
    beta = min(r.fitted_beta for r in reports)
    constant = max(
        float(np.max(np.asarray(r.values) * (1.0 + np.asarray(r.grid)) ** (beta / 2.0))) for r in reports
    )

    def majorant(xi: np.ndarray) -> np.ndarray:
        points = np.asarray(xi, dtype=float)
        norm = np.abs(points).reshape(-1) if d == 1 else np.sqrt((points.reshape(-1, 2) ** 2).sum(axis=1))
        return np.minimum(1.0, constant * (1.0 + norm) ** (-beta / 2.0))

    return beta, majorant


def theorem_pipeline(
    spec: SumsetSpec,
    mode: str = "lebesgue",
    s: Optional[float] = None,
    cutoffs: Optional[Sequence[float]] = None,
    energy_cutoff: float = 1e4,
    window: Tuple[float, float] = (16.0, 1024.0),
    deltas: Optional[Sequence[float]] = None,
) -> PipelineReport:
    """
    Run both orderings of the dimension bound for RY + Z.

    The measure on RY has transform sum_y w_y mu_R^(y xi) and the measure on Z is
    its natural one. Each ordering keeps the exact transform of one factor and
    replaces the other by its fitted decay majorant (see decay_bound), so the two
    orderings test different sufficient conditions. Lebesgue mode runs the L2
    proxy per ordering, the L2 proxy of the exact product (joint_l2) and, when
    deltas are given, the cover schedule; hausdorff mode runs the convolution
    energy at exponent s per ordering.

    Args:
        spec: R, Y, Z, cover resolution and ambient dimension
        mode: "lebesgue" or "hausdorff"
        s: Energy exponent (hausdorff mode)
        cutoffs: L2 cutoff schedule (defaults to 16, 32, ..., 512)
        energy_cutoff: Radial cutoff of the energy integral
        window: Frequency window for the decay fits
        deltas: Optional cover schedule

    Returns:
        PipelineReport with one OrderingReport per ordering
    """
    if mode not in ("lebesgue", "hausdorff"):
        raise InvalidArgument(f"unknown mode {mode!r}")
    if mode == "hausdorff" and s is None:
        raise InvalidArgument("hausdorff mode needs an exponent s")
    d = spec.d
    schedule = list(cutoffs or [16.0 * 2**k for k in range(6)])
    transforms = {"RY": dilation_transform(spec.R, spec.Y, d), "Z": set_transform(spec.Z, d)}
    bounds = {name: decay_bound(hat, d, window) for name, hat in transforms.items()}
    hausdorff_dims = {"RY": dilation_dimension(spec), "Z": set_dimension(spec.Z)}
    logger.info(
        f"fitted exponents (fourier, hausdorff): "
        f"RY=({bounds['RY'][0]:.3f}, {hausdorff_dims['RY']:.3f}), Z=({bounds['Z'][0]:.3f}, {hausdorff_dims['Z']:.3f})"
    )

    joint_l2 = None
    cover_ok = True
    cover = cover_schedule(spec, deltas) if deltas else None
    if mode == "lebesgue":
        joint_l2 = l2_density_check(transforms["RY"], transforms["Z"], schedule, d)
        if cover is not None:
            cover_ok = cover.stabilized and cover.floor > 0

    orderings = []
    for name, fourier_part, other_part in (("RY+Z", "RY", "Z"), ("Z+RY", "Z", "RY")):
        beta, majorant = bounds[fourier_part]
        other_hat = transforms[other_part]
        fourier_dim = min(float(d), beta)
        hausdorff_dim = hausdorff_dims[other_part]
        l2 = energy = None
        nonconvergent = False
        if mode == "lebesgue":
            l2 = l2_density_check(majorant, other_hat, schedule, d)
            positive = l2.converged and cover_ok
        else:
            try:
                energy = convolution_energy(majorant, other_hat, s, d, energy_cutoff)
                positive = True
            except NonconvergentTail as e:
                logger.warning(f"{name}: convolution energy did not converge: {e}")
                nonconvergent = True
                positive = False
        orderings.append(
            OrderingReport(
                ordering=name,
                fourier_dim=fourier_dim,
                hausdorff_dim=hausdorff_dim,
                predicted=min(float(d), fourier_dim + hausdorff_dim),
                l2=l2,
                energy=energy,
                nonconvergent=nonconvergent,
                positive=positive,
            )
        )
    predicted = max(o.predicted for o in orderings)
    verdict = "positive" if any(o.positive for o in orderings) else "inconclusive"
    return PipelineReport(
        mode=mode,
        s=s,
        orderings=orderings,
        joint_l2=joint_l2,
        cover=cover,
        verdict=verdict,
        predicted_dim=predicted,
    )


def cone_fixture(delta: float = 2.0**-12) -> SumsetSpec:
    """
    Segment Y = {t e1 : 1/2 <= t <= 1}, R = [1, 2] and Z a Cantor set of
    dimension 1/2 along e2: RY + Z is a product of a segment and a Cantor set,
    so it has dimension 3/2 and zero area.
    """
    return SumsetSpec(
        R=SetDescription(kind=SetKind.INTERVAL, lo=1.0, hi=2.0),
        Y=SetDescription(kind=SetKind.INTERVAL, lo=0.5, hi=1.0, direction=(1.0, 0.0)),
        Z=SetDescription(kind=SetKind.CANTOR, n=4, digits=[0, 2], depth=8, direction=(0.0, 1.0)),
        delta=delta,
        d=2,
    )
