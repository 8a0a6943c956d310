import math
from fractions import Fraction

import numpy as np
import pytest

from salemlab.core.exceptions import EmptyMeasure, InvalidArgument, InvalidExponent, NonconvergentTail
from salemlab.schemas.energy_schemas import EnergySpec
from salemlab.schemas.measure_schemas import AtomMeasure
from salemlab.services.cantor_construct import build_params, construct, deterministic_cantor, level_measure
from salemlab.services.dimension_est import (
    _concentration,
    box_counting_dimension,
    check_exponent,
    energy_direct,
    energy_fourier,
    fourier_decay_report,
    fourier_dim_estimate,
    hausdorff_dim_estimate,
    riesz_constant,
    sample_frequencies,
    support_box_dimension,
)
from salemlab.services.fourier_lab import fourier_grid, fourier_product, step_factor
from salemlab.services.measure_core import discretize, fourier_atoms


def lebesgue_energy(s: float) -> float:
    """I_s of Lebesgue measure on [0, 1]."""
    return 2.0 / ((1.0 - s) * (2.0 - s))


def uniform_cells(count: int) -> AtomMeasure:
    return AtomMeasure.uniform((np.arange(count) + 0.5) / count)


def test_check_exponent():
    check_exponent(0.5, 1)
    check_exponent(1.5, 2)
    for s, d in ((0.0, 1), (1.0, 1), (2.0, 2), (-0.1, 2)):
        with pytest.raises(InvalidExponent):
            check_exponent(s, d)


def test_riesz_constant_at_half():
    # Gamma(1/4) / Gamma(1/4) cancels
    assert riesz_constant(1, 0.5) == pytest.approx(1.0)


def test_energy_direct_two_atoms():
    m = AtomMeasure.uniform([0.0, 1.0])
    result = energy_direct(m, EnergySpec(s=0.5))
    assert result.value == pytest.approx(0.5)
    assert result.coincident_mass == pytest.approx(0.5)
    assert result.method == "direct"


def test_energy_direct_single_atom_reports_coincident_mass(unit_atom):
    result = energy_direct(unit_atom, EnergySpec(s=0.5))
    assert result.value == 0.0
    assert result.coincident_mass == pytest.approx(1.0)
    assert result.warnings


def test_energy_direct_mollified():
    m = AtomMeasure.uniform([0.0, 0.25])
    result = energy_direct(m, EnergySpec(s=0.5, mollify_eps=0.5))
    # every pair is clipped at eps
    assert result.value == pytest.approx(0.5**-0.5)
    assert result.coincident_mass == 0.0


def test_energy_direct_cells_recover_lebesgue():
    count = 4096
    result = energy_direct(uniform_cells(count), EnergySpec(s=0.5, cell_width=1.0 / count))
    assert result.value == pytest.approx(lebesgue_energy(0.5), rel=1e-3)


def test_energy_direct_grows_with_s():
    m = uniform_cells(256)
    values = [energy_direct(m, EnergySpec(s=s, cell_width=1.0 / 256)).value for s in (0.2, 0.4, 0.6, 0.8)]
    assert all(b > a for a, b in zip(values, values[1:]))


def test_energy_direct_errors():
    planar = AtomMeasure.uniform([[0.0, 0.0], [1.0, 1.0]])
    with pytest.raises(InvalidArgument):
        energy_direct(planar, EnergySpec(s=0.5))
    with pytest.raises(EmptyMeasure):
        energy_direct(AtomMeasure(), EnergySpec(s=0.5))
    with pytest.raises(InvalidExponent):
        energy_direct(uniform_cells(4), EnergySpec.model_construct(s=1.0, d=1, mollify_eps=0.0, cell_width=0.0))


def test_energy_direct_planar_pair():
    m = AtomMeasure.uniform([[0.0, 0.0], [3.0, 4.0]])
    assert energy_direct(m, EnergySpec(s=1.0, d=2)).value == pytest.approx(0.5 / 5.0)


def test_energy_fourier_of_zero_transform():
    result = energy_fourier(lambda xi: np.zeros(np.shape(xi)[0], dtype=complex), EnergySpec(s=0.5))
    assert result.value == 0.0
    assert result.method == "fourier"


@pytest.mark.parametrize("s", [0.3, 0.5, 0.7])
def test_energy_fourier_matches_direct(uniform_hat, s):
    fourier = energy_fourier(uniform_hat, EnergySpec(s=s, cutoff=1e4))
    assert fourier.value == pytest.approx(lebesgue_energy(s), rel=0.05)
    direct = energy_direct(uniform_cells(1024), EnergySpec(s=s, cell_width=1.0 / 1024))
    assert fourier.value == pytest.approx(direct.value, rel=0.05)
    assert fourier.tail_fraction < 0.01


def test_energy_fourier_flags_nonconvergent_tail():
    with pytest.raises(NonconvergentTail) as info:
        energy_fourier(lambda xi: np.ones(np.shape(xi)[0], dtype=complex), EnergySpec(s=0.5))
    assert info.value.tail_fraction > 0.5


def test_hausdorff_estimate_lebesgue():
    cm = construct(build_params(1.0, 4, 4, seed=0))
    assert hausdorff_dim_estimate(cm) == pytest.approx(1.0, abs=0.02)


def test_hausdorff_estimate_random_construction(small_measure):
    assert hausdorff_dim_estimate(small_measure) == pytest.approx(0.5, abs=0.05)


def test_hausdorff_estimate_middle_thirds(middle_thirds):
    assert hausdorff_dim_estimate(middle_thirds) == pytest.approx(math.log(2) / math.log(3), abs=0.05)


def test_hausdorff_estimate_shallow():
    shallow = deterministic_cantor(3, [0, 2], 1)
    assert hausdorff_dim_estimate(shallow) == shallow.params.alpha


def test_box_counting_dimension():
    line = np.linspace(0.0, 1.0, 4097)
    assert box_counting_dimension(line) == pytest.approx(1.0, abs=0.05)
    assert box_counting_dimension(np.array([0.3])) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(EmptyMeasure):
        box_counting_dimension(np.array([]))


def test_box_counting_dimension_planar():
    t = np.linspace(0.0, 1.0, 4097)
    diagonal = np.column_stack([t, t])
    assert box_counting_dimension(diagonal) == pytest.approx(1.0, abs=0.05)


def test_support_box_dimension(middle_thirds):
    assert support_box_dimension(middle_thirds) == pytest.approx(math.log(2) / math.log(3), abs=0.05)


def test_sample_frequencies():
    np.testing.assert_array_equal(sample_frequencies((1.0, 4.0)), [1.5, 2.5, 3.5])
    np.testing.assert_array_equal(sample_frequencies((0.0, 4.0), step=2.0, offset=0.0), [0.0, 2.0, 4.0])


def test_fourier_dim_of_interval():
    def interval_hat(xi):
        return step_factor(np.asarray(xi, dtype=float))

    assert fourier_dim_estimate(interval_hat, (1.0, 1000.0)) == 1.0


def test_fourier_dim_of_middle_thirds_vanishes():
    # |mu^(3 xi)| = |mu^(xi)| at half-integers, so nothing decays
    cm = deterministic_cantor(3, [0, 2], 12)
    grid = level_measure(cm, 12)
    beta = fourier_dim_estimate(lambda xi: fourier_grid(grid, xi), (1.0, 729.0))
    assert beta <= 0.05


def test_fourier_decay_report_planar_direction():
    def planar_hat(points):
        points = np.asarray(points, dtype=float).reshape(-1, 2)
        return step_factor(points[:, 0]) * step_factor(points[:, 1])

    report = fourier_decay_report(planar_hat, (1.0, 500.0), direction=(0.0, 1.0))
    assert report.fitted_beta >= 1.0
    assert fourier_dim_estimate(planar_hat, (1.0, 500.0), d=2) == pytest.approx(2.0)


def test_concentration_is_exact_on_thirds():
    cm = deterministic_cantor(3, [0, 1, 2], 4)
    for j in range(1, 5):
        assert _concentration(cm, j) == Fraction(2, 3**j)


def test_fourier_dim_does_not_exceed_hausdorff(middle_thirds):
    lebesgue = construct(build_params(1.0, 4, 4, seed=0))
    for cm in (lebesgue, middle_thirds):
        grid = level_measure(cm, cm.params.depth)
        beta = fourier_dim_estimate(lambda xi: fourier_grid(grid, xi), (1.0, 729.0))
        assert beta <= hausdorff_dim_estimate(cm) + 0.1


@pytest.mark.slow
def test_fourier_dim_of_random_construction(half_depth9):
    grid = level_measure(half_depth9, 9)
    beta = fourier_dim_estimate(lambda xi: fourier_grid(grid, xi), (16.0, 4096.0), log_correct=True)
    assert beta == pytest.approx(0.5, abs=0.15)
    assert hausdorff_dim_estimate(half_depth9) == pytest.approx(0.5, abs=0.05)
    assert beta <= hausdorff_dim_estimate(half_depth9) + 0.1


@pytest.mark.slow
def test_fourier_dim_survives_product_with_middle_thirds(half_depth9, middle_thirds):
    grid = level_measure(half_depth9, 9)
    nu = discretize(level_measure(middle_thirds, 8))
    window = (16.0, 4096.0)
    alone = fourier_dim_estimate(lambda xi: fourier_grid(grid, xi), window, log_correct=True)
    product = fourier_dim_estimate(lambda xi: fourier_product(grid, nu, xi), window, log_correct=True)
    assert product >= alone - 0.1
    # |nu^(3 xi)| >= |nu^(xi)| at half-integers, so nothing decays
    assert fourier_dim_estimate(lambda xi: fourier_atoms(nu, xi), window) <= 0.05
