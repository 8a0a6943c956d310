import numpy as np
import pytest
from pydantic import ValidationError

from salemlab.core.exceptions import InvalidArgument, NonconvergentTail, ResolutionTooCoarse
from salemlab.schemas.energy_schemas import EnergySpec
from salemlab.schemas.measure_schemas import AtomMeasure
from salemlab.schemas.sumset_schemas import SetDescription, SumsetSpec
from salemlab.services.dimension_est import energy_direct
from salemlab.services.sumset_analysis import (
    convolution_energy,
    cone_fixture,
    cover_schedule,
    decay_bound,
    dilation_cover_measure,
    dilation_dimension,
    dilation_transform,
    feature_size,
    l2_density_check,
    set_dimension,
    set_measure,
    set_net,
    set_transform,
    sumset_cover_measure,
    theorem_pipeline,
)

UNIT = SetDescription(kind="interval", lo=1.0, hi=2.0)
ONE = SetDescription(kind="atoms", points=[1.0])
ORIGIN = SetDescription(kind="atoms", points=[0.0])


def spec(R=UNIT, Y=ONE, Z=ORIGIN, delta=2.0**-8, d=1):
    return SumsetSpec(R=R, Y=Y, Z=Z, delta=delta, d=d)


def power_hat(exponent):
    def transform(xi):
        return (1.0 + np.abs(np.asarray(xi, dtype=float))) ** -exponent

    return transform


def test_set_net_and_feature_size():
    net = set_net(UNIT, 0.25)
    np.testing.assert_allclose(net, np.linspace(1.0, 2.0, 9))
    assert feature_size(UNIT) == 1.0
    assert feature_size(ONE) == np.inf
    cantor = SetDescription(kind="cantor", n=3, digits=[0, 2], depth=2)
    assert feature_size(cantor) == pytest.approx(1.0 / 3.0)
    assert set_net(cantor, 1.0).size == 4 * 3


def test_set_measure_kinds():
    interval = set_measure(UNIT)
    assert interval.size == 1024
    assert interval.weights.sum() == pytest.approx(1.0)
    cantor = set_measure(SetDescription(kind="cantor", n=3, digits=[0, 2], depth=3))
    assert cantor.size == 8
    weighted = set_measure(SetDescription(kind="atoms", points=[1.0, 2.0], weights=[0.25, 0.75]))
    np.testing.assert_allclose(weighted.weights, [0.25, 0.75])
    with pytest.raises(InvalidArgument):
        set_measure(SetDescription(kind="circle"))


def test_set_dimension():
    assert set_dimension(UNIT) == 1.0
    assert set_dimension(ONE) == 0.0
    assert set_dimension(SetDescription(kind="cantor", n=4, digits=[0, 2])) == pytest.approx(0.5)


def test_cover_of_interval_plus_interval():
    s = spec(Z=SetDescription(kind="interval", lo=0.0, hi=1.0))
    assert sumset_cover_measure(s) == pytest.approx(2.0, abs=2 * s.delta)


def test_cover_of_atoms():
    s = spec(R=SetDescription(kind="atoms", points=[1.0, 2.0, 3.0]), delta=0.01)
    assert sumset_cover_measure(s) == pytest.approx(0.03)


def test_cover_rejects_coarse_resolution():
    s = spec(Y=SetDescription(kind="interval", lo=0.0, hi=0.1), delta=0.5)
    with pytest.raises(ResolutionTooCoarse):
        sumset_cover_measure(s)


def test_cover_with_zero_shift_is_dilation_cover():
    s = spec(Y=SetDescription(kind="atoms", points=[1.0, 1.5]))
    assert sumset_cover_measure(s) == dilation_cover_measure(s)


def test_cover_schedule_is_monotone():
    s = spec(Z=SetDescription(kind="interval", lo=0.0, hi=1.0))
    report = cover_schedule(s, [2.0**-4, 2.0**-6, 2.0**-8])
    assert report.deltas == [2.0**-4, 2.0**-6, 2.0**-8]
    assert all(b <= a for a, b in zip(report.measures, report.measures[1:]))
    assert report.stabilized
    assert report.floor == pytest.approx(2.0, abs=0.01)
    assert abs(report.slope) < 0.05


def test_cover_schedule_rejects_non_multiples():
    s = spec(Z=SetDescription(kind="interval", lo=0.0, hi=1.0))
    with pytest.raises(InvalidArgument):
        cover_schedule(s, [0.1, 2.0**-8])
    with pytest.raises(InvalidArgument):
        cover_schedule(s, [])


def test_dilation_transform_with_unit_atom():
    xi = np.linspace(0.5, 40.0, 80)
    np.testing.assert_allclose(
        dilation_transform(UNIT, ONE, 1)(xi), set_transform(UNIT, 1)(xi), atol=1e-15
    )


def test_dilation_transform_averages_dilates():
    Y = SetDescription(kind="atoms", points=[1.0, 2.0])
    xi = np.array([0.0, 0.75, 3.3])
    base = set_transform(UNIT, 1)
    expected = 0.5 * (base(xi) + base(2.0 * xi))
    np.testing.assert_allclose(dilation_transform(UNIT, Y, 1)(xi), expected, atol=1e-15)


def test_l2_of_uniform_squared(uniform_hat):
    report = l2_density_check(uniform_hat, uniform_hat, [8.0, 16.0, 32.0, 64.0])
    assert report.values[-1] == pytest.approx(2.0 / 3.0, abs=1e-3)
    assert all(b >= a for a, b in zip(report.values, report.values[1:]))
    assert report.verdict == "L2"


def test_l2_of_zero_transform(uniform_hat):
    report = l2_density_check(uniform_hat, lambda xi: np.zeros(np.shape(xi)[0]), [4.0, 8.0, 16.0])
    assert report.values == [0.0, 0.0, 0.0]
    assert report.verdict == "L2"


def test_l2_of_constant_transform():
    ones = power_hat(0.0)
    report = l2_density_check(ones, ones, [8.0, 16.0, 32.0, 64.0])
    assert report.values == pytest.approx([16.0, 32.0, 64.0, 128.0])
    assert not report.converged
    assert report.verdict == "not L2"


def test_l2_rejects_bad_schedule(uniform_hat):
    with pytest.raises(InvalidArgument):
        l2_density_check(uniform_hat, uniform_hat, [16.0, 8.0])
    with pytest.raises(InvalidArgument):
        l2_density_check(uniform_hat, uniform_hat, [])


def test_convolution_energy_converges():
    result = convolution_energy(power_hat(0.4), power_hat(0.25), s=0.6, d=1, cutoff=1e4)
    assert np.isfinite(result.value) and result.value > 0
    assert result.tail_fraction < 0.1


def test_convolution_energy_flags_slow_decay():
    with pytest.raises(NonconvergentTail):
        convolution_energy(power_hat(0.15), power_hat(0.0), s=0.6, d=1, cutoff=1e4)


def test_convolution_energy_matches_direct_triangle(uniform_hat):
    fourier = convolution_energy(uniform_hat, uniform_hat, s=0.9, d=1, cutoff=1e4)
    # uniform * uniform is the triangle density on [0, 2]
    edges = np.linspace(0.0, 2.0, 1025)
    cdf = np.where(edges <= 1.0, edges**2 / 2.0, 1.0 - (2.0 - edges) ** 2 / 2.0)
    triangle = AtomMeasure.from_arrays(0.5 * (edges[:-1] + edges[1:]), np.diff(cdf))
    direct = energy_direct(triangle, EnergySpec(s=0.9, cell_width=1.0 / 512))
    assert fourier.value == pytest.approx(direct.value, rel=0.05)


def test_dilation_dimension_closed_forms():
    assert dilation_dimension(spec()) == 1.0
    assert dilation_dimension(spec(R=SetDescription(kind="atoms", points=[2.0]), Y=UNIT)) == 1.0
    circle = SetDescription(kind="circle")
    assert dilation_dimension(spec(Y=circle, Z=circle, d=2)) == 2.0


def test_decay_bound_of_an_interval(uniform_hat):
    beta, majorant = decay_bound(uniform_hat, 1, (16.0, 1024.0))
    # |sinc| at half-integers is 1 / (pi xi): the fit hits the cap
    assert beta == 2.0
    constant = 17.5 / (16.5 * np.pi)
    np.testing.assert_allclose(majorant(np.array([0.0, -16.5, 99.0])), constant / (1.0 + np.array([0.0, 16.5, 99.0])))
    xis = np.arange(16.5, 1024.0)
    assert np.all(np.abs(uniform_hat(xis)) <= majorant(xis) + 1e-12)


def test_pipeline_orderings_are_computed_separately():
    s = spec(delta=2.0**-6)
    cutoffs = [16.0, 32.0, 64.0, 128.0]
    report = theorem_pipeline(s, cutoffs=cutoffs)
    direct = l2_density_check(dilation_transform(s.R, s.Y, 1), set_transform(s.Z, 1), cutoffs)
    ry_first, z_first = report.orderings
    assert [ry_first.ordering, z_first.ordering] == ["RY+Z", "Z+RY"]
    assert report.joint_l2.values == pytest.approx(direct.values)
    # the transform of {0} is 1, so its majorant is 1 and Z+RY is the exact product
    assert z_first.l2.values == pytest.approx(direct.values)
    # RY+Z integrates the squared majorant C^2 / (1 + |xi|)^2 of [1, 2]
    constant = 17.5 / (16.5 * np.pi)
    expected = [2.0 * constant**2 * (1.0 - 1.0 / (1.0 + c)) for c in cutoffs]
    assert ry_first.l2.values == pytest.approx(expected, rel=1e-2)
    assert ry_first.l2.values != pytest.approx(z_first.l2.values, rel=1e-2)
    assert ry_first.fourier_dim == 1.0 and z_first.fourier_dim == 0.0
    assert all(o.positive for o in report.orderings)
    assert report.verdict == "positive"
    assert report.predicted_dim == pytest.approx(1.0)


def test_atom_net_description():
    net = SetDescription(kind="atoms", lo=0.0, hi=1.0, count=5)
    assert net.points == [0.0, 0.25, 0.5, 0.75, 1.0]
    assert SetDescription.model_validate(net.model_dump()).points == net.points
    assert feature_size(net) == np.inf
    for bad in (
        {"kind": "interval", "count": 4},
        {"kind": "atoms", "points": [0.0], "count": 4},
        {"kind": "atoms", "lo": 1.0, "hi": 1.0, "count": 4},
    ):
        with pytest.raises(ValidationError):
            SetDescription(**bad)


def test_cover_accepts_a_net_finer_than_delta():
    net = SetDescription(kind="atoms", lo=0.0, hi=1.0, count=257)
    measure = sumset_cover_measure(spec(Z=net, delta=2.0**-6))
    # [1, 2] + a net with spacing below delta fills [1, 3]
    assert measure == pytest.approx(2.0, abs=4 * 2.0**-6)


def test_pipeline_argument_checks():
    with pytest.raises(InvalidArgument):
        theorem_pipeline(spec(), mode="box")
    with pytest.raises(InvalidArgument):
        theorem_pipeline(spec(), mode="hausdorff")


@pytest.mark.slow
def test_cone_energy_is_inconclusive():
    report = theorem_pipeline(cone_fixture(delta=2.0**-8), mode="hausdorff", s=1.6)
    assert all(o.nonconvergent for o in report.orderings)
    assert report.verdict == "inconclusive"


@pytest.mark.slow
def test_cone_cover_shrinks_like_root_delta():
    report = cover_schedule(cone_fixture(delta=2.0**-10), [2.0**-k for k in range(6, 11)])
    assert report.slope == pytest.approx(0.5, abs=0.15)
    assert report.measures[-1] < report.measures[0]


@pytest.mark.slow
def test_dilated_cantor_plus_net_is_positive():
    net_spec = SumsetSpec(
        R=SetDescription(kind="cantor_ref", alpha=0.6, depth=6, seed=1),
        Y=ONE,
        Z=SetDescription(kind="atoms", lo=0.0, hi=1.0, count=4096),
        delta=2.0**-11,
    )
    report = theorem_pipeline(net_spec, deltas=[2.0**-k for k in range(6, 12)])
    assert report.joint_l2.converged
    assert all(r < 0.7 for r in report.joint_l2.ratios[-2:])
    assert report.cover.stabilized
    assert report.cover.floor > 0.5
    assert report.verdict == "positive"
