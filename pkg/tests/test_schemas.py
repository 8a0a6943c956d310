import math

import pytest
from pydantic import ValidationError

from salemlab.schemas.construction_schemas import (
    ConstructionParams,
    default_zeta0,
    level_ratios,
    zeta_lower_bound,
)
from salemlab.schemas.energy_schemas import EnergySpec
from salemlab.schemas.measure_schemas import AtomMeasure, GridMeasure, MeasureDiam
from salemlab.schemas.run_schemas import ConstructConfig, DimConfig, SumsetConfig
from salemlab.schemas.sumset_schemas import SetDescription, SetKind, SumsetSpec
from salemlab.services.cantor_construct import build_params


def test_grid_measure_validation():
    GridMeasure(level=1, scale_den=4, count=2, offsets=[0, 3])
    with pytest.raises(ValidationError):
        GridMeasure(level=1, scale_den=4, count=2, offsets=[3, 0])
    with pytest.raises(ValidationError):
        GridMeasure(level=1, scale_den=4, count=2, offsets=[0, 4])
    with pytest.raises(ValidationError):
        GridMeasure(level=1, scale_den=4, count=3, offsets=[0, 1])


def test_grid_measure_is_frozen():
    m = GridMeasure(level=0, scale_den=1, count=1, offsets=[0])
    with pytest.raises(ValidationError):
        m.level = 2


def test_atom_measure_validation():
    with pytest.raises(ValidationError):
        AtomMeasure(atoms=[(1.0, 0.0)])
    with pytest.raises(ValidationError):
        AtomMeasure(atoms=[(1.0, math.inf)])
    with pytest.raises(ValidationError):
        AtomMeasure(atoms=[((1.0, 2.0), 1.0)], dim=1)
    with pytest.raises(ValueError):
        AtomMeasure.from_arrays([1.0, 2.0], [1.0, -1.0])


def test_atom_measure_diameter():
    assert AtomMeasure.uniform([1.0, 3.5, 2.0]).diameter() == 2.5
    planar = AtomMeasure.uniform([[0.0, 0.0], [3.0, 4.0]])
    assert planar.dim == 2
    assert planar.diameter() == pytest.approx(5.0)


def test_measure_diam_enforces_d0():
    assert MeasureDiam.from_diameters(1.0, 4.0).d0 == 0.25
    with pytest.raises(ValidationError):
        MeasureDiam(diam_mu=1.0, diam_prod=4.0, d0=1.0)


def test_zeta_bound_is_an_upper_bound():
    partial = 2.0 + 2.0 * math.fsum(2.0 / (1.0 + k * k) for k in range(1, 2001))
    assert zeta_lower_bound(1.0) > partial
    assert default_zeta0(1.0) == pytest.approx(1.0 + zeta_lower_bound(1.0))


def test_level_ratios_exact_for_half():
    ratios = level_ratios(0.5, [4] * 6, [2] * 6)
    assert ratios == pytest.approx([1.0] * 7)


def test_params_reject_small_zeta0():
    with pytest.raises(ValidationError):
        build_params(0.5, 4, 3, seed=0, zeta0=1.0)


def test_params_reject_bad_sequences():
    params = build_params(0.5, 4, 3, seed=0)
    data = params.model_dump()
    data["keep"] = [5, 2, 2]
    with pytest.raises(ValidationError):
        ConstructionParams(**data)
    data = params.model_dump()
    data["branch"] = [4, 4]
    with pytest.raises(ValidationError):
        ConstructionParams(**data)


def test_params_ratio_window():
    params = build_params(0.5, 4, 3, seed=0)
    data = params.model_dump()
    data["ratio_hi"] = 0.5
    data["ratio_lo"] = 0.25
    with pytest.raises(ValidationError):
        ConstructionParams(**data)


def test_energy_spec_range():
    EnergySpec(s=0.5)
    EnergySpec(s=1.5, d=2)
    with pytest.raises(ValidationError):
        EnergySpec(s=1.0)
    with pytest.raises(ValidationError):
        EnergySpec(s=0.5, d=2, cell_width=0.1)


def test_set_description_validation():
    assert SetDescription(kind="circle").is_planar
    assert SetDescription(kind="atoms", points=[(0.0, 1.0)]).is_planar
    assert not SetDescription(kind="atoms", points=[0.5]).is_planar
    with pytest.raises(ValidationError):
        SetDescription(kind="interval", lo=1.0, hi=1.0)
    with pytest.raises(ValidationError):
        SetDescription(kind="cantor", n=3, digits=[0, 3])
    with pytest.raises(ValidationError):
        SetDescription(kind="cantor_ref")
    with pytest.raises(ValidationError):
        SetDescription(kind="interval", bogus=1)


def test_sumset_spec_dimensions():
    circle = SetDescription(kind=SetKind.CIRCLE)
    interval = SetDescription(kind=SetKind.INTERVAL)
    with pytest.raises(ValidationError):
        SumsetSpec(R=interval, Y=circle, Z=interval, delta=0.1, d=1)
    with pytest.raises(ValidationError):
        SumsetSpec(R=circle, Y=interval, Z=interval, delta=0.1, d=2)
    SumsetSpec(R=interval, Y=circle, Z=interval, delta=0.1, d=2)


def test_run_configs_reject_unknown_keys():
    with pytest.raises(ValidationError):
        ConstructConfig(alpha=0.5, depth=3, colour="blue")
    with pytest.raises(ValidationError):
        ConstructConfig(alpha=0.5, depth=3, branch=[4, 4, 4])


def test_dim_config_needs_one_source():
    with pytest.raises(ValidationError):
        DimConfig()
    with pytest.raises(ValidationError):
        DimConfig(measure="m.json", fixture={"kind": "cantor"})
    with pytest.raises(ValidationError):
        DimConfig(fixture={"kind": "interval"})
    DimConfig(fixture={"kind": "cantor", "n": 3, "digits": [0, 2]})


def test_sumset_config_hausdorff_needs_s():
    sets = {"R": {"kind": "interval", "lo": 1, "hi": 2}, "Y": {"kind": "atoms", "points": [1.0]}, "Z": {"kind": "interval"}}
    with pytest.raises(ValidationError):
        SumsetConfig(mode="hausdorff", **sets)
    assert SumsetConfig(mode="hausdorff", s=0.5, **sets).s == 0.5
