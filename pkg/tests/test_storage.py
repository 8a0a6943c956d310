import json

import pytest

from salemlab.core.exceptions import ConfigError
from salemlab.schemas.measure_schemas import AtomMeasure
from salemlab.schemas.run_schemas import ConstructConfig
from salemlab.services.storage import (
    atom_payload,
    certificate_table,
    config_hash,
    load_atom_measure,
    load_cantor_measure,
    load_run_config,
    provenance,
    read_csv,
    save_cantor_measure,
    write_csv,
    write_json,
)


def test_cantor_measure_round_trip(tiny_measure, tmp_path):
    path = save_cantor_measure(tmp_path / "measure.json", tiny_measure, extra={"seed": 3})
    assert json.loads(path.read_text())["provenance"] == {"seed": 3}
    assert load_cantor_measure(path).model_dump() == tiny_measure.model_dump()


def test_saved_measure_is_byte_stable(tiny_measure, tmp_path):
    first = save_cantor_measure(tmp_path / "a.json", tiny_measure).read_bytes()
    second = save_cantor_measure(tmp_path / "b.json", tiny_measure).read_bytes()
    assert first == second


def test_load_errors(tmp_path):
    with pytest.raises(ConfigError):
        load_cantor_measure(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigError):
        load_cantor_measure(bad)
    write_json(tmp_path / "other.json", {"levels": []})
    with pytest.raises(ConfigError):
        load_cantor_measure(tmp_path / "other.json")


def test_write_csv_uses_round_trip_precision(tmp_path):
    path = write_csv(tmp_path / "scan.csv", ["k", "xi"], [[1, 0.1], [2, 0.5]])
    assert path.read_text().splitlines() == ["k,xi", "1,0.10000000000000001", "2,0.5"]
    rows = read_csv(path)
    assert float(rows[0]["xi"]) == 0.1


def test_load_atom_measure_forms(tmp_path):
    bare = tmp_path / "bare.json"
    bare.write_text(json.dumps([[1.0, 0.5], [2.0, 0.5]]))
    assert load_atom_measure(bare).size == 2

    planar = tmp_path / "planar.json"
    planar.write_text(json.dumps([[[0.0, 1.0], 1.0]]))
    assert load_atom_measure(planar).dim == 2

    m = AtomMeasure.uniform([1.0, 3.0])
    full = write_json(tmp_path / "full.json", atom_payload(m))
    assert json.loads(full.read_text()) == [[1.0, 0.5], [3.0, 0.5]]
    assert load_atom_measure(full).atoms == m.atoms

    record = tmp_path / "record.json"
    record.write_text(json.dumps({"dim": 1, "atoms": [[1.0, 1.0]]}))
    assert load_atom_measure(record).size == 1

    negative = tmp_path / "negative.json"
    negative.write_text(json.dumps([[1.0, -1.0]]))
    with pytest.raises(ConfigError):
        load_atom_measure(negative)


def test_config_hash():
    base = ConstructConfig(alpha=0.5, depth=4, seed=42)
    assert config_hash(base) == config_hash(ConstructConfig(alpha=0.5, depth=4, seed=42))
    assert config_hash(base) != config_hash(ConstructConfig(alpha=0.5, depth=4, seed=43))
    moved = ConstructConfig(alpha=0.5, depth=4, seed=42, out_dir="elsewhere")
    assert config_hash(base) == config_hash(moved)
    assert provenance(base, 42)["config_sha256"] == config_hash(base)


def test_load_run_config(tmp_path):
    path = tmp_path / "run.yaml"
    path.write_text("alpha: 0.5\ndepth: 4\nnu:\n  kind: atoms\n  points: [1.0, 2.0]\n")
    assert load_run_config(path) == {"alpha": 0.5, "depth": 4, "nu": {"kind": "atoms", "points": [1.0, 2.0]}}
    empty = tmp_path / "empty.yaml"
    empty.write_text("")
    assert load_run_config(empty) == {}
    listed = tmp_path / "list.yaml"
    listed.write_text("- 1\n- 2\n")
    with pytest.raises(ConfigError):
        load_run_config(listed)
    broken = tmp_path / "broken.yaml"
    broken.write_text("alpha: [0.5\n")
    with pytest.raises(ConfigError):
        load_run_config(broken)


def test_certificate_table(small_measure):
    table = certificate_table(small_measure)
    lines = table.splitlines()
    assert len(lines) == small_measure.params.depth + 1
    assert lines[0].split()[0] == "level"


def test_planar_atom_payload_is_a_bare_list(tmp_path):
    m = AtomMeasure.uniform([[0.0, 1.0], [2.0, 3.0]])
    path = write_json(tmp_path / "planar.json", atom_payload(m))
    assert json.loads(path.read_text()) == [[[0.0, 1.0], 0.5], [[2.0, 3.0], 0.5]]
    assert load_atom_measure(path).dim == 2
