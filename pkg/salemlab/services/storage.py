"""File I/O for measures, run configurations, reports and plot-ready tables."""

import csv
import hashlib
import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Union

import yaml
from pydantic import BaseModel, ValidationError

from ..core.exceptions import ConfigError
from ..schemas.construction_schemas import CantorMeasure
from ..schemas.measure_schemas import AtomMeasure, GridMeasure

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

SCAN_COLUMNS = ["k", "xi", "re", "im", "abs", "envelope_bound"]


def fmt(value: float) -> str:
    """17 significant digits with a '.' decimal point."""
    return format(float(value), ".17g")


def canonical_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _read_text(path: PathLike) -> str:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"file not found: {path}")
    return path.read_text(encoding="utf-8")


def write_json(path: PathLike, payload: Any) -> Path:
    """Write payload as sorted, indented JSON (byte-stable across runs)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(canonical_json(payload), encoding="utf-8")
    logger.debug(f"Wrote {path}")
    return path


def read_json(path: PathLike) -> Any:
    try:
        return json.loads(_read_text(path))
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path} is not valid JSON: {e}") from e


def load_run_config(path: PathLike) -> Dict[str, Any]:
    """Read a YAML (or JSON) run configuration into a dict."""
    try:
        data = yaml.safe_load(_read_text(path))
    except yaml.YAMLError as e:
        raise ConfigError(f"{path} is not valid YAML: {e}") from e
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ConfigError(f"{path} must hold a mapping of settings")
    return data


def config_hash(config: BaseModel) -> str:
    """SHA-256 of the canonical JSON form of a validated config, output location excluded."""
    text = json.dumps(config.model_dump(mode="json", exclude={"out_dir"}), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def provenance(config: BaseModel, seed: Optional[int]) -> Dict[str, Any]:
    from .. import __version__

    return {"config_sha256": config_hash(config), "seed": seed, "version": __version__}


def save_cantor_measure(path: PathLike, cm: CantorMeasure, extra: Optional[Dict[str, Any]] = None) -> Path:
    payload = cm.model_dump(mode="json")
    if extra:
        payload["provenance"] = extra
    return write_json(path, payload)


def load_cantor_measure(path: PathLike) -> CantorMeasure:
    """Load a construction record written by save_cantor_measure."""
    data = read_json(path)
    if isinstance(data, dict):
        data.pop("provenance", None)
    try:
        return CantorMeasure.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"{path} is not a construction record: {e}") from e


def atom_payload(m: AtomMeasure) -> List[List[Any]]:
    """AtomMeasure as a bare [[position, weight], ...] list; planar positions are [x, y]."""
    return m.model_dump(mode="json")["atoms"]


def load_atom_measure(path: PathLike) -> AtomMeasure:
    """Load a bare [[position, weight], ...] list, or the {"dim", "atoms"} record form."""
    data = read_json(path)
    if isinstance(data, list):
        dim = 2 if data and isinstance(data[0][0], list) else 1
        data = {"atoms": data, "dim": dim}
    try:
        return AtomMeasure.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"{path} is not an atom list: {e}") from e


def grid_payload(m: GridMeasure) -> Dict[str, Any]:
    return m.model_dump(mode="json")


def write_csv(path: PathLike, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    """Write rows with floats at 17 significant digits and '\\n' line endings."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(v) if isinstance(v, float) else v for v in row])
    logger.debug(f"Wrote {path}")
    return path


def read_csv(path: PathLike) -> List[Dict[str, str]]:
    with Path(path).open(encoding="utf-8", newline="") as handle:
        return list(csv.DictReader(handle))


def certificate_table(cm: CantorMeasure) -> str:
    """Human-readable per-level table of attempts and maximum slacks."""
    lines = [f"{'level':>5} {'n':>4} {'t':>4} {'attempts':>8} {'max X':>8} {'max Y':>8} {'C0':>8}"]
    for level, cert in zip(cm.levels, cm.certificates):
        slack_y = "-" if cert.max_slack_Y is None else f"{cert.max_slack_Y:.4f}"
        c0 = "-" if cert.implied_c0 is None else f"{cert.implied_c0:.4f}"
        lines.append(
            f"{cert.level:>5} {level.n:>4} {level.t:>4} {cert.attempts:>8} "
            f"{cert.max_slack_X:>8.4f} {slack_y:>8} {c0:>8}"
        )
    return "\n".join(lines) + "\n"
