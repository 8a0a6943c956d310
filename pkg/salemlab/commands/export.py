import numpy as np

from ..core.exceptions import DepthExceeded
from ..schemas.run_schemas import CommandResult, CommandTask, ExportConfig
from ..services.cantor_construct import level_measure
from ..services.measure_core import cdf, discretize
from ..services.storage import atom_payload, grid_payload, load_cantor_measure, write_csv, write_json
from .base_command import BaseCommand


class ExportCommand(BaseCommand):
    """Write mu_j as a step measure, as midpoint atoms and as a CDF table."""

    name = "export"
    config_model = ExportConfig

    def run(self, task: CommandTask, config: ExportConfig) -> CommandResult:
        cm = load_cantor_measure(config.measure)
        level = cm.params.depth if config.level is None else config.level
        if level > cm.params.depth:
            raise DepthExceeded(f"level {level} outside 0..{cm.params.depth}")
        grid = level_measure(cm, level)

        out = self.output_dir(config)
        stem = config.name or f"level{level}"
        grid_path = write_json(out / f"{stem}_grid.json", grid_payload(grid))
        atoms_path = write_json(out / f"{stem}_atoms.json", atom_payload(discretize(grid)))
        t = np.linspace(1.0, 2.0, config.cdf_points)
        cdf_path = write_csv(
            out / f"{stem}_cdf.csv", ["t", "F"], ((float(x), float(cdf(grid, x))) for x in t)
        )
        return CommandResult(
            task_id=task.task_id,
            command=self.name,
            outputs={"grid": str(grid_path), "atoms": str(atoms_path), "cdf": str(cdf_path)},
            summary={"level": level, "intervals": grid.count},
        )
