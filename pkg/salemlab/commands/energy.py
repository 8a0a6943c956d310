from typing import Dict

from ..schemas.energy_schemas import EnergyResult
from ..schemas.run_schemas import CommandResult, CommandTask, EnergyConfig
from ..services.dimension_est import energy_direct, energy_fourier
from ..services.storage import write_json
from ..services.sumset_analysis import set_measure, set_transform
from .base_command import BaseCommand


class EnergyCommand(BaseCommand):
    """Riesz s-energy of a set's natural measure, directly and on the Fourier side."""

    name = "energy"
    config_model = EnergyConfig

    def run(self, task: CommandTask, config: EnergyConfig) -> CommandResult:
        spec = config.energy
        results: Dict[str, EnergyResult] = {}
        if config.method in ("direct", "both"):
            results["direct"] = energy_direct(set_measure(config.measure), spec)
        if config.method in ("fourier", "both"):
            results["fourier"] = energy_fourier(set_transform(config.measure, spec.d), spec)

        summary = {name: r.model_dump(mode="json") for name, r in results.items()}
        if len(results) == 2 and results["direct"].value > 0:
            summary["relative_gap"] = abs(results["fourier"].value / results["direct"].value - 1.0)

        out = self.output_dir(config)
        path = write_json(
            out / f"{config.name or 'energy'}.json",
            {"energy": summary, "provenance": self.provenance(config)},
        )
        return CommandResult(
            task_id=task.task_id, command=self.name, outputs={"report": str(path)}, summary=summary
        )
