from ..schemas.run_schemas import CommandResult, CommandTask, SumsetConfig
from ..schemas.sumset_schemas import SumsetSpec
from ..services.storage import write_json
from ..services.sumset_analysis import theorem_pipeline
from .base_command import BaseCommand


class SumsetCommand(BaseCommand):
    """Run the RY + Z desk checks and write the verdict."""

    name = "sumset"
    config_model = SumsetConfig

    def run(self, task: CommandTask, config: SumsetConfig) -> CommandResult:
        spec = SumsetSpec(R=config.R, Y=config.Y, Z=config.Z, delta=config.delta, d=config.d)
        report = theorem_pipeline(
            spec,
            mode=config.mode,
            s=config.s,
            cutoffs=config.cutoffs,
            energy_cutoff=config.energy_cutoff,
            window=config.window,
            deltas=config.deltas,
        )
        payload = report.model_dump(mode="json")
        out = self.output_dir(config)
        path = write_json(
            out / f"{config.name or 'sumset'}.json",
            {"report": payload, "provenance": self.provenance(config)},
        )
        self.logger.info(f"{config.mode} verdict: {report.verdict} (predicted dim {report.predicted_dim:.3f})")
        return CommandResult(
            task_id=task.task_id,
            command=self.name,
            outputs={"report": str(path)},
            summary={"verdict": report.verdict, "predicted_dim": report.predicted_dim},
        )
