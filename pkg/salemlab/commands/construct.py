from pydantic import ValidationError

from ..core.exceptions import ConfigError
from ..schemas.run_schemas import CommandResult, CommandTask, ConstructConfig
from ..services.cantor_construct import acceptance_lower_bound, build_params, construct
from ..services.storage import certificate_table, save_cantor_measure
from ..services.sumset_analysis import set_measure
from .base_command import BaseCommand


class ConstructCommand(BaseCommand):
    """Build a certified random Cantor measure and write it with its certificate table."""

    name = "construct"
    config_model = ConstructConfig

    def run(self, task: CommandTask, config: ConstructConfig) -> CommandResult:
        seed = self.seed(config)
        nu = set_measure(config.nu) if config.nu is not None else None
        try:
            params = build_params(
                config.alpha,
                config.n_star,
                config.depth,
                seed,
                nu=nu,
                zeta0=config.zeta0,
                k_max=config.k_max,
                retry_cap=config.retry_cap,
                branch=config.branch,
                keep=config.keep,
            )
        except ValidationError as e:
            raise ConfigError(f"invalid construction parameters: {e}") from e

        cm = construct(params, nu=nu)
        out = self.output_dir(config)
        stem = config.name or "measure"
        measure_path = save_cantor_measure(out / f"{stem}.json", cm, self.provenance(config))
        table_path = out / f"{stem}_certificates.txt"
        table_path.write_text(certificate_table(cm), encoding="utf-8")

        attempts = [cert.attempts for cert in cm.certificates]
        self.logger.info(f"Wrote {measure_path} ({cm.params.depth} levels, {sum(attempts)} attempts)")
        return CommandResult(
            task_id=task.task_id,
            command=self.name,
            outputs={"measure": str(measure_path), "certificates": str(table_path)},
            summary={
                "depth": cm.params.depth,
                "seed": seed,
                "zeta0": cm.params.zeta0,
                "k_max": cm.params.k_max,
                "acceptance_lower_bound": acceptance_lower_bound(cm.params),
                "attempts": attempts,
                "max_slack_X": max((c.max_slack_X for c in cm.certificates), default=0.0),
            },
        )
