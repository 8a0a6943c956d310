from typing import Any, Dict, List

from ..core.exceptions import ConfigError, VerificationRejected
from ..schemas.run_schemas import CommandResult, CommandTask, VerifyConfig
from ..services.cantor_construct import anchors_at, check_frequencies, product_envelope, verify_level
from ..services.storage import load_cantor_measure, write_json
from .base_command import BaseCommand


class VerifyCommand(BaseCommand):
    """Re-run verify_level on every stored level and compare with the stored certificates."""

    name = "verify"
    config_model = VerifyConfig

    def run(self, task: CommandTask, config: VerifyConfig) -> CommandResult:
        cm = load_cantor_measure(config.measure)
        if len(cm.certificates) != cm.params.depth:
            raise ConfigError(f"{config.measure} carries no certificate for every level")

        envelope = None
        if cm.nu is not None:
            envelope = product_envelope(cm.nu, check_frequencies(cm.params))

        levels: List[Dict[str, Any]] = []
        violations: List[VerificationRejected] = []
        for j, (digits, stored) in enumerate(zip(cm.levels, cm.certificates)):
            record: Dict[str, Any] = {"level": j + 1}
            try:
                cert = verify_level(
                    j, anchors_at(cm, j), digits.digit_sets, cm.nu, cm.params, envelope=envelope
                )
            except VerificationRejected as e:
                record.update(ok=False, xi=e.xi, ratio=e.ratio, which=e.which)
                violations.append(e)
            else:
                matches = (
                    cert.max_slack_X == stored.max_slack_X and cert.max_slack_Y == stored.max_slack_Y
                )
                record.update(ok=matches, max_slack_X=cert.max_slack_X, max_slack_Y=cert.max_slack_Y)
                if not matches:
                    self.logger.warning(
                        f"level {j + 1}: recomputed slack {cert.max_slack_X} differs from stored "
                        f"{stored.max_slack_X}"
                    )
            levels.append(record)

        mismatches = sum(1 for r in levels if not r["ok"])
        out = self.output_dir(config)
        path = write_json(
            out / f"{config.name or 'verify'}.json",
            {"levels": levels, "violations": mismatches, "provenance": self.provenance(config)},
        )
        if violations:
            raise violations[0]
        if mismatches:
            raise ConfigError(f"{mismatches} stored certificate(s) do not match the recomputation")
        self.logger.info(f"all {len(levels)} levels re-verified")
        return CommandResult(
            task_id=task.task_id,
            command=self.name,
            outputs={"report": str(path)},
            summary={"levels": len(levels), "violations": 0},
        )
