from typing import Any, Dict

from ..core.config import settings
from ..schemas.construction_schemas import CantorMeasure
from ..schemas.run_schemas import CommandResult, CommandTask, DimConfig
from ..schemas.sumset_schemas import SetKind
from ..services.cantor_construct import deterministic_cantor, frostman_ratio, level_measure
from ..services.dimension_est import (
    fourier_dim_estimate,
    hausdorff_dim_estimate,
    support_box_dimension,
)
from ..services.fourier_lab import fourier_grid, fourier_product
from ..services.storage import load_cantor_measure, write_json
from ..services.sumset_analysis import reference_measure, set_measure
from .base_command import BaseCommand


class DimCommand(BaseCommand):
    """Hausdorff and Fourier dimension estimates of a constructed or fixed Cantor measure."""

    name = "dim"
    config_model = DimConfig

    def _measure(self, config: DimConfig) -> CantorMeasure:
        if config.measure is not None:
            return load_cantor_measure(config.measure)
        fixture = config.fixture
        if fixture.kind == SetKind.CANTOR:
            return deterministic_cantor(fixture.n, fixture.digits, fixture.depth)
        return reference_measure(fixture)

    def run(self, task: CommandTask, config: DimConfig) -> CommandResult:
        cm = self._measure(config)
        grid = level_measure(cm, cm.params.depth)
        zeta0 = cm.params.zeta0

        estimates: Dict[str, Any] = {
            "alpha": cm.params.alpha,
            "hausdorff": hausdorff_dim_estimate(cm),
            "box": support_box_dimension(cm) if cm.params.depth else 0.0,
            "fourier": fourier_dim_estimate(
                lambda xi: fourier_grid(grid, xi), config.window, config.log_correct, zeta0=zeta0
            ),
        }
        samples = settings.FROSTMAN_SAMPLES if config.frostman_samples is None else config.frostman_samples
        estimates["frostman_ratio"] = frostman_ratio(cm, samples)

        if config.product is not None:
            nu = set_measure(config.product)
            estimates["fourier_product"] = fourier_dim_estimate(
                lambda xi: fourier_product(grid, nu, xi), config.window, config.log_correct, zeta0=zeta0
            )

        out = self.output_dir(config)
        path = write_json(
            out / f"{config.name or 'dim'}.json",
            {"estimates": estimates, "window": list(config.window), "provenance": self.provenance(config)},
        )
        self.logger.info(
            f"hausdorff {estimates['hausdorff']:.4f}, fourier {estimates['fourier']:.4f}"
        )
        return CommandResult(
            task_id=task.task_id, command=self.name, outputs={"report": str(path)}, summary=estimates
        )
