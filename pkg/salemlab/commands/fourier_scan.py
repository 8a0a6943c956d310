import numpy as np

from ..core.exceptions import DepthExceeded
from ..schemas.run_schemas import CommandResult, CommandTask, FourierScanConfig
from ..services.cantor_construct import level_measure
from ..services.fourier_lab import decay_fit, fourier_grid, fourier_product, log_factor
from ..services.storage import SCAN_COLUMNS, load_cantor_measure, write_csv, write_json
from ..services.sumset_analysis import set_measure
from .base_command import BaseCommand


class FourierScanCommand(BaseCommand):
    """Scan mu_j^ (or (mu_j . nu)^) on the d0 grid and fit its decay."""

    name = "fourier-scan"
    config_model = FourierScanConfig

    def run(self, task: CommandTask, config: FourierScanConfig) -> CommandResult:
        cm = load_cantor_measure(config.measure)
        level = cm.params.depth if config.level is None else config.level
        if level > cm.params.depth:
            raise DepthExceeded(f"level {level} outside 0..{cm.params.depth}")
        grid = level_measure(cm, level)

        k = np.arange(-config.k_max, config.k_max + 1)
        xi = config.d0 * k
        if config.product is not None:
            values = fourier_product(grid, set_measure(config.product), xi)
        else:
            values = fourier_grid(grid, xi)
        magnitude = np.abs(values)

        positive = xi > 0
        report = decay_fit(
            np.column_stack([xi[positive], magnitude[positive]]),
            config.window,
            log_correct=config.log_correct,
            zeta0=cm.params.zeta0,
        )
        bound = report.fitted_C * (1.0 + np.abs(xi)) ** (-report.fitted_beta / 2.0)
        if config.log_correct:
            bound = bound * log_factor(xi, cm.params.zeta0)

        out = self.output_dir(config)
        stem = config.name or "scan"
        rows = (
            (int(kk), float(x), float(v.real), float(v.imag), float(a), float(b))
            for kk, x, v, a, b in zip(k, xi, values, magnitude, bound)
        )
        csv_path = write_csv(out / f"{stem}.csv", SCAN_COLUMNS, rows)
        summary = report.summary()
        summary["level"] = level
        json_path = write_json(
            out / f"{stem}_decay.json", {"report": summary, "provenance": self.provenance(config)}
        )
        self.logger.info(f"level {level}: fitted beta {report.fitted_beta:.4f} on {config.window}")
        return CommandResult(
            task_id=task.task_id,
            command=self.name,
            outputs={"csv": str(csv_path), "report": str(json_path)},
            summary=summary,
        )
