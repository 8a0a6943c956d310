from typing import List, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..core.config import settings
from .measure_schemas import AtomMeasure


class DecayReport(BaseModel):
    """Fitted power-law envelope C (1 + |xi|)^(-beta/2) of scanned transform values."""

    grid: List[float] = Field(default_factory=list)
    values: List[float] = Field(default_factory=list)
    fitted_C: float
    fitted_beta: float = Field(ge=0.0)
    window: Tuple[float, float]
    n_samples: int
    log_corrected: bool = False

    def summary(self) -> dict:
        """The JSON record written next to scan tables."""
        return {
            "window": list(self.window),
            "fitted_C": self.fitted_C,
            "fitted_beta": self.fitted_beta,
            "n_samples": self.n_samples,
            "log_corrected": self.log_corrected,
        }


class EnvelopeG(BaseModel):
    """Decay envelope g(x) = (1+x)^(-1/2) + sup_{t >= 1} |nu^(t x)| of a reference measure."""

    model_config = ConfigDict(frozen=True)

    nu_ref: AtomMeasure
    t_max: float = Field(default_factory=lambda: settings.ENVELOPE_T_MAX, ge=1.0)
    points_per_decade: int = Field(
        default_factory=lambda: settings.ENVELOPE_POINTS_PER_DECADE, ge=1
    )

    @model_validator(mode="after")
    def _check_nu(self) -> "EnvelopeG":
        if self.nu_ref.dim != 1:
            raise ValueError("the envelope is defined for measures on the line")
        return self
