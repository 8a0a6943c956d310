from typing import List, Literal, Optional

from pydantic import BaseModel, Field, model_validator


class EnergySpec(BaseModel):
    """Riesz s-energy parameters shared by the direct and Fourier-side evaluators."""

    s: float
    d: Literal[1, 2] = 1
    cutoff: float = Field(default=1e4, gt=0)
    mollify_eps: float = Field(default=0.0, ge=0)
    cell_width: float = Field(default=0.0, ge=0)  # d = 1 only

    @model_validator(mode="after")
    def _check_spec(self) -> "EnergySpec":
        if not 0 < self.s < self.d:
            raise ValueError(f"s={self.s} must lie in (0, {self.d})")
        if self.cell_width > 0 and self.d != 1:
            raise ValueError("cell_width applies to measures on the line")
        return self


class EnergyResult(BaseModel):
    method: Literal["direct", "fourier"]
    s: float
    value: float
    tail_fraction: Optional[float] = None
    slope: Optional[float] = None
    coincident_mass: float = 0.0
    warnings: List[str] = Field(default_factory=list)
