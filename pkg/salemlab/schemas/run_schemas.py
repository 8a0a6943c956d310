from typing import Any, Dict, List, Literal, Optional, Tuple
from uuid import UUID, uuid4

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .energy_schemas import EnergySpec
from .sumset_schemas import SetDescription, SetKind


class RunConfig(BaseModel):
    """Fields shared by every command configuration; unknown keys are rejected."""

    model_config = ConfigDict(extra="forbid")

    seed: Optional[int] = Field(default=None, ge=0, lt=2**64)
    out_dir: Optional[str] = None
    name: Optional[str] = None  # stem of the output files


class ConstructConfig(RunConfig):
    alpha: float = Field(ge=0.0, le=1.0)
    n_star: int = Field(default=4, ge=2)
    depth: int = Field(ge=0)
    branch: Optional[List[int]] = None
    keep: Optional[List[int]] = None
    zeta0: Optional[float] = None
    k_max: Optional[int] = Field(default=None, ge=1)
    retry_cap: Optional[int] = Field(default=None, ge=0)
    nu: Optional[SetDescription] = None

    @model_validator(mode="after")
    def _check_nu(self) -> "ConstructConfig":
        if (self.branch is None) != (self.keep is None):
            raise ValueError("branch and keep must be given together")
        if self.nu is not None and self.nu.is_planar:
            raise ValueError("nu must be a measure on the line")
        return self


class FourierScanConfig(RunConfig):
    measure: str
    level: Optional[int] = Field(default=None, ge=0)
    k_max: int = Field(default=4096, ge=1)
    d0: float = Field(default=1.0, gt=0)
    window: Tuple[float, float] = (16.0, 4096.0)
    log_correct: bool = False
    product: Optional[SetDescription] = None


class DimConfig(RunConfig):
    measure: Optional[str] = None
    fixture: Optional[SetDescription] = None
    product: Optional[SetDescription] = None
    window: Tuple[float, float] = (16.0, 4096.0)
    log_correct: bool = True
    frostman_samples: Optional[int] = Field(default=None, ge=0)

    @model_validator(mode="after")
    def _check_source(self) -> "DimConfig":
        if (self.measure is None) == (self.fixture is None):
            raise ValueError("give exactly one of measure or fixture")
        if self.fixture is not None and self.fixture.kind not in (SetKind.CANTOR, SetKind.CANTOR_REF):
            raise ValueError("dimension fixtures must be cantor or cantor_ref sets")
        return self


class EnergyConfig(RunConfig):
    measure: SetDescription
    energy: EnergySpec
    method: Literal["direct", "fourier", "both"] = "both"


class SumsetConfig(RunConfig):
    R: SetDescription
    Y: SetDescription
    Z: SetDescription
    delta: float = Field(default=2.0**-10, gt=0)
    d: Literal[1, 2] = 1
    mode: Literal["lebesgue", "hausdorff"] = "lebesgue"
    s: Optional[float] = None
    cutoffs: Optional[List[float]] = None
    energy_cutoff: float = Field(default=1e4, gt=0)
    window: Tuple[float, float] = (16.0, 1024.0)
    deltas: Optional[List[float]] = None

    @model_validator(mode="after")
    def _check_mode(self) -> "SumsetConfig":
        if self.mode == "hausdorff" and self.s is None:
            raise ValueError("hausdorff mode needs s")
        return self


class VerifyConfig(RunConfig):
    measure: str


class ExportConfig(RunConfig):
    measure: str
    level: Optional[int] = Field(default=None, ge=0)
    cdf_points: int = Field(default=1001, ge=2)


class CommandTask(BaseModel):
    """One routed command invocation."""

    task_id: UUID = Field(default_factory=uuid4)
    command: str
    config: Dict[str, Any] = Field(default_factory=dict)


class CommandResult(BaseModel):
    task_id: UUID
    command: str
    outputs: Dict[str, str] = Field(default_factory=dict)
    summary: Dict[str, Any] = Field(default_factory=dict)
