from enum import Enum
from typing import List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .energy_schemas import EnergyResult
from .measure_schemas import Position


class SetKind(str, Enum):
    """Kinds of compact set accepted as R, Y or Z."""

    INTERVAL = "interval"
    ATOMS = "atoms"
    CANTOR = "cantor"
    CANTOR_REF = "cantor_ref"
    CIRCLE = "circle"


class SetDescription(BaseModel):
    """Finite description of a compact set together with its natural measure.

    interval: uniform measure on [lo, hi]. atoms: listed points (optional weights), or
``count`` evenly spaced points from lo to hi when no points are listed.
    cantor: self-similar set with base ``n`` and digit set ``digits`` scaled into
    [lo, hi], truncated at ``depth``. cantor_ref: a randomized construction, either
    loaded from ``path`` or built from ``alpha``/``n_star``/``depth``/``seed``.
    circle: the circle of radius ``radius`` in the plane with arclength measure.
    A line set is placed in the plane along ``direction`` when d = 2.
    """

    model_config = ConfigDict(extra="forbid")

    kind: SetKind
    lo: float = 0.0
    hi: float = 1.0
    points: List[Position] = Field(default_factory=list)
    weights: Optional[List[float]] = None
    count: Optional[int] = Field(default=None, ge=1)
    n: int = Field(default=3, ge=2)
    digits: List[int] = Field(default_factory=lambda: [0, 2])
    depth: int = Field(default=8, ge=0)
    path: Optional[str] = None
    level: Optional[int] = None
    alpha: Optional[float] = None
    n_star: int = Field(default=4, ge=2)
    seed: int = 0
    radius: float = Field(default=1.0, gt=0)
    direction: Optional[Tuple[float, float]] = None

    @model_validator(mode="after")
    def _check_kind(self) -> "SetDescription":
        if self.kind in (SetKind.INTERVAL, SetKind.CANTOR) and not self.lo < self.hi:
            raise ValueError(f"{self.kind.value} needs lo < hi")
        if self.count is not None:
            if self.kind != SetKind.ATOMS or (self.points and len(self.points) != self.count):
                raise ValueError("count builds an atom net in place of a point list")
            if self.count > 1 and not self.lo < self.hi:
                raise ValueError("an atom net needs lo < hi")
            if not self.points:
                self.points = np.linspace(self.lo, self.hi, self.count).tolist()
        if self.kind == SetKind.ATOMS:
            if not self.points:
                raise ValueError("atoms needs at least one point")
            if self.weights is not None and len(self.weights) != len(self.points):
                raise ValueError("weights must match points")
        if self.kind == SetKind.CANTOR:
            if not self.digits or any(not 0 <= b < self.n for b in self.digits):
                raise ValueError(f"digits must be a non-empty subset of [0, {self.n})")
        if self.kind == SetKind.CANTOR_REF and self.path is None and self.alpha is None:
            raise ValueError("cantor_ref needs a measure path or alpha")
        if self.direction is not None and self.direction == (0.0, 0.0):
            raise ValueError("direction must be non-zero")
        return self

    @property
    def is_planar(self) -> bool:
        if self.kind == SetKind.CIRCLE:
            return True
        if self.kind == SetKind.ATOMS and self.points:
            return isinstance(self.points[0], tuple)
        return False


class SumsetSpec(BaseModel):
    """Inputs of RY + Z at cover resolution delta."""

    model_config = ConfigDict(extra="forbid")

    R: SetDescription
    Y: SetDescription
    Z: SetDescription
    delta: float = Field(gt=0)
    d: Literal[1, 2] = 1

    @model_validator(mode="after")
    def _check_dims(self) -> "SumsetSpec":
        if self.R.is_planar:
            raise ValueError("R holds dilation factors and must lie on the line")
        if self.d == 1 and (self.Y.is_planar or self.Z.is_planar):
            raise ValueError("planar Y or Z requires d = 2")
        return self


class L2Report(BaseModel):
    cutoffs: List[float]
    values: List[float]
    increments: List[float]
    ratios: List[float]
    converged: bool
    verdict: Literal["L2", "not L2"]


class CoverReport(BaseModel):
    deltas: List[float]
    measures: List[float]
    slope: float  # of log(cover) against log(delta)
    stabilized: bool
    floor: float


class OrderingReport(BaseModel):
    """One ordering of the sumset theorem: mu on one factor, nu on the other."""

    ordering: Literal["RY+Z", "Z+RY"]
    fourier_dim: float
    hausdorff_dim: float
    predicted: float
    l2: Optional[L2Report] = None
    energy: Optional[EnergyResult] = None
    nonconvergent: bool = False
    positive: bool = False


class PipelineReport(BaseModel):
    mode: Literal["lebesgue", "hausdorff"]
    s: Optional[float] = None
    orderings: List[OrderingReport]
    joint_l2: Optional[L2Report] = None
    cover: Optional[CoverReport] = None
    verdict: str
    predicted_dim: float
