import math
from typing import List, Literal, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator

Position = Union[float, Tuple[float, float]]


class GridMeasure(BaseModel):
    """Level-j step measure: T_j intervals [1 + m/N_j, 1 + (m+1)/N_j] of mass 1/T_j each."""

    model_config = ConfigDict(frozen=True)

    level: int = Field(ge=0)
    scale_den: int = Field(ge=1)
    count: int = Field(ge=1)
    offsets: List[int]

    _offsets: Optional[np.ndarray] = PrivateAttr(default=None)

    @model_validator(mode="after")
    def _check_offsets(self) -> "GridMeasure":
        if len(self.offsets) != self.count:
            raise ValueError(f"expected {self.count} offsets, got {len(self.offsets)}")
        arr = np.asarray(self.offsets, dtype=np.int64)
        if arr.size and (arr[0] < 0 or arr[-1] >= self.scale_den):
            raise ValueError("offsets must lie in [0, scale_den)")
        if np.any(np.diff(arr) <= 0):
            raise ValueError("offsets must be strictly increasing")
        return self

    @property
    def offsets_array(self) -> np.ndarray:
        if self._offsets is None:
            self._offsets = np.asarray(self.offsets, dtype=np.int64)
        return self._offsets

    @property
    def left_endpoints(self) -> np.ndarray:
        return 1.0 + self.offsets_array / self.scale_den

    @property
    def width(self) -> float:
        return 1.0 / self.scale_den


class AtomMeasure(BaseModel):
    """Finite weighted atom list on the line (dim=1) or in the plane (dim=2)."""

    model_config = ConfigDict(frozen=True)

    atoms: List[Tuple[Position, float]] = Field(default_factory=list)
    dim: Literal[1, 2] = 1

    _positions: Optional[np.ndarray] = PrivateAttr(default=None)
    _weights: Optional[np.ndarray] = PrivateAttr(default=None)

    @model_validator(mode="after")
    def _check_atoms(self) -> "AtomMeasure":
        for position, weight in self.atoms:
            if not (weight > 0 and math.isfinite(weight)):
                raise ValueError(f"atom weights must be positive and finite, got {weight}")
            coords = position if isinstance(position, tuple) else (position,)
            if len(coords) != self.dim:
                raise ValueError(f"atom position {position} does not match dim={self.dim}")
            if not all(math.isfinite(c) for c in coords):
                raise ValueError(f"atom position {position} is not finite")
        return self

    @classmethod
    def from_arrays(
        cls, positions: np.ndarray, weights: np.ndarray, dim: Optional[int] = None
    ) -> "AtomMeasure":
        """Build from numpy arrays: positions of shape (n,) or (n, 2), weights of shape (n,)."""
        positions = np.asarray(positions, dtype=float)
        weights = np.asarray(weights, dtype=float)
        if dim is None:
            dim = 1 if positions.ndim == 1 else positions.shape[1]
        if positions.shape[0] != weights.shape[0]:
            raise ValueError("positions and weights must have the same length")
        if np.any(~(weights > 0)) or not np.all(np.isfinite(weights)):
            raise ValueError("atom weights must be positive and finite")
        if not np.all(np.isfinite(positions)):
            raise ValueError("atom positions must be finite")
        if dim == 1:
            positions = positions.reshape(-1)
            atoms = list(zip(positions.tolist(), weights.tolist()))
        else:
            positions = positions.reshape(-1, 2)
            atoms = [(tuple(p), w) for p, w in zip(positions.tolist(), weights.tolist())]
        measure = cls.model_construct(atoms=atoms, dim=dim)
        measure._positions = positions
        measure._weights = weights
        return measure

    @classmethod
    def uniform(cls, points: Sequence, dim: Optional[int] = None) -> "AtomMeasure":
        """Probability measure with equal weight on each point."""
        points = np.asarray(points, dtype=float)
        n = points.shape[0]
        return cls.from_arrays(points, np.full(n, 1.0 / n), dim)

    @property
    def positions(self) -> np.ndarray:
        if self._positions is None:
            if self.dim == 1:
                self._positions = np.array([p for p, _ in self.atoms], dtype=float)
            else:
                self._positions = np.array(
                    [list(p) for p, _ in self.atoms], dtype=float
                ).reshape(-1, 2)
        return self._positions

    @property
    def weights(self) -> np.ndarray:
        if self._weights is None:
            self._weights = np.array([w for _, w in self.atoms], dtype=float)
        return self._weights

    @property
    def size(self) -> int:
        return len(self.atoms)

    def diameter(self) -> float:
        if not self.atoms:
            return 0.0
        pts = self.positions
        if self.dim == 1:
            return float(pts.max() - pts.min())
        best = 0.0
        for start in range(0, pts.shape[0], 1024):
            block = pts[start : start + 1024]
            dist = np.sqrt(((block[:, None, :] - pts[None, :, :]) ** 2).sum(axis=-1))
            best = max(best, float(dist.max()))
        return best


class MeasureDiam(BaseModel):
    """Diameters of supp(mu) and supp(mu . nu) and the check-grid spacing d0."""

    model_config = ConfigDict(frozen=True)

    diam_mu: float = Field(gt=0)
    diam_prod: float = Field(gt=0)
    d0: float = Field(gt=0)

    @model_validator(mode="after")
    def _check_d0(self) -> "MeasureDiam":
        if self.d0 != 1.0 / max(self.diam_mu, self.diam_prod):
            raise ValueError("d0 must equal 1 / max(diam_mu, diam_prod)")
        return self

    @classmethod
    def from_diameters(cls, diam_mu: float, diam_prod: float) -> "MeasureDiam":
        return cls(diam_mu=diam_mu, diam_prod=diam_prod, d0=1.0 / max(diam_mu, diam_prod))
