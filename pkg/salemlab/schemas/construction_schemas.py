import math
from functools import lru_cache
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..core.config import settings
from .measure_schemas import AtomMeasure


@lru_cache(maxsize=32)
def zeta_lower_bound(d0: float, terms: Optional[int] = None) -> float:
    """Value zeta0 has to exceed: an upper bound for sum_{k in Z} 2 / (1 + d0^2 k^2).

    Partial sum over |k| <= K plus the tail bound 4 / (d0^2 K) for |k| > K.
    """
    terms = terms or settings.ZETA_PARTIAL_TERMS
    k = np.arange(1, terms + 1, dtype=float)
    partial = 2.0 + 2.0 * math.fsum(2.0 / (1.0 + (d0 * k) ** 2))
    return partial + 4.0 / (d0 * d0 * terms)


@lru_cache(maxsize=32)
def default_zeta0(d0: float = 1.0) -> float:
    """Smallest certified zeta0: one plus the bounded check-grid series."""
    return 1.0 + zeta_lower_bound(d0)


def level_ratios(alpha: float, branch: List[int], keep: List[int]) -> List[float]:
    """T_j / N_j^alpha for j = 0..J, computed in log space."""
    ratios = [1.0]
    log_t = log_n = 0.0
    for n, t in zip(branch, keep):
        log_t += math.log(t)
        log_n += math.log(n)
        ratios.append(math.exp(log_t - alpha * log_n))
    return ratios


class ConstructionParams(BaseModel):
    """Parameters of the randomized Cantor construction."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    alpha: float = Field(ge=0.0, le=1.0)
    n_star: int = Field(ge=2)
    branch: List[int]
    keep: List[int]
    depth: int = Field(ge=0)
    zeta0: float
    d0: float = Field(gt=0)
    k_max: int = Field(ge=1)
    seed: int = Field(ge=0, lt=2**64)
    retry_cap: int = Field(default=64, ge=0)
    ratio_lo: float = Field(gt=0)
    ratio_hi: float = Field(gt=0)

    @model_validator(mode="after")
    def _check_sequences(self) -> "ConstructionParams":
        if len(self.branch) != self.depth or len(self.keep) != self.depth:
            raise ValueError("branch and keep must both have length depth")
        if self.ratio_lo > self.ratio_hi:
            raise ValueError("ratio_lo must not exceed ratio_hi")
        for j, (n, t) in enumerate(zip(self.branch, self.keep), start=1):
            if not 2 <= n <= self.n_star:
                raise ValueError(f"n_{j}={n} outside [2, n_star={self.n_star}]")
            if not 1 <= t <= n:
                raise ValueError(f"t_{j}={t} outside [1, n_{j}={n}]")
        slack = 1e-12
        for j, ratio in enumerate(level_ratios(self.alpha, self.branch, self.keep)):
            if ratio < self.ratio_lo * (1 - slack) or ratio > self.ratio_hi * (1 + slack):
                raise ValueError(
                    f"T_{j}/N_{j}^alpha = {ratio:.6g} outside [{self.ratio_lo}, {self.ratio_hi}]"
                )
        bound = zeta_lower_bound(self.d0)
        if not self.zeta0 > bound:
            raise ValueError(f"zeta0={self.zeta0} must exceed {bound:.6f}")
        return self

    def n_scale(self, j: int) -> int:
        """N_j = n_1 ... n_j (N_0 = 1)."""
        return math.prod(self.branch[:j])

    def t_count(self, j: int) -> int:
        """T_j = t_1 ... t_j (T_0 = 1)."""
        return math.prod(self.keep[:j])


class LevelDigits(BaseModel):
    """Digit sets B_{j+1,a} for every anchor a of A_j, in A_j order."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=2)
    t: int = Field(ge=1)
    digit_sets: List[List[int]]

    @model_validator(mode="after")
    def _check_digits(self) -> "LevelDigits":
        for digits in self.digit_sets:
            if len(digits) != self.t:
                raise ValueError(f"digit set {digits} does not have {self.t} elements")
            if any(b < 0 or b >= self.n for b in digits):
                raise ValueError(f"digit set {digits} leaves [0, {self.n})")
            if any(x >= y for x, y in zip(digits, digits[1:])):
                raise ValueError(f"digit set {digits} must be strictly increasing")
        return self


class LevelCertificate(BaseModel):
    """Largest deviation/bound ratios seen while accepting one level."""

    model_config = ConfigDict(frozen=True)

    level: int
    attempts: int = 1
    max_slack_X: float = 0.0
    max_slack_Y: Optional[float] = None
    implied_c0: Optional[float] = None
    frequencies_checked: int = 0


class CantorMeasure(BaseModel):
    """Construction record of the random Cantor measure; mu is its weak limit."""

    model_config = ConfigDict(frozen=True)

    params: ConstructionParams
    levels: List[LevelDigits]
    certificates: List[LevelCertificate]
    nu: Optional[AtomMeasure] = None

    @model_validator(mode="after")
    def _check_levels(self) -> "CantorMeasure":
        if len(self.levels) != self.params.depth:
            raise ValueError("one digit level is required per construction level")
        count = 1
        for j, level in enumerate(self.levels):
            if level.n != self.params.branch[j] or level.t != self.params.keep[j]:
                raise ValueError(f"level {j + 1} digits disagree with params")
            if len(level.digit_sets) != count:
                raise ValueError(f"level {j + 1} needs {count} digit sets")
            count *= level.t
        for cert in self.certificates:
            if cert.max_slack_X > 1.0 or (cert.max_slack_Y or 0.0) > 1.0:
                raise ValueError(f"certificate for level {cert.level} exceeds its bound")
        return self
