from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, NonNegativeInt, PositiveFloat, model_validator

from qsm_multipliers.models.constants import (
    DEFAULT_BIG_M,
    DEFAULT_HBAR,
    DEFAULT_K,
    DEFAULT_M,
    DEFAULT_S,
)


class CutoffKind(str, Enum):
    smooth_exp = "smooth-exp"
    smoothstep = "smoothstep"


class CutoffProfile(BaseModel):
    """Radial cutoff f: 1 on [0, inner], 0 on [outer, inf), monotone between."""

    model_config = ConfigDict(frozen=True)

    kind: CutoffKind = CutoffKind.smooth_exp
    inner: PositiveFloat = 1.0
    outer: PositiveFloat = 2.0

    @model_validator(mode="after")
    def _check_order(self):
        if not self.inner < self.outer:
            raise ValueError(f"inner ({self.inner}) must be below outer ({self.outer})")
        return self

    def with_outer(self, outer: float) -> "CutoffProfile":
        return CutoffProfile(kind=self.kind, inner=self.inner, outer=outer)


class HalfLineProfile(BaseModel):
    """Half-line cutoff h: 0 for t <= 0, 1 for t >= ramp.

    ``ramp`` left unset means one frequency-grid cell along x3.
    """

    model_config = ConfigDict(frozen=True)

    ramp: Optional[PositiveFloat] = None


class RegularizerMode(str, Enum):
    plain = "plain"
    cone_guarded = "cone-guarded"


class SymbolParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    hbar: PositiveFloat = DEFAULT_HBAR
    s: PositiveFloat = DEFAULT_S
    m: NonNegativeInt = DEFAULT_M
    bigM: PositiveFloat = DEFAULT_BIG_M
    # None means derived from the grid, see ReconConfig.resolved_for.
    eps_c: Optional[PositiveFloat] = None
    K: PositiveFloat = Field(default=DEFAULT_K)
