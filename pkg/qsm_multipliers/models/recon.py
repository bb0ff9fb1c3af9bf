from enum import Enum
from typing import Dict, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, NonNegativeFloat, PositiveFloat, model_validator

from qsm_multipliers.models.constants import (
    CONSISTENCY_TOLERANCE,
    DEFAULT_NAIVE_FLOOR,
    LOWPASS_PLATEAU_FRACTION,
)
from qsm_multipliers.models.grid import GridSpec
from qsm_multipliers.models.symbols import (
    CutoffProfile,
    HalfLineProfile,
    RegularizerMode,
    SymbolParams,
)
from qsm_multipliers.models.volume import RealVolume


class ReconMethod(str, Enum):
    naive = "naive"
    tkd_classic = "tkd-classic"
    tkd_smooth = "tkd-smooth"
    r_reg = "r-reg"
    t_enhanced = "t-enhanced"
    chi1_only = "chi1-only"
    p_enhanced = "p-enhanced"
    t_sharp = "t-sharp"


T_METHODS = (ReconMethod.t_enhanced, ReconMethod.t_sharp)


class ReconConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    method: ReconMethod
    label: Optional[str] = None
    params: SymbolParams = Field(default_factory=SymbolParams)
    cutoff: CutoffProfile = Field(default_factory=CutoffProfile)
    halfline: HalfLineProfile = Field(default_factory=HalfLineProfile)
    naive_floor: PositiveFloat = DEFAULT_NAIVE_FLOOR
    regularizer: RegularizerMode = RegularizerMode.plain
    # Scale of the cone guard on R; defaults to eps_c.
    eps_guard: Optional[PositiveFloat] = None
    # Threshold of the diagnostic q_inverse; defaults to hbar * inner / 2.
    guard: Optional[NonNegativeFloat] = None
    tolerance: PositiveFloat = CONSISTENCY_TOLERANCE

    @model_validator(mode="after")
    def _check_method_params(self):
        p = self.params
        if self.method in T_METHODS and p.m % 2 != 0:
            raise ValueError(f"m must be even for {self.method.value} so the output stays real, got {p.m}")
        if self.method == ReconMethod.t_sharp and p.m < 2:
            raise ValueError("t-sharp needs m >= 2")
        if self.method == ReconMethod.r_reg and p.s < 2:
            raise ValueError(f"r-reg needs s >= 2, got {p.s}")
        if p.bigM <= self.cutoff.inner:
            raise ValueError(f"bigM ({p.bigM}) must exceed the cutoff plateau ({self.cutoff.inner})")
        return self

    @property
    def name(self) -> str:
        return self.label or self.method.value

    @property
    def effective_guard(self) -> float:
        if self.guard is not None:
            return self.guard
        return 0.5 * self.params.hbar * self.cutoff.inner

    def resolved_for(self, grid: GridSpec) -> "ReconConfig":
        """Fill grid-dependent defaults (eps_c, eps_guard, ramp)."""
        params = self.params
        if params.eps_c is None:
            eps_c = LOWPASS_PLATEAU_FRACTION * grid.max_frequency / self.cutoff.inner
            params = params.model_copy(update={"eps_c": eps_c})
        halfline = self.halfline
        if halfline.ramp is None:
            halfline = HalfLineProfile(ramp=2 * np.pi / (grid.n3 * grid.delta3))
        eps_guard = self.eps_guard if self.eps_guard is not None else params.eps_c
        return self.model_copy(
            update={"params": params, "halfline": halfline, "eps_guard": eps_guard}
        )

    def echo(self) -> Dict[str, float | str]:
        """Flat parameter echo for metric tables."""
        p = self.params
        return {
            "method": self.method.value,
            "hbar": p.hbar,
            "s": p.s,
            "m": p.m,
            "bigM": p.bigM,
            "eps_c": p.eps_c if p.eps_c is not None else float("nan"),
            "K": p.K,
        }


class ReconDiagnostics(BaseModel):
    imag_residues: Dict[str, float] = Field(default_factory=dict)
    consistency: Dict[str, float] = Field(default_factory=dict)
    guard_hits: int = 0


class ReconResult(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    config: ReconConfig
    chi: RealVolume
    chi1: Optional[RealVolume] = None
    chi2: Optional[RealVolume] = None
    chi21: Optional[RealVolume] = None
    chi22: Optional[RealVolume] = None
    diagnostics: ReconDiagnostics = Field(default_factory=ReconDiagnostics)

    def parts(self) -> Dict[str, RealVolume]:
        named = {
            "chi": self.chi,
            "chi1": self.chi1,
            "chi2": self.chi2,
            "chi21": self.chi21,
            "chi22": self.chi22,
        }
        return {k: v for k, v in named.items() if v is not None}
