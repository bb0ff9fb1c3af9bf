import math
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, NonNegativeInt, model_validator

from qsm_multipliers.models.arrays import MaskArray
from qsm_multipliers.models.grid import GridSpec


class SupportMask(BaseModel):
    """Dilated phantom support; ``inside`` is True on the support."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    grid: GridSpec
    inside: MaskArray
    dilation: NonNegativeInt = 0

    @model_validator(mode="after")
    def _check_shape(self):
        if self.inside.shape != self.grid.shape:
            raise ValueError(f"mask shape {self.inside.shape} does not match grid {self.grid.shape}")
        return self

    @property
    def voxel_count(self) -> int:
        return int(self.inside.sum())


class MetricsReport(BaseModel):
    label: str
    method: str
    rmse_inside: float
    streak_energy: float
    streak_energy_chi2: Optional[float] = None
    cone_fraction: float = 0.0
    shell_fraction: float = 0.0
    mean_offset: float = 0.0
    # the DC term of chi is not recoverable from psi
    mean_unrecoverable: bool = True
    params: Dict[str, float | str] = Field(default_factory=dict)

    @model_validator(mode="after")
    def _check_values(self):
        for name in ("rmse_inside", "streak_energy", "cone_fraction", "shell_fraction"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0:
                raise ValueError(f"{name} must be finite and non-negative, got {value}")
        if not 0.0 <= self.cone_fraction <= 1.0:
            raise ValueError(f"cone_fraction outside [0, 1]: {self.cone_fraction}")
        return self

    @property
    def cone_ratio(self) -> float:
        if self.shell_fraction == 0.0:
            return 0.0
        return self.cone_fraction / self.shell_fraction


CSV_COLUMNS = [
    "label",
    "method",
    "rmse_inside",
    "streak_energy",
    "streak_energy_chi2",
    "cone_fraction",
    "shell_fraction",
    "mean_offset",
    "mean_unrecoverable",
]


class GKernelReport(BaseModel):
    grid_shape: Tuple[int, int, int]
    mollify_eps: float
    band: float
    band_limit: float
    supersample: int
    taper_radius: float
    tested_frequencies: int
    median_deviation: float
    threshold: float
    passed: bool


class ConsistencyCheck(BaseModel):
    name: str
    residual: float
    tolerance: float
    passed: bool
    detail: str = ""


class ConsistencyReport(BaseModel):
    grid_shape: Tuple[int, int, int]
    checks: List[ConsistencyCheck] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def offenders(self) -> List[str]:
        return [c.name for c in self.checks if not c.passed]
