from functools import cached_property
from typing import Annotated, Tuple

import numpy as np
from pydantic import AfterValidator, BaseModel, ConfigDict, Field, PositiveFloat

from qsm_multipliers.models.arrays import ReadOnlyArray


def _require_even(n: int) -> int:
    if n % 2 != 0:
        raise ValueError(f"grid sizes must be even, got {n}")
    return n


GridSize = Annotated[int, Field(ge=4), AfterValidator(_require_even)]


class GridSpec(BaseModel):
    """Sampling lattice: voxels per axis and voxel spacing."""

    model_config = ConfigDict(frozen=True)

    n1: GridSize
    n2: GridSize
    n3: GridSize
    delta1: PositiveFloat = 1.0
    delta2: PositiveFloat = 1.0
    delta3: PositiveFloat = 1.0

    @classmethod
    def cubic(cls, n: int, delta: float = 1.0) -> "GridSpec":
        return cls(n1=n, n2=n, n3=n, delta1=delta, delta2=delta, delta3=delta)

    @property
    def shape(self) -> Tuple[int, int, int]:
        return (self.n1, self.n2, self.n3)

    @property
    def spacing(self) -> Tuple[float, float, float]:
        return (self.delta1, self.delta2, self.delta3)

    @property
    def size(self) -> int:
        return self.n1 * self.n2 * self.n3

    @property
    def voxel_volume(self) -> float:
        return self.delta1 * self.delta2 * self.delta3

    @property
    def max_frequency(self) -> float:
        """Largest |xi| on the grid, reached at the all-Nyquist corner."""
        return float(np.pi * np.sqrt(sum(1.0 / d**2 for d in self.spacing)))

    def describe(self) -> str:
        return "x".join(str(n) for n in self.shape)


class FrequencyGrid(BaseModel):
    """Angular DFT frequencies of a grid as three broadcastable axis arrays.

    ``xi1`` has shape (n1, 1, 1), ``xi2`` (1, n2, 1) and ``xi3`` (1, 1, n3).
    The Nyquist index n/2 maps to -pi/delta.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    grid: GridSpec
    xi1: ReadOnlyArray
    xi2: ReadOnlyArray
    xi3: ReadOnlyArray

    @property
    def components(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        return (self.xi1, self.xi2, self.xi3)

    @cached_property
    def norm_squared(self) -> np.ndarray:
        return self.xi1**2 + self.xi2**2 + self.xi3**2
