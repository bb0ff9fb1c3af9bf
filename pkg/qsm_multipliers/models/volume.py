from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from qsm_multipliers.models.arrays import ComplexArray, RealArray
from qsm_multipliers.models.errors import NumericError
from qsm_multipliers.models.grid import GridSpec


def first_non_finite_index(data: np.ndarray) -> Tuple[int, ...]:
    return tuple(int(i) for i in np.argwhere(~np.isfinite(data))[0])


class _VolumeBase(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    grid: GridSpec

    @model_validator(mode="after")
    def _check_shape_and_values(self):
        if self.data.shape != self.grid.shape:
            raise ValueError(
                f"data shape {self.data.shape} does not match grid {self.grid.shape}"
            )
        if not np.all(np.isfinite(self.data)):
            index = first_non_finite_index(self.data)
            raise NumericError(f"non-finite value at voxel {index}")
        return self

    def norm(self) -> float:
        return float(np.linalg.norm(self.data.ravel()))


class RealVolume(_VolumeBase):
    """Scalar field sampled on a grid. Data is read-only once validated."""

    data: RealArray

    @classmethod
    def zeros(cls, grid: GridSpec) -> "RealVolume":
        return cls(grid=grid, data=np.zeros(grid.shape))

    def with_data(self, data: np.ndarray) -> "RealVolume":
        return RealVolume(grid=self.grid, data=data)

    def __add__(self, other: "RealVolume") -> "RealVolume":
        return self.with_data(self.data + other.data)


class SpectralVolume(_VolumeBase):
    data: ComplexArray

    def with_data(self, data: np.ndarray) -> "SpectralVolume":
        return SpectralVolume(grid=self.grid, data=data)
