from typing import List, Optional, Tuple

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    NonNegativeFloat,
    NonNegativeInt,
    field_validator,
    model_validator,
)

Vector3 = Tuple[float, float, float]


class Ellipsoid(BaseModel):
    """One additive ellipsoid in grid-normalized coordinates [-1, 1]^3.

    ``rotation`` holds intrinsic zxz Euler angles in radians.
    """

    model_config = ConfigDict(frozen=True)

    center: Vector3
    semi_axes: Vector3
    rotation: Vector3 = (0.0, 0.0, 0.0)
    amplitude: float

    @field_validator("semi_axes")
    @classmethod
    def _positive_axes(cls, axes):
        if any(a <= 0 for a in axes):
            raise ValueError(f"semi-axes must be positive, got {axes}")
        return axes

    @model_validator(mode="after")
    def _reaches_cube(self):
        # bounding sphere test
        reach = max(self.semi_axes)
        if any(abs(c) - reach > 1.0 for c in self.center):
            raise ValueError(f"ellipsoid centered at {self.center} misses [-1, 1]^3")
        return self


class PhantomSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str = "custom"
    version: str = "1"
    ellipsoids: List[Ellipsoid] = Field(default_factory=list)


class Spike(BaseModel):
    """Point singularity added to the field at one voxel.

    An unset amplitude is resolved by ``perturb`` relative to the clean field.
    """

    model_config = ConfigDict(frozen=True)

    index: Tuple[NonNegativeInt, NonNegativeInt, NonNegativeInt]
    amplitude: Optional[float] = None


class PerturbationSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    spikes: List[Spike] = Field(default_factory=list)
    noise_sigma: NonNegativeFloat = 0.0
    seed: int = 0

    @property
    def is_empty(self) -> bool:
        return not self.spikes and self.noise_sigma == 0.0
