from pathlib import Path
from typing import Any, Dict, List, Optional

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    NonNegativeInt,
    PositiveFloat,
    PositiveInt,
    model_validator,
)

from qsm_multipliers.models.constants import (
    CHI_WINDOW,
    DEFAULT_CONE_HALFWIDTH,
    DEFAULT_MASK_DILATION,
    PSI_WINDOW,
)
from qsm_multipliers.models.grid import GridSpec
from qsm_multipliers.models.hashes import Blake2bHash
from qsm_multipliers.models.phantom import Ellipsoid, PerturbationSpec
from qsm_multipliers.models.recon import ReconConfig
from qsm_multipliers.models.slices import FIXED_AXIS, DisplayWindow, ImageFormat, Plane
from qsm_multipliers.models.timestamp import RFC3339Time


class PhantomSection(BaseModel):
    """Inline ellipsoids win over ``path``; with neither the packaged set is used."""

    model_config = ConfigDict(frozen=True)

    path: Optional[Path] = None
    ellipsoids: Optional[List[Ellipsoid]] = None
    supersample: PositiveInt = 1

    @model_validator(mode="after")
    def _non_empty(self):
        if self.ellipsoids is not None and not self.ellipsoids:
            raise ValueError("inline phantom has no ellipsoids")
        return self


class MetricOptions(BaseModel):
    model_config = ConfigDict(frozen=True)

    dilation: NonNegativeInt = DEFAULT_MASK_DILATION
    cone_halfwidth: PositiveFloat = Field(default=DEFAULT_CONE_HALFWIDTH, ge=1.0)


class SliceOptions(BaseModel):
    model_config = ConfigDict(frozen=True)

    plane: Plane = Plane.sagittal
    coordinate: Optional[NonNegativeInt] = None
    format: ImageFormat = ImageFormat.pgm
    chi_window: DisplayWindow = CHI_WINDOW
    psi_window: DisplayWindow = PSI_WINDOW


def _default_recon() -> List[ReconConfig]:
    return [ReconConfig(method="tkd-smooth")]


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    seed: int = 0
    output_dir: Optional[Path] = None
    grid: GridSpec = Field(default_factory=lambda: GridSpec.cubic(64))
    phantom: PhantomSection = Field(default_factory=PhantomSection)
    perturbation: PerturbationSpec = Field(default_factory=PerturbationSpec)
    recon: List[ReconConfig] = Field(default_factory=_default_recon)
    metrics: MetricOptions = Field(default_factory=MetricOptions)
    slices: SliceOptions = Field(default_factory=SliceOptions)

    @model_validator(mode="after")
    def _check(self):
        if not self.recon:
            raise ValueError("at least one [[recon]] entry is required")
        labels = [r.name for r in self.recon]
        duplicates = sorted({label for label in labels if labels.count(label) > 1})
        if duplicates:
            raise ValueError(f"duplicate reconstruction labels {duplicates}, set 'label' to tell them apart")
        for spike in self.perturbation.spikes:
            if any(k >= n for k, n in zip(spike.index, self.grid.shape)):
                raise ValueError(f"spike index {spike.index} out of range for grid {self.grid.shape}")
        coordinate = self.slices.coordinate
        n = self.grid.shape[FIXED_AXIS[self.slices.plane]]
        if coordinate is not None and coordinate >= n:
            raise ValueError(
                f"slice coordinate {coordinate} out of range [0, {n}) for the {self.slices.plane.value} plane"
            )
        return self

    def effective_perturbation(self) -> PerturbationSpec:
        """The perturbation seed falls back to the experiment seed."""
        if "seed" in self.perturbation.model_fields_set:
            return self.perturbation
        return self.perturbation.model_copy(update={"seed": self.seed})


class ManifestEntry(BaseModel):
    key: str
    size: int
    digest: Blake2bHash


class RunManifest(BaseModel):
    created_at: RFC3339Time
    config: Dict[str, Any]
    artifacts: List[ManifestEntry] = Field(default_factory=list)
