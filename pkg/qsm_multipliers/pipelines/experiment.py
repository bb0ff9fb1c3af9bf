import asyncio
import logging
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, List, Optional, Sequence, Tuple

from qsm_multipliers.analysis.masks import support_mask_from_truth
from qsm_multipliers.analysis.metrics import compute_metrics
from qsm_multipliers.analysis.reporting import metrics_csv, render_metrics_table
from qsm_multipliers.io.artifact_store import ArtifactStore
from qsm_multipliers.io.slices import render_slice
from qsm_multipliers.models.analysis import MetricsReport
from qsm_multipliers.models.constants import QSM_OUTPUT_DIR
from qsm_multipliers.models.errors import QsmError, StageError, VolumeIOError
from qsm_multipliers.models.experiment import (
    ExperimentConfig,
    ManifestEntry,
    RunManifest,
)
from qsm_multipliers.models.phantom import PhantomSpec
from qsm_multipliers.models.recon import ReconResult
from qsm_multipliers.models.timestamp import rfc_time_now
from qsm_multipliers.models.volume import RealVolume
from qsm_multipliers.phantoms.forward import forward_model, perturb
from qsm_multipliers.phantoms.rasterize import rasterize_phantom
from qsm_multipliers.phantoms.shepp_logan import load_phantom_spec
from qsm_multipliers.pipelines.helper_utils import load_toml_model
from qsm_multipliers.recon.recon_lookup import reconstruct

default_logger = logging.getLogger(__name__)

MANIFEST_KEY = "manifest.json"
CONFIG_KEY = "config.json"


class LoadedExperiment:
    """A validated config with its phantom resolved, ready to run."""

    def __init__(self, config: ExperimentConfig, phantom: PhantomSpec, source: Optional[Path] = None) -> None:
        self.config = config
        self.phantom = phantom
        self.source = source


def resolve_phantom(config: ExperimentConfig, base_dir: Optional[Path] = None) -> PhantomSpec:
    section = config.phantom
    if section.ellipsoids is not None:
        return PhantomSpec(name="inline", ellipsoids=section.ellipsoids)
    if section.path is None:
        return load_phantom_spec(None)
    path = section.path
    if not path.is_absolute() and base_dir is not None:
        path = base_dir / path
    return load_phantom_spec(path)


def load_experiment_config(path: Path) -> LoadedExperiment:
    """Parse and validate a TOML experiment config, including its phantom file."""
    path = Path(path)
    config = load_toml_model(path, ExperimentConfig)
    phantom = resolve_phantom(config, base_dir=path.parent)
    default_logger.info(
        f"loaded experiment {path} on {config.grid.describe()} with {len(config.recon)} reconstructions"
    )
    return LoadedExperiment(config, phantom, source=path)


@contextmanager
def stage(name: str) -> Iterator[None]:
    default_logger.info(f"stage {name}: start")
    try:
        yield
    except StageError:
        raise
    except (QsmError, OSError, ValueError) as e:
        default_logger.error(f"stage {name} failed: {e}")
        raise StageError(name, e) from e
    default_logger.info(f"stage {name}: done")


def _reconstruct_all(psi: RealVolume, experiment: LoadedExperiment) -> List[ReconResult]:
    async def run_all() -> List[ReconResult]:
        tasks = [asyncio.to_thread(reconstruct, psi, cfg) for cfg in experiment.config.recon]
        return list(await asyncio.gather(*tasks))

    return asyncio.run(run_all())


def _apex(config: ExperimentConfig) -> Optional[Tuple[int, int, int]]:
    spikes = config.perturbation.spikes
    return tuple(spikes[0].index) if spikes else None


def _slice_bytes(v: RealVolume, window: Tuple[float, float], config: ExperimentConfig) -> bytes:
    options = config.slices
    image = render_slice(v, options.plane, options.coordinate, window)
    return image.encode(options.format)


def build_manifest(store: ArtifactStore, keys: Sequence[str], config: ExperimentConfig) -> RunManifest:
    """Sizes and digests of the artifacts written by this run."""
    missing = [key for key in keys if not store.exists(key)]
    if missing:
        raise VolumeIOError(f"artifacts missing from {store.root}: {', '.join(missing)}")
    entries = [
        ManifestEntry(key=key, size=store.size(key), digest=store.digest(key)) for key in sorted(keys)
    ]
    return RunManifest(
        created_at=rfc_time_now(),
        config=config.model_dump(mode="json"),
        artifacts=entries,
    )


def run_loaded_experiment(experiment: LoadedExperiment, output_dir: Optional[Path] = None) -> Path:
    config = experiment.config
    root = Path(output_dir or config.output_dir or QSM_OUTPUT_DIR)
    store = ArtifactStore(root)
    ext = config.slices.format.value

    with stage("phantom"):
        chi_truth = rasterize_phantom(experiment.phantom, config.grid, config.phantom.supersample)
    with stage("forward"):
        psi = forward_model(chi_truth)
    with stage("perturb"):
        psi_perturbed = perturb(psi, config.effective_perturbation())
    with stage("reconstruct"):
        results = _reconstruct_all(psi_perturbed, experiment)
    with stage("metrics"):
        mask = support_mask_from_truth(chi_truth, config.metrics.dilation)
        reports: List[MetricsReport] = [
            compute_metrics(r, chi_truth, mask, _apex(config), config.metrics.cone_halfwidth)
            for r in results
        ]

    with stage("write"):
        chi_window = config.slices.chi_window
        psi_window = config.slices.psi_window
        items: List[Tuple[str, RealVolume | bytes | str]] = [
            ("volumes/chi_truth.qsmv", chi_truth),
            ("volumes/psi.qsmv", psi),
            ("volumes/psi_perturbed.qsmv", psi_perturbed),
            (f"slices/chi_truth.{ext}", _slice_bytes(chi_truth, chi_window, config)),
            (f"slices/psi.{ext}", _slice_bytes(psi, psi_window, config)),
            (f"slices/psi_perturbed.{ext}", _slice_bytes(psi_perturbed, psi_window, config)),
        ]
        for result in results:
            label = result.config.name
            for part, volume in result.parts().items():
                items.append((f"recon/{label}/{part}.qsmv", volume))
                items.append((f"slices/{label}_{part}.{ext}", _slice_bytes(volume, chi_window, config)))
        items.append(("metrics.csv", metrics_csv(reports)))
        items.append(("metrics.txt", render_metrics_table(reports, config.grid.describe())))
        asyncio.run(store.save_many(items))
        store.save_json(CONFIG_KEY, config)
        saved = [key for key, _ in items] + [CONFIG_KEY]
        store.save_json(MANIFEST_KEY, build_manifest(store, saved, config))

    stale = set(store.keys()) - set(saved) - {MANIFEST_KEY}
    if stale:
        default_logger.warning(f"{len(stale)} files in {root} are left over from earlier runs")
    default_logger.info(f"experiment written to {root} ({len(saved)} artifacts)")
    return root


def run_experiment(config_path: Path, output_dir: Optional[Path] = None) -> Path:
    """Phantom, forward model, perturbation, reconstructions, views and metrics."""
    return run_loaded_experiment(load_experiment_config(config_path), output_dir)

