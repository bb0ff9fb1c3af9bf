import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence, Tuple

from pydantic import ValidationError

from qsm_multipliers.analysis.consistency import SuiteConfig, consistency_suite
from qsm_multipliers.analysis.masks import support_mask_from_truth
from qsm_multipliers.analysis.metrics import volume_metrics
from qsm_multipliers.analysis.reporting import render_metrics_table, render_selftest_table
from qsm_multipliers.io.artifact_store import ArtifactStore
from qsm_multipliers.io.slices import render_slice
from qsm_multipliers.io.volume_file import read_volume, write_volume
from qsm_multipliers.models.constants import (
    CHI_WINDOW,
    DEFAULT_CONE_HALFWIDTH,
    DEFAULT_MASK_DILATION,
    QSM_LOG_LEVEL,
)
from qsm_multipliers.models.errors import ConfigError, QsmError
from qsm_multipliers.models.grid import GridSpec
from qsm_multipliers.models.phantom import PerturbationSpec, Spike
from qsm_multipliers.models.recon import ReconConfig, ReconMethod
from qsm_multipliers.models.slices import ImageFormat, Plane
from qsm_multipliers.phantoms.forward import forward_model, perturb
from qsm_multipliers.phantoms.rasterize import rasterize_phantom
from qsm_multipliers.phantoms.shepp_logan import load_phantom_spec
from qsm_multipliers.pipelines.experiment import run_experiment
from qsm_multipliers.pipelines.helper_utils import describe_validation_error
from qsm_multipliers.recon.recon_lookup import reconstruct
from qsm_multipliers.symbols.views import symbol_volume

default_logger = logging.getLogger(__name__)

SYMBOL_PANELS = ("cone", "b", "C")


def parse_index(text: str) -> Tuple[int, int, int]:
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected i,j,k but got '{text}'") from None
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected i,j,k but got '{text}'")
    return parts


def parse_spike(text: str) -> Spike:
    index_text, _, amplitude = text.partition(":")
    try:
        return Spike(index=parse_index(index_text), amplitude=float(amplitude) if amplitude else None)
    except (ValueError, ValidationError) as e:
        raise argparse.ArgumentTypeError(f"bad spike '{text}': {e}") from None


def _recon_config(args: argparse.Namespace) -> ReconConfig:
    params = {
        key: value
        for key, value in (
            ("hbar", args.hbar),
            ("s", args.s),
            ("m", args.m),
            ("bigM", args.bigM),
            ("eps_c", args.eps_c),
            ("K", args.K),
        )
        if value is not None
    }
    raw = {"method": args.method, "params": params, "regularizer": args.regularizer}
    if args.label:
        raw["label"] = args.label
    if args.floor is not None:
        raw["naive_floor"] = args.floor
    try:
        return ReconConfig.model_validate(raw)
    except ValidationError as e:
        raise ConfigError(describe_validation_error(e)) from e


def cmd_phantom(args: argparse.Namespace) -> int:
    grid = GridSpec.cubic(args.n, args.delta)
    spec = load_phantom_spec(args.phantom_file)
    write_volume(args.out, rasterize_phantom(spec, grid, args.supersample))
    return 0


def cmd_forward(args: argparse.Namespace) -> int:
    write_volume(args.out, forward_model(read_volume(args.input)))
    return 0


def cmd_perturb(args: argparse.Namespace) -> int:
    pert = PerturbationSpec(spikes=args.spike or [], noise_sigma=args.sigma, seed=args.seed)
    write_volume(args.out, perturb(read_volume(args.input), pert))
    return 0


def cmd_recon(args: argparse.Namespace) -> int:
    result = reconstruct(read_volume(args.input), _recon_config(args))
    store = ArtifactStore(args.out_dir)
    for part, volume in result.parts().items():
        store.save_volume(f"{part}.qsmv", volume)
    store.save_json("diagnostics.json", result.diagnostics)
    return 0


def cmd_metrics(args: argparse.Namespace) -> int:
    recon = read_volume(args.recon)
    truth = read_volume(args.truth)
    mask = support_mask_from_truth(truth, args.dilation)
    report = volume_metrics(args.recon.stem, recon, truth, mask, args.apex, args.halfwidth)
    print(render_metrics_table([report], truth.grid.describe()), end="")
    return 0


def cmd_slice(args: argparse.Namespace) -> int:
    image = render_slice(read_volume(args.input), Plane(args.plane), args.coord, tuple(args.window))
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_bytes(image.encode(ImageFormat(args.format)))
    return 0


def cmd_symbols(args: argparse.Namespace) -> int:
    grid = GridSpec.cubic(args.n)
    cfg = ReconConfig(method=ReconMethod.tkd_smooth, params={"hbar": args.hbar})
    store = ArtifactStore(args.out_dir)
    for name in SYMBOL_PANELS:
        volume = symbol_volume(grid, name, cfg)
        store.save_volume(f"{name}.qsmv", volume)
        image = render_slice(volume, Plane.sagittal, None, (0.0, 1.0))
        store.save_bytes(f"{name}.{args.format}", image.encode(ImageFormat(args.format)))
    return 0


def cmd_run(args: argparse.Namespace) -> int:
    root = run_experiment(args.config, args.out)
    print(root)
    return 0


def cmd_selftest(args: argparse.Namespace) -> int:
    cfg = SuiteConfig(n=args.n, checks=args.check, tolerance=args.tolerance)
    report = consistency_suite(cfg)
    print(render_selftest_table(report), end="")
    return 0 if report.passed else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qsm-multipliers",
        description="Dipole forward model and Fourier-multiplier QSM reconstructions",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("phantom", help="Rasterize a phantom to a volume file")
    p.add_argument("out", type=Path)
    p.add_argument("--n", type=int, default=64)
    p.add_argument("--delta", type=float, default=1.0)
    p.add_argument("--supersample", type=int, default=1)
    p.add_argument("--phantom-file", type=Path, default=None)
    p.set_defaults(func=cmd_phantom)

    p = sub.add_parser("forward", help="Apply the dipole forward model")
    p.add_argument("input", type=Path)
    p.add_argument("out", type=Path)
    p.set_defaults(func=cmd_forward)

    p = sub.add_parser("perturb", help="Add point singularities and noise to a field")
    p.add_argument("input", type=Path)
    p.add_argument("out", type=Path)
    p.add_argument("--spike", type=parse_spike, action="append", help="i,j,k[:amplitude]")
    p.add_argument("--sigma", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_perturb)

    p = sub.add_parser("recon", help="Reconstruct susceptibility from a field")
    p.add_argument("input", type=Path)
    p.add_argument("out_dir", type=Path)
    p.add_argument("--method", choices=[m.value for m in ReconMethod], default="tkd-smooth")
    p.add_argument("--label", default=None)
    p.add_argument("--hbar", type=float)
    p.add_argument("--s", type=float)
    p.add_argument("--m", type=int)
    p.add_argument("--bigM", type=float)
    p.add_argument("--eps-c", dest="eps_c", type=float)
    p.add_argument("--K", type=float)
    p.add_argument("--floor", type=float)
    p.add_argument("--regularizer", choices=["plain", "cone-guarded"], default="plain")
    p.set_defaults(func=cmd_recon)

    p = sub.add_parser("metrics", help="Compare a reconstruction with the truth")
    p.add_argument("recon", type=Path)
    p.add_argument("truth", type=Path)
    p.add_argument("--dilation", type=int, default=DEFAULT_MASK_DILATION)
    p.add_argument("--apex", type=parse_index, default=None)
    p.add_argument("--halfwidth", type=float, default=DEFAULT_CONE_HALFWIDTH)
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("slice", help="Render a windowed slice")
    p.add_argument("input", type=Path)
    p.add_argument("out", type=Path)
    p.add_argument("--plane", choices=[pl.value for pl in Plane], default="sagittal")
    p.add_argument("--coord", type=int, default=None)
    p.add_argument("--window", type=float, nargs=2, default=list(CHI_WINDOW), metavar=("LOW", "HIGH"))
    p.add_argument("--format", choices=[f.value for f in ImageFormat], default="pgm")
    p.set_defaults(func=cmd_slice)

    p = sub.add_parser("symbols", help="Write the cone, b and C symbol panels")
    p.add_argument("out_dir", type=Path)
    p.add_argument("--n", type=int, default=64)
    p.add_argument("--hbar", type=float, default=0.04)
    p.add_argument("--format", choices=[f.value for f in ImageFormat], default="pgm")
    p.set_defaults(func=cmd_symbols)

    p = sub.add_parser("run", help="Run a full experiment from a TOML config")
    p.add_argument("config", type=Path)
    p.add_argument("--out", type=Path, default=None)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("selftest", help="Run the consistency suite")
    p.add_argument("--n", type=int, default=32)
    p.add_argument("--tolerance", type=float, default=None)
    p.add_argument("--check", action="append", default=None)
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # usage errors are config errors, --help is a success
        return 0 if e.code in (0, None) else ConfigError.exit_code
    level = "DEBUG" if args.verbose else QSM_LOG_LEVEL
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")

    try:
        return args.func(args)
    except QsmError as e:
        default_logger.error(str(e))
        return e.exit_code
    except ValidationError as e:
        default_logger.error(describe_validation_error(e))
        return ConfigError.exit_code
    except OSError as e:
        default_logger.error(f"I/O error: {e}")
        return 3


if __name__ == "__main__":
    sys.exit(main())
