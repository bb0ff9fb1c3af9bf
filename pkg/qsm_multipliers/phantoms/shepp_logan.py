import logging
import tomllib
from importlib import resources
from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import ValidationError

from qsm_multipliers.models.constants import QSM_PHANTOM_FILE
from qsm_multipliers.models.errors import ConfigError
from qsm_multipliers.models.phantom import PhantomSpec

default_logger = logging.getLogger(__name__)

DEFAULT_PHANTOM_RESOURCE = "shepp_logan_3d.toml"


def phantom_spec_from_dict(raw: Dict[str, Any], source: str = "<dict>") -> PhantomSpec:
    try:
        return PhantomSpec.model_validate(raw)
    except ValidationError as e:
        raise ConfigError(f"invalid phantom spec in {source}: {e}") from e


def load_phantom_spec(path: Optional[Path] = None) -> PhantomSpec:
    """Load a phantom parameter file; the packaged Shepp-Logan set when no path is given."""
    path = path or QSM_PHANTOM_FILE
    if path is None:
        resource = resources.files("qsm_multipliers.phantoms") / "data" / DEFAULT_PHANTOM_RESOURCE
        raw = tomllib.loads(resource.read_text(encoding="utf-8"))
        return phantom_spec_from_dict(raw, source=DEFAULT_PHANTOM_RESOURCE)

    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"phantom file not found: {path}")
    try:
        raw = tomllib.loads(path.read_text(encoding="utf-8"))
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f"could not parse phantom file {path}: {e}") from e
    spec = phantom_spec_from_dict(raw, source=str(path))
    default_logger.info(f"loaded phantom '{spec.name}' v{spec.version} with {len(spec.ellipsoids)} ellipsoids from {path}")
    return spec


def default_phantom_spec() -> PhantomSpec:
    return load_phantom_spec(None)
