import tomllib
from pathlib import Path
from typing import Type, TypeVar

from pydantic import BaseModel, ValidationError

from qsm_multipliers.models.errors import ConfigError

ModelT = TypeVar("ModelT", bound=BaseModel)


def describe_validation_error(e: ValidationError) -> str:
    """One 'dotted.path: message' item per pydantic error."""
    return "; ".join(
        f"{'.'.join(str(part) for part in err['loc']) or '<root>'}: {err['msg']}"
        for err in e.errors()
    )


def load_toml_model(path: Path, model: Type[ModelT]) -> ModelT:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    try:
        raw = tomllib.loads(path.read_text(encoding="utf-8"))
    except tomllib.TOMLDecodeError as e:
        # the decoder message carries line and column
        raise ConfigError(f"could not parse {path}: {e}") from e
    try:
        return model.model_validate(raw)
    except ValidationError as e:
        raise ConfigError(f"invalid config {path}: {describe_validation_error(e)}") from e
