import asyncio
import logging
from pathlib import Path
from typing import Iterable, List, Tuple

from pydantic import BaseModel

from qsm_multipliers.io.volume_file import read_volume, write_volume
from qsm_multipliers.models.constants import QSM_OUTPUT_DIR
from qsm_multipliers.models.errors import VolumeIOError
from qsm_multipliers.models.hashes import Blake2bHash, blake2b_hash_from_file
from qsm_multipliers.models.volume import RealVolume

default_logger = logging.getLogger(__name__)


"""
Everything here is synchronous file IO. To write several artifacts at once use
save_many, or wrap single calls in

await asyncio.to_thread(<store method>)
"""


class ArtifactStore:
    """Run outputs addressed by relative keys such as ``volumes/psi.qsmv``."""

    def __init__(self, root: Path | None = None) -> None:
        self.root = Path(root) if root is not None else QSM_OUTPUT_DIR
        self.logger = default_logger

    def get_local_path_from_key(self, key: str) -> Path:
        path = (self.root / key).resolve()
        if not path.is_relative_to(self.root.resolve()):
            raise VolumeIOError(f"artifact key escapes the store: {key}")
        return path

    def _prepare(self, key: str) -> Path:
        path = self.get_local_path_from_key(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        return path

    def save_bytes(self, key: str, content: bytes) -> Path:
        path = self._prepare(key)
        try:
            path.write_bytes(content)
        except OSError as e:
            raise VolumeIOError(f"could not write artifact {key}: {e}") from e
        self.logger.debug(f"saved {len(content)} bytes to {key}")
        return path

    def save_string(self, key: str, content: str) -> Path:
        return self.save_bytes(key, content.encode("utf-8"))

    def save_json(self, key: str, model: BaseModel) -> Path:
        return self.save_string(key, model.model_dump_json(indent=2))

    def save_volume(self, key: str, v: RealVolume) -> Path:
        return write_volume(self._prepare(key), v)

    def read_volume(self, key: str) -> RealVolume:
        return read_volume(self.get_local_path_from_key(key))

    def exists(self, key: str) -> bool:
        return self.get_local_path_from_key(key).is_file()

    def keys(self) -> List[str]:
        if not self.root.is_dir():
            return []
        return sorted(
            p.relative_to(self.root).as_posix() for p in self.root.rglob("*") if p.is_file()
        )

    def digest(self, key: str) -> Blake2bHash:
        return blake2b_hash_from_file(self.get_local_path_from_key(key))

    def size(self, key: str) -> int:
        return self.get_local_path_from_key(key).stat().st_size

    async def save_many(self, items: Iterable[Tuple[str, RealVolume | bytes | str]]) -> List[Path]:
        """Write independent artifacts concurrently."""

        def save(key: str, item: RealVolume | bytes | str) -> Path:
            if isinstance(item, RealVolume):
                return self.save_volume(key, item)
            if isinstance(item, bytes):
                return self.save_bytes(key, item)
            return self.save_string(key, item)

        tasks = [asyncio.to_thread(save, key, item) for key, item in items]
        return list(await asyncio.gather(*tasks))
