import asyncio
from pathlib import Path

import numpy as np
import pytest

from qsm_multipliers.io import ArtifactStore
from qsm_multipliers.models import GridSpec, RealVolume
from qsm_multipliers.models.errors import VolumeIOError
from qsm_multipliers.models.hashes import blake2b_hash_from_bytes

GRID = GridSpec.cubic(4)


def test_save_and_read(tmp_path: Path):
    store = ArtifactStore(tmp_path)
    v = RealVolume(grid=GRID, data=np.arange(64, dtype=float).reshape(GRID.shape))
    store.save_volume("volumes/v.qsmv", v)
    store.save_string("notes/a.txt", "hello")
    assert store.keys() == ["notes/a.txt", "volumes/v.qsmv"]
    assert np.array_equal(store.read_volume("volumes/v.qsmv").data, v.data)
    assert store.exists("notes/a.txt")
    assert not store.exists("notes/b.txt")
    assert store.size("notes/a.txt") == 5
    assert store.digest("notes/a.txt") == blake2b_hash_from_bytes(b"hello")


def test_key_cannot_escape_root(tmp_path: Path):
    store = ArtifactStore(tmp_path / "out")
    with pytest.raises(VolumeIOError):
        store.save_string("../escape.txt", "x")


def test_missing_artifact(tmp_path: Path):
    with pytest.raises(VolumeIOError):
        ArtifactStore(tmp_path).read_volume("absent.qsmv")


def test_empty_store(tmp_path: Path):
    assert ArtifactStore(tmp_path / "never-created").keys() == []


def test_save_many(tmp_path: Path):
    store = ArtifactStore(tmp_path)
    items = [
        ("a.bin", b"\x00\x01"),
        ("b.txt", "text"),
        ("c.qsmv", RealVolume.zeros(GRID)),
    ]
    paths = asyncio.run(store.save_many(items))
    assert [p.name for p in paths] == ["a.bin", "b.txt", "c.qsmv"]
    assert store.keys() == ["a.bin", "b.txt", "c.qsmv"]
