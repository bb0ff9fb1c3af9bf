import base64
import binascii
from hashlib import blake2b
from pathlib import Path
from typing import Annotated, Iterable, Union

from pydantic import (
    AfterValidator,
    BeforeValidator,
    PlainSerializer,
    WithJsonSchema,
)

DIGEST_SIZE = 32
FILE_CHUNK = 1 << 16


def decode_digest(v: Union[str, bytes]) -> bytes:
    """Raw digest bytes, or the urlsafe base64 text written into manifests."""
    if isinstance(v, bytes):
        return v
    if not isinstance(v, str):
        raise ValueError(f"expected base64 text or raw bytes, got {type(v).__name__}")
    try:
        return base64.urlsafe_b64decode(v.encode("ascii"))
    except (binascii.Error, UnicodeEncodeError) as e:
        raise ValueError(f"digest is not urlsafe base64: {e}") from e


def require_digest_size(v: bytes) -> bytes:
    if len(v) != DIGEST_SIZE:
        raise ValueError(f"a blake2b-256 digest has {DIGEST_SIZE} bytes, got {len(v)}")
    return v


def encode_digest(v: bytes) -> str:
    return base64.urlsafe_b64encode(v).decode("ascii")


Blake2bHash = Annotated[
    bytes,
    BeforeValidator(decode_digest),
    AfterValidator(require_digest_size),
    PlainSerializer(encode_digest),
    WithJsonSchema({"type": "string"}, mode="serialization"),
]


def blake2b_hash_from_chunks(chunks: Iterable[bytes]) -> Blake2bHash:
    hasher = blake2b(digest_size=DIGEST_SIZE)
    for chunk in chunks:
        hasher.update(chunk)
    return hasher.digest()


def blake2b_hash_from_bytes(data: bytes) -> Blake2bHash:
    return blake2b_hash_from_chunks([data])


def blake2b_hash_from_file(file_path: Path) -> Blake2bHash:
    """Digest of a volume or image file, read in chunks."""
    with open(file_path, "rb") as f:
        return blake2b_hash_from_chunks(iter(lambda: f.read(FILE_CHUNK), b""))
