from datetime import datetime, timezone
from typing import Annotated, Union

from pydantic import BeforeValidator, PlainSerializer

RFC3339_FORMAT = "%Y-%m-%dT%H:%M:%SZ"


def to_rfc3339_time(value: Union[str, datetime]) -> datetime:
    """UTC datetime from a datetime or an RFC3339 string; naive values are taken as UTC."""
    if isinstance(value, str):
        try:
            value = datetime.strptime(value, RFC3339_FORMAT)
        except ValueError:
            # offsets such as +02:00 written by other tools
            value = datetime.fromisoformat(value)
    if not isinstance(value, datetime):
        raise ValueError(f"cannot read an RFC3339 time from {type(value).__name__}")
    if value.tzinfo is None:
        return value.replace(tzinfo=timezone.utc)
    return value.astimezone(timezone.utc)


RFC3339Time = Annotated[
    datetime,
    BeforeValidator(to_rfc3339_time),
    PlainSerializer(lambda t: t.strftime(RFC3339_FORMAT)),
]


def rfc_time_from_string(value: str) -> RFC3339Time:
    return to_rfc3339_time(value)


def rfc_time_now() -> RFC3339Time:
    """Manifest creation time, whole seconds in UTC."""
    return datetime.now(tz=timezone.utc).replace(microsecond=0)
