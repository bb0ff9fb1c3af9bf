from typing import Annotated, Any

import numpy as np
from pydantic import BeforeValidator, PlainSerializer


def _read_only(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def as_real_array(v: Any) -> np.ndarray:
    if np.iscomplexobj(v):
        raise ValueError("expected real-valued data, got complex")
    return _read_only(np.array(v, dtype=np.float64, copy=True))


def as_complex_array(v: Any) -> np.ndarray:
    return _read_only(np.array(v, dtype=np.complex128, copy=True))


def as_read_only(v: Any) -> np.ndarray:
    return _read_only(np.array(v, copy=True))


def as_mask_array(v: Any) -> np.ndarray:
    return _read_only(np.array(v, dtype=bool, copy=True))


_list_serializer = PlainSerializer(lambda a: a.tolist(), when_used="json")

RealArray = Annotated[np.ndarray, BeforeValidator(as_real_array), _list_serializer]
ComplexArray = Annotated[np.ndarray, BeforeValidator(as_complex_array)]
ReadOnlyArray = Annotated[np.ndarray, BeforeValidator(as_read_only), _list_serializer]
MaskArray = Annotated[np.ndarray, BeforeValidator(as_mask_array), _list_serializer]
