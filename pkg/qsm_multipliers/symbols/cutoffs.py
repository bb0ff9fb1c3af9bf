import numpy as np
from numpy.typing import ArrayLike

from qsm_multipliers.models.errors import ArgumentError
from qsm_multipliers.models.symbols import CutoffKind, CutoffProfile, HalfLineProfile


def _s(x: np.ndarray) -> np.ndarray:
    """exp(-1/x) for x > 0, 0 otherwise."""
    positive = x > 0
    safe = np.where(positive, x, 1.0)
    return np.where(positive, np.exp(-1.0 / safe), 0.0)


def _blend(rising: np.ndarray, falling: np.ndarray) -> np.ndarray:
    # rising + falling > 0 wherever either is; both never vanish together
    return rising / (rising + falling)


def evaluate_cutoff(t: ArrayLike, profile: CutoffProfile) -> np.ndarray:
    a = np.abs(np.asarray(t, dtype=np.float64))
    match profile.kind:
        case CutoffKind.smooth_exp:
            return _blend(_s(profile.outer - a), _s(a - profile.inner))
        case CutoffKind.smoothstep:
            u = np.clip((a - profile.inner) / (profile.outer - profile.inner), 0.0, 1.0)
            return 1.0 - u**3 * (10.0 - 15.0 * u + 6.0 * u**2)
    raise ArgumentError(f"unknown cutoff kind {profile.kind}")


def evaluate_halfline(t: ArrayLike, profile: HalfLineProfile) -> np.ndarray:
    if profile.ramp is None:
        raise ArgumentError("half-line profile ramp must be resolved against a grid first")
    t = np.asarray(t, dtype=np.float64)
    return _blend(_s(t), _s(profile.ramp - t))
