"""Scalar symbols as vectorized functions of the frequency components.

Every function takes ``xi`` as a triple of broadcastable arrays (or plain
numbers) and returns an ndarray of the broadcast shape. Singular points
follow fixed conventions: D(0) = 0, R(0) = 0, sign(0) = 0.
"""

from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike

from qsm_multipliers.models.symbols import (
    CutoffProfile,
    HalfLineProfile,
    RegularizerMode,
)
from qsm_multipliers.symbols.cutoffs import evaluate_cutoff, evaluate_halfline

SQRT2 = np.sqrt(2.0)

Xi = Sequence[ArrayLike]


def _components(xi: Xi):
    x1, x2, x3 = (np.asarray(c, dtype=np.float64) for c in xi)
    return x1, x2, x3


def _safe_divide(num: np.ndarray, den: np.ndarray) -> np.ndarray:
    num, den = np.broadcast_arrays(num, den)
    out = np.zeros(num.shape)
    np.divide(num, den, out=out, where=den != 0)
    return out


def norm_squared(xi: Xi) -> np.ndarray:
    x1, x2, x3 = _components(xi)
    return x1**2 + x2**2 + x3**2


def transverse_radius(xi: Xi) -> np.ndarray:
    x1, x2, _ = _components(xi)
    return np.sqrt(x1**2 + x2**2)


def dipole_D(xi: Xi) -> np.ndarray:
    _, _, x3 = _components(xi)
    r2 = norm_squared(xi)
    return np.where(r2 > 0, 1.0 / 3.0 - _safe_divide(x3**2, r2), 0.0)


def wave_p(xi: Xi) -> np.ndarray:
    _, _, x3 = _components(xi)
    return -(x3**2) + norm_squared(xi) / 3.0


def factored_p(xi: Xi) -> np.ndarray:
    _, _, x3 = _components(xi)
    rho = transverse_radius(xi)
    return -(SQRT2 * x3 - rho) * (SQRT2 * x3 + rho) / 3.0


def cutoff_b(xi: Xi, hbar: float, profile: CutoffProfile) -> np.ndarray:
    return evaluate_cutoff(wave_p(xi) / hbar, profile)


def enhancer_P(xi: Xi, hbar: float) -> np.ndarray:
    return np.abs(wave_p(xi)) / hbar


def radial_power(xi: Xi, exponent: float) -> np.ndarray:
    """|xi|^exponent with the value 0 at xi = 0."""
    r2 = norm_squared(xi)
    safe = np.where(r2 > 0, r2, 1.0)
    return np.where(r2 > 0, safe ** (exponent / 2.0), 0.0)


def cone_guard(xi: Xi, eps_guard: float, profile: CutoffProfile) -> np.ndarray:
    return 1.0 - evaluate_cutoff(np.sqrt(norm_squared(xi)) / eps_guard, profile)


def regularizer_R(
    xi: Xi,
    s: float,
    K: float,
    mode: RegularizerMode = RegularizerMode.plain,
    eps_guard: float | None = None,
    profile: CutoffProfile | None = None,
) -> np.ndarray:
    r = K * radial_power(xi, -s)
    if mode == RegularizerMode.cone_guarded:
        if eps_guard is None:
            raise ValueError("cone-guarded regularizer needs eps_guard")
        r = r * cone_guard(xi, eps_guard, profile or CutoffProfile())
    return r


def lowpass_C(xi: Xi, bigM: float, eps_c: float, profile: CutoffProfile) -> np.ndarray:
    return evaluate_cutoff(np.sqrt(norm_squared(xi)) / eps_c, profile.with_outer(bigM))


def halfwave_T(xi: Xi, h: HalfLineProfile) -> np.ndarray:
    _, _, x3 = _components(xi)
    rho = transverse_radius(xi)
    return evaluate_halfline(x3, h) * (SQRT2 * x3 - rho) + evaluate_halfline(-x3, h) * (
        SQRT2 * x3 + rho
    )


def t_over_p(xi: Xi, h: HalfLineProfile) -> np.ndarray:
    """halfwave_T / wave_p with the cone factor cancelled, finite everywhere.

    Each term only lives on the side of xi3 where its denominator keeps sign,
    and both vanish at xi3 = 0.
    """
    _, _, x3 = _components(xi)
    rho = transverse_radius(xi)
    upper = _safe_divide(evaluate_halfline(x3, h), SQRT2 * x3 + rho)
    lower = _safe_divide(evaluate_halfline(-x3, h), SQRT2 * x3 - rho)
    return -3.0 * (upper + lower)


def laplacian_mult(xi: Xi) -> np.ndarray:
    return norm_squared(xi)


def q_inverse(xi: Xi, guard: float = 0.0) -> np.ndarray:
    p = wave_p(xi)
    mask = np.abs(p) > guard
    return np.where(mask, 1.0 / np.where(mask, p, 1.0), 0.0)


def bicharacteristic_direction(xi: Xi) -> np.ndarray:
    """Gradient of p; for xi on the zero cone it points along the spatial cone."""
    x1, x2, x3 = _components(xi)
    return np.stack(np.broadcast_arrays(2.0 / 3.0 * x1, 2.0 / 3.0 * x2, -4.0 / 3.0 * x3), axis=-1)


def bicharacteristic_points(x0: ArrayLike, xi: Xi, s_values: ArrayLike) -> np.ndarray:
    """Points x0 + s * dp(xi) along the projected null bicharacteristic."""
    direction = bicharacteristic_direction(xi)
    s_values = np.asarray(s_values, dtype=np.float64).reshape(-1, 1)
    return np.asarray(x0, dtype=np.float64).reshape(1, 3) + s_values * direction.reshape(1, 3)
