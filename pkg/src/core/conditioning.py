import logging
import math
from typing import Tuple

import numpy as np

from ..models import (
    StdTwoModeState, SymplecticDecomposition, PurificationCM, SingleModeMeasurement,
    MeasurementLimit, CondStdParams, GlemsConditional
)
from .errors import NotApplicableError, NumericalError
from .symplectic import GLEMS_TOL, symplectic_inverse

logger = logging.getLogger(__name__)


def rotation(angle: float) -> np.ndarray:
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s], [s, c]])


def measurement_cm(m: SingleModeMeasurement) -> np.ndarray:
    if m.limit is MeasurementLimit.HOMODYNE_X:
        raise NotApplicableError("Ideal homodyne has no finite CM; use the homodyne conditioning path")
    c, s = math.cos(m.phi), math.sin(m.phi)
    big, small = m.tau * math.exp(2 * m.t), m.tau * math.exp(-2 * m.t)
    # sums of non-negative terms keep the small eigenvalue accurate at large t
    return np.array([
        [big * c * c + small * s * s, (big - small) * s * c],
        [(big - small) * s * c, big * s * s + small * c * c],
    ])


def conditional_cm(p: PurificationCM, gamma_e_meas: np.ndarray) -> np.ndarray:
    """Schur complement γ_AB − γ_ABE (γ_E + Γ_E)⁻¹ γ_ABEᵀ."""
    if p.rank == 0:
        return p.gamma_ab.copy()
    if gamma_e_meas.shape != p.gamma_e.shape:
        raise ValueError(f"Measurement CM shape {gamma_e_meas.shape} does not match E block {p.gamma_e.shape}")
    try:
        solved = np.linalg.solve(p.gamma_e + gamma_e_meas, p.gamma_abe.T)
    except np.linalg.LinAlgError as e:
        raise NumericalError(f"Singular measurement Schur complement: {e}") from e
    result = p.gamma_ab - p.gamma_abe @ solved
    return (result + result.T) / 2.0


def homodyne_conditional_cm(p: PurificationCM, phi: float) -> np.ndarray:
    """Conditional CM after ideal homodyne of the quadrature rotated by phi (phi = π/2 measures x_E)."""
    if p.rank == 0:
        return p.gamma_ab.copy()
    if p.rank != 1:
        raise NotApplicableError("Ideal homodyne conditioning is defined for a single-mode E")
    direction = np.array([-math.sin(phi), math.cos(phi)])
    variance = float(direction @ p.gamma_e @ direction)
    column = p.gamma_abe @ direction
    return p.gamma_ab - np.outer(column, column) / variance


def conditioned_on(p: PurificationCM, m: SingleModeMeasurement) -> np.ndarray:
    if m.limit is MeasurementLimit.HOMODYNE_X:
        return homodyne_conditional_cm(p, m.phi)
    if p.rank == 2:
        raise NotApplicableError("A single-mode measurement cannot condition a two-mode E")
    return conditional_cm(p, measurement_cm(m))


def _conditional_variances(nu: float, m: SingleModeMeasurement) -> Tuple[float, float]:
    if m.limit is MeasurementLimit.HOMODYNE_X:
        return nu, 1.0 / nu
    v_x, v_p = m.tau * math.exp(2 * m.t), m.tau * math.exp(-2 * m.t)
    return (nu * v_x + 1) / (nu + v_x), (nu * v_p + 1) / (nu + v_p)


def glems_conditional(
    s: StdTwoModeState,
    dec: SymplecticDecomposition,
    m: SingleModeMeasurement,
    tol: float = GLEMS_TOL
) -> GlemsConditional:
    if abs(dec.nu2 - 1.0) > tol:
        raise NotApplicableError(f"State {s.as_tuple()} is not a GLEMS (nu2={dec.nu2})")

    cal_vx, cal_vp = _conditional_variances(dec.nu1, m)
    rot = rotation(m.phi)
    gamma_a_e = rot.T @ np.diag([cal_vx, cal_vp]) @ rot
    g11, g22 = gamma_a_e[0, 0], gamma_a_e[1, 1]
    det_a_e = cal_vx * cal_vp

    x1, x2, x3, x4, x5, x6, x7, x8 = dec.x
    a_t_sq = x1 ** 2 * x3 ** 2 * det_a_e + x3 ** 2 * x5 ** 2 * g11 + x1 ** 2 * x7 ** 2 * g22 + x5 ** 2 * x7 ** 2
    b_t_sq = x2 ** 2 * x4 ** 2 * det_a_e + x4 ** 2 * x6 ** 2 * g11 + x2 ** 2 * x8 ** 2 * g22 + x6 ** 2 * x8 ** 2
    cxcp_t = x1 * x2 * x3 * x4 * det_a_e + x3 * x4 * x5 * x6 * g11 + x1 * x2 * x7 * x8 * g22 + x5 * x6 * x7 * x8

    s_inv = symplectic_inverse(dec.s_matrix)
    inner = np.zeros((4, 4))
    inner[:2, :2] = gamma_a_e
    inner[2:, 2:] = np.eye(2)
    cm = s_inv @ inner @ s_inv.T
    return GlemsConditional(a_t_sq=a_t_sq, b_t_sq=b_t_sq, cxcp_t=cxcp_t, cm=(cm + cm.T) / 2.0)


def std_params_batch(cms: np.ndarray, tol: float = 1e-9) -> Tuple[np.ndarray, ...]:
    """Vectorized standard-form extraction for a stack of 4×4 CMs; returns (a_t, b_t, cx_t, cp_t)."""
    a_t = np.sqrt(np.linalg.det(cms[..., :2, :2]))
    b_t = np.sqrt(np.linalg.det(cms[..., 2:, 2:]))
    det_c = np.linalg.det(cms[..., :2, 2:])
    det_cm = np.linalg.det(cms)

    ab = a_t * b_t
    sigma = (ab ** 2 + det_c ** 2 - det_cm) / ab
    disc = sigma ** 2 - 4.0 * det_c ** 2
    if np.any(disc < -tol * np.maximum(1.0, sigma ** 2)):
        raise NumericalError("Negative discriminant while extracting standard-form correlations")
    root = np.sqrt(np.maximum(disc, 0.0))
    u = (sigma + root) / 2.0
    v = np.maximum((sigma - root) / 2.0, 0.0)
    return a_t, b_t, np.sqrt(u), np.copysign(np.sqrt(v), det_c)


def std_params_of(cm: np.ndarray) -> CondStdParams:
    a_t, b_t, cx_t, cp_t = std_params_batch(cm[np.newaxis, ...])
    return CondStdParams(a_t=float(a_t[0]), b_t=float(b_t[0]), cx_t=float(cx_t[0]), cp_t=float(cp_t[0]))
