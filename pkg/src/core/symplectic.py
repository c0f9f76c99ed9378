"""Symplectic algebra of two-mode Gaussian states in standard form.

Conventions: vacuum CM = identity, quadratures ordered (x_A, p_A, x_B, p_B),
Ω = J ⊕ J with J = [[0, 1], [-1, 0]].
"""

import logging
import math
from typing import List, Optional, Tuple

import numpy as np
from scipy.linalg import block_diag

from ..models import (
    StdTwoModeState, StateClass, CaseTag, SymplecticInvariants,
    SymplecticDecomposition, PurificationCM
)
from .errors import NonPhysicalStateError, NotApplicableError
from ..utils.settings import settings

logger = logging.getLogger(__name__)

PHYSICAL_TOL = float(settings.get("tolerances.physical", 1e-12))
GLEMS_TOL = float(settings.get("tolerances.glems", 1e-9))
CASE_TOL = float(settings.get("tolerances.case", 1e-9))

_J = np.array([[0.0, 1.0], [-1.0, 0.0]])
_SIGMA_Z = np.diag([1.0, -1.0])
_MODE_SWAP = np.block([
    [np.zeros((2, 2)), np.eye(2)],
    [np.eye(2), np.zeros((2, 2))],
])


def omega(n_modes: int) -> np.ndarray:
    if n_modes < 1:
        raise ValueError(f"Number of modes must be positive, got {n_modes}")
    return np.kron(np.eye(n_modes), _J)


def _margins(s: StdTwoModeState) -> Tuple[float, float, float]:
    ab = s.a * s.b
    lhs = (ab - s.kx ** 2) * (ab - s.kp ** 2) + 1.0
    return ab, lhs, s.a ** 2 + s.b ** 2


def is_physical(s: StdTwoModeState, tol: float = PHYSICAL_TOL) -> bool:
    ab, lhs, sum_sq = _margins(s)
    rhs = sum_sq - 2.0 * s.kx * s.kp
    first = lhs - rhs >= -tol * max(1.0, abs(rhs))
    second = ab - s.kx ** 2 - 1.0 >= -tol * max(1.0, ab)
    return first and second


def require_physical(s: StdTwoModeState, tol: float = PHYSICAL_TOL):
    if not is_physical(s, tol):
        raise NonPhysicalStateError(
            f"State (a={s.a}, b={s.b}, kx={s.kx}, kp={s.kp}) violates the physicality conditions"
        )


def is_entangled(s: StdTwoModeState, tol: float = PHYSICAL_TOL) -> bool:
    require_physical(s, tol)
    _, lhs, sum_sq = _margins(s)
    rhs = sum_sq + 2.0 * s.kx * s.kp
    # boundary of the inequality counts as separable
    return lhs < rhs - tol * max(1.0, abs(rhs))


def invariants_of(s: StdTwoModeState) -> SymplecticInvariants:
    delta = s.a ** 2 + s.b ** 2 - 2.0 * s.kx * s.kp
    m = s.a * s.kx - s.b * s.kp
    m_tilde = s.b * s.kx - s.a * s.kp
    d = (s.a ** 2 - s.b ** 2) ** 2 + 4.0 * m * m_tilde
    root = math.sqrt(max(d, 0.0))
    return SymplecticInvariants(
        delta=delta,
        d=d,
        m=m,
        m_tilde=m_tilde,
        l1=(s.b ** 2 - s.a ** 2 - root) / 2.0,
        l2=(s.b ** 2 - s.a ** 2 + root) / 2.0,
    )


def determinant(s: StdTwoModeState) -> float:
    ab = s.a * s.b
    return (ab - s.kx ** 2) * (ab - s.kp ** 2)


def symplectic_eigenvalues(s: StdTwoModeState) -> Tuple[float, float]:
    require_physical(s)
    inv = invariants_of(s)
    nu1 = math.sqrt((inv.delta + math.sqrt(max(inv.d, 0.0))) / 2.0)
    # product form avoids the cancellation in (Δ - √D)/2
    nu2 = math.sqrt(max(determinant(s), 0.0)) / nu1
    return nu1, nu2


def generic_symplectic_spectrum(cm: np.ndarray) -> np.ndarray:
    """Symplectic eigenvalues of any 2N×2N CM as moduli of eig(iΩγ), descending."""
    n_modes = cm.shape[0] // 2
    moduli = np.sort(np.abs(np.linalg.eigvals(1j * omega(n_modes) @ cm)))[::-1]
    return moduli[::2]


def is_glems(s: StdTwoModeState, tol: float = GLEMS_TOL) -> bool:
    _, nu2 = symplectic_eigenvalues(s)
    return abs(nu2 - 1.0) <= tol


def classify(s: StdTwoModeState, tol: float = GLEMS_TOL) -> StateClass:
    """Class tag with precedence Pure > SymGLEMS > AsymSqThGLEMS > Glems4/5/6/7."""
    nu1, nu2 = symplectic_eigenvalues(s)
    symmetric = abs(s.a - s.b) <= CASE_TOL * max(s.a, s.b)
    equal_k = abs(s.kx - s.kp) <= CASE_TOL * max(s.kx, 1e-300)

    if abs(nu2 - 1.0) > tol:
        if symmetric and equal_k:
            return StateClass.SYM_SQTH
        return StateClass.GENERIC

    if abs(nu1 - 1.0) <= tol:
        return StateClass.PURE
    if symmetric:
        return StateClass.SYM_GLEMS
    if equal_k:
        return StateClass.ASYM_SQTH_GLEMS
    scale = CASE_TOL * max(s.a, s.b) * s.kx
    if s.a > s.b:
        return StateClass.GLEMS4 if abs(s.b * s.kx - s.a * s.kp) <= scale else StateClass.GLEMS6
    return StateClass.GLEMS5 if abs(s.a * s.kx - s.b * s.kp) <= scale else StateClass.GLEMS7


def _from_x(x1, x2, x3, x4, x5, x6, x7, x8) -> np.ndarray:
    return np.array([
        [x1, 0.0, x2, 0.0],
        [0.0, x3, 0.0, x4],
        [x5, 0.0, x6, 0.0],
        [0.0, x7, 0.0, x8],
    ])


def symmetric_squeezing(a: float, kx: float, kp: float) -> Tuple[float, float]:
    """Squeezing factors (z_A, z_B) of the two normal modes of a symmetric state."""
    return ((a + kx) / (a - kp)) ** 0.25, ((a + kp) / (a - kx)) ** 0.25


def _symmetric_case(a: float, kx: float, kp: float) -> Tuple[np.ndarray, float, float]:
    z_a, z_b = symmetric_squeezing(a, kx, kp)
    s_matrix = _from_x(1 / z_a, 1 / z_a, z_a, z_a, -z_b, z_b, -1 / z_b, 1 / z_b) / math.sqrt(2.0)
    return s_matrix, math.sqrt((a + kx) * (a - kp)), math.sqrt((a - kx) * (a + kp))


def _case_2a(a: float, b: float, kx: float, kp: float) -> Tuple[np.ndarray, float, float]:
    # a QND-type coupling with constant q = kx / a
    nu1 = math.sqrt(a ** 2 - kx * kp)
    nu2 = math.sqrt(b ** 2 - kx * kp)
    s_matrix = _from_x(
        math.sqrt(nu1 / a), 0.0,
        math.sqrt(a / nu1), kx / math.sqrt(a * nu1),
        -kp / math.sqrt(b * nu2), math.sqrt(b / nu2),
        0.0, math.sqrt(nu2 / b),
    )
    return s_matrix, nu1, nu2


def _case_2b(s: StdTwoModeState) -> Tuple[np.ndarray, float, float]:
    a, b, kp = s.a, s.b, s.kp
    inv = invariants_of(s)
    nu1, nu2 = symplectic_eigenvalues(s)
    m, l1, l2 = inv.m, inv.l1, inv.l2

    x4 = m * math.sqrt(nu1 / (a * l1 ** 2 + 2 * kp * l1 * m + b * m ** 2))
    x8 = m * math.sqrt(nu2 / (a * l2 ** 2 + 2 * kp * l2 * m + b * m ** 2))
    s_matrix = _from_x(
        -(a * l1 + kp * m) * x4 / (nu1 * m),
        (kp * l1 + b * m) * x4 / (nu1 * m),
        -l1 * x4 / m,
        x4,
        -(a * l2 + kp * m) * x8 / (nu2 * m),
        (kp * l2 + b * m) * x8 / (nu2 * m),
        -l2 * x8 / m,
        x8,
    )
    return s_matrix, nu1, nu2


def _case_2a_or_collar(s: StdTwoModeState) -> Tuple[np.ndarray, float, float]:
    # inside the tolerance collar the 2a form is only approximate; 2b stays regular there
    exact = _case_2a(s.a, s.b, s.kx, s.kp)
    if s.b * s.kx == s.a * s.kp:
        return exact
    general = _case_2b(s)
    return min(exact, general, key=lambda candidate: _normal_form_residual(s, *candidate))


def _normal_form_residual(s: StdTwoModeState, s_matrix: np.ndarray, nu1: float, nu2: float) -> float:
    target = np.diag([nu1, nu1, nu2, nu2])
    return float(np.max(np.abs(s_matrix @ s.covariance_matrix() @ s_matrix.T - target)))


def _dispatch_case(s: StdTwoModeState, tol: float) -> CaseTag:
    if abs(s.a - s.b) <= tol * max(s.a, s.b):
        return CaseTag.SYM
    scale = tol * max(s.a, s.b) * s.kx
    if s.a > s.b:
        return CaseTag.CASE_2A if abs(s.b * s.kx - s.a * s.kp) <= scale else CaseTag.CASE_2B
    return CaseTag.CASE_3A if abs(s.a * s.kx - s.b * s.kp) <= scale else CaseTag.CASE_3B


def williamson(s: StdTwoModeState, tol: float = CASE_TOL) -> SymplecticDecomposition:
    """Closed-form symplectic S bringing the CM to diag(nu1, nu1, nu2, nu2).

    For a > b the canonical sign choice has positive x4 and x8. For a < b the
    decomposition of the mode-swapped state is composed with the swap.
    """
    require_physical(s)
    if not s.is_standard:
        raise NotApplicableError(f"Williamson decomposition requires kx >= kp > 0, got kp={s.kp}")

    case_tag = _dispatch_case(s, tol)
    if case_tag is CaseTag.SYM:
        s_matrix, nu1, nu2 = _symmetric_case(s.a, s.kx, s.kp)
    elif case_tag is CaseTag.CASE_2A:
        s_matrix, nu1, nu2 = _case_2a_or_collar(s)
    elif case_tag is CaseTag.CASE_2B:
        s_matrix, nu1, nu2 = _case_2b(s)
    else:
        mirrored = s.swapped()
        if case_tag is CaseTag.CASE_3A:
            s_tilde, nu1, nu2 = _case_2a_or_collar(mirrored)
        else:
            s_tilde, nu1, nu2 = _case_2b(mirrored)
        s_matrix = s_tilde @ _MODE_SWAP

    dec = SymplecticDecomposition(s_matrix=s_matrix, nu1=nu1, nu2=nu2, case_tag=case_tag)
    logger.debug(f"Williamson {case_tag.value} for {s.as_tuple()}: nu=({nu1}, {nu2})")
    return dec


def residuals(s: StdTwoModeState, dec: SymplecticDecomposition) -> Tuple[float, float]:
    """Max-norm residuals of S·Ω·Sᵀ = Ω and S·γ·Sᵀ = diag(nu1, nu1, nu2, nu2)."""
    s_matrix = dec.s_matrix
    om = omega(2)
    symplectic_residual = np.max(np.abs(s_matrix @ om @ s_matrix.T - om))
    return float(symplectic_residual), _normal_form_residual(s, s_matrix, dec.nu1, dec.nu2)


def sign_variants(dec: SymplecticDecomposition) -> List[SymplecticDecomposition]:
    """The canonical S and the three matrices obtained by flipping the sign of one or both normal modes."""
    variants = []
    for sign_1, sign_2 in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
        flip = np.diag([sign_1, sign_1, sign_2, sign_2]).astype(float)
        variants.append(SymplecticDecomposition(
            s_matrix=flip @ dec.s_matrix, nu1=dec.nu1, nu2=dec.nu2, case_tag=dec.case_tag
        ))
    return variants


def symplectic_inverse(s_matrix: np.ndarray) -> np.ndarray:
    om = omega(s_matrix.shape[0] // 2)
    return om @ s_matrix.T @ om.T


def purification(
    s: StdTwoModeState,
    dec: Optional[SymplecticDecomposition] = None,
    tol: float = GLEMS_TOL
) -> PurificationCM:
    """CM blocks of a pure (2+R)-mode state whose A,B marginal is s; R counts nu_i > 1."""
    nu1, nu2 = symplectic_eigenvalues(s)
    nus = [nu for nu in (nu1, nu2) if nu > 1.0 + tol]
    rank = len(nus)
    gamma_ab = s.covariance_matrix()

    if rank == 0:
        return PurificationCM(
            rank=0, gamma_ab=gamma_ab, gamma_abe=np.zeros((4, 0)), gamma_e=np.zeros((0, 0))
        )

    if dec is None:
        dec = williamson(s)

    blocks = [math.sqrt(nu ** 2 - 1.0) * _SIGMA_Z for nu in nus]
    gamma_abe_0 = block_diag(*blocks)
    if rank == 1:
        gamma_abe_0 = np.vstack([gamma_abe_0, np.zeros((2, 2))])
    gamma_e = block_diag(*[nu * np.eye(2) for nu in nus])

    return PurificationCM(
        rank=rank,
        gamma_ab=gamma_ab,
        gamma_abe=symplectic_inverse(dec.s_matrix) @ gamma_abe_0,
        gamma_e=gamma_e,
    )
