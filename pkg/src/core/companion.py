"""Reference entanglement measures: logarithmic negativity and Gaussian Rényi-2 EoF."""

import logging
import math
from typing import Optional

from ..models import StdTwoModeState, PureThreeModeParams
from .errors import NotApplicableError, NumericalError
from .symplectic import (
    CASE_TOL, GLEMS_TOL, classify, determinant, is_entangled, require_physical, symplectic_eigenvalues
)

logger = logging.getLogger(__name__)

BRANCH_COLLAR = 1e-12
BRANCH_AGREEMENT = 1e-6
DELTA_TOL = 1e-9


def ptranspose_nu_minus(s: StdTwoModeState) -> float:
    """Smaller symplectic eigenvalue of the partially transposed CM (kp -> -kp)."""
    require_physical(s)
    delta_pt = s.a ** 2 + s.b ** 2 + 2.0 * s.kx * s.kp
    det = max(determinant(s), 0.0)
    nu_plus = math.sqrt((delta_pt + math.sqrt(max(delta_pt ** 2 - 4.0 * det, 0.0))) / 2.0)
    return math.sqrt(det) / nu_plus


def log_negativity(s: StdTwoModeState) -> float:
    nu_minus = ptranspose_nu_minus(s)
    if nu_minus <= 0:
        raise NumericalError(f"Degenerate partial transpose spectrum for {s.as_tuple()}")
    return max(0.0, -math.log(nu_minus))


def pure_three_mode_params(s: StdTwoModeState, tol: float = GLEMS_TOL) -> PureThreeModeParams:
    """Local symplectic eigenvalues (a, b, nu) of the three-mode pure state purifying a GLEMS."""
    nu1, nu2 = symplectic_eigenvalues(s)
    if abs(nu2 - 1.0) > tol:
        raise NotApplicableError(f"State {s.as_tuple()} needs a two-mode purification (nu2={nu2})")
    params = PureThreeModeParams(a1=s.a, a2=s.b, a3=nu1)
    validate_three_mode(params)
    return params


def validate_three_mode(params: PureThreeModeParams, tol: float = 1e-9):
    values = (params.a1, params.a2, params.a3)
    for i in range(3):
        a_i = values[i]
        a_j, a_k = (values[n] for n in range(3) if n != i)
        scale = tol * max(1.0, a_i)
        if not abs(a_j - a_k) + 1 - scale <= a_i <= a_j + a_k - 1 + scale:
            raise NotApplicableError(f"Three-mode parameters {values} violate the triangle condition at index {i + 1}")


def _alpha_3(a1: float, a2: float) -> float:
    diff = a1 ** 2 - a2 ** 2
    total = a1 ** 2 + a2 ** 2
    return math.sqrt(1 + diff ** 2 / (2 * total) + abs(diff) / (2 * total) * math.sqrt(diff ** 2 + 8 * total))


def _sqrt_delta(a1: float, a2: float, a3: float) -> float:
    factors = (
        (a1 - a2 - a3) ** 2 - 1,
        (a1 + a2 - a3) ** 2 - 1,
        (a1 - a2 + a3) ** 2 - 1,
        (a1 + a2 + a3) ** 2 - 1,
    )
    delta = math.prod(factors)
    if delta < 0:
        scale = max(1.0, math.prod(abs(f) for f in factors))
        if delta < -DELTA_TOL * scale:
            raise NumericalError(f"Negative delta={delta} for three-mode parameters ({a1}, {a2}, {a3})")
        delta = 0.0
    return math.sqrt(delta)


def _g_branch(branch: int, a1: float, a2: float, a3: float) -> float:
    if branch == 1:
        return 1.0
    if branch == 2:
        zeta = (2 * (a1 ** 2 + a2 ** 2 + a3 ** 2)
                + 2 * (a1 ** 2 * a2 ** 2 + a1 ** 2 * a3 ** 2 + a2 ** 2 * a3 ** 2)
                - a1 ** 4 - a2 ** 4 - a3 ** 4 - _sqrt_delta(a1, a2, a3) - 1)
        return zeta / (8 * a3 ** 2)
    return ((a1 ** 2 - a2 ** 2) / (a3 ** 2 - 1)) ** 2


def _g3(params: PureThreeModeParams) -> float:
    a1, a2, a3 = params.a1, params.a2, params.a3
    upper = math.sqrt(a1 ** 2 + a2 ** 2 - 1)
    lower = _alpha_3(a1, a2)

    for edge, branches in ((upper, (1, 2)), (lower, (2, 3))):
        if abs(a3 - edge) <= BRANCH_COLLAR * max(1.0, edge):
            values = [_g_branch(b, a1, a2, a3) for b in branches]
            if abs(values[0] - values[1]) > BRANCH_AGREEMENT:
                raise NumericalError(f"GR2EoF branches {branches} disagree at their boundary: {values}")
            return values[0]

    if a3 >= upper:
        branch = 1
    elif a3 > lower:
        branch = 2
    else:
        branch = 3
    logger.debug(f"GR2EoF branch {branch} for a3={a3} (alpha3={lower}, upper={upper})")
    return _g_branch(branch, a1, a2, a3)


def gr2eof_glems(s: StdTwoModeState, tol: float = GLEMS_TOL) -> float:
    params = pure_three_mode_params(s, tol)
    if params.a3 - 1 <= tol:
        # pure state: Rényi-2 entropy of the marginal
        return math.log(s.a)
    return 0.5 * math.log(_g3(params))


def gr2eof_symmetric(s: StdTwoModeState, tol: float = CASE_TOL) -> float:
    if abs(s.a - s.b) > tol * max(s.a, s.b):
        raise NotApplicableError(f"Symmetric GR2EoF needs a = b, got a={s.a}, b={s.b}")
    nu_minus = ptranspose_nu_minus(s)
    if nu_minus >= 1:
        return 0.0
    return math.log((nu_minus + 1 / nu_minus) / 2)


def gr2eof(s: StdTwoModeState) -> Optional[float]:
    """GR2EoF where a closed expression is known, otherwise None."""
    if not is_entangled(s):
        return 0.0
    if classify(s).is_glems:
        return gr2eof_glems(s)
    if abs(s.a - s.b) <= CASE_TOL * max(s.a, s.b):
        return gr2eof_symmetric(s)
    return None
