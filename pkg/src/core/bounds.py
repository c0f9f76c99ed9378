"""Closed-form bounds on the Gaussian intrinsic entanglement.

L fixes double x-homodyne on A and B and minimizes over Eve's measurement;
U minimizes over Eve the homodyne GCMI of the conditional state. For GLEMS
both reduce to one-dimensional problems in the variable Q.
"""

import logging
import math
from typing import List, Optional

from ..models import (
    StdTwoModeState, StateClass, SymplecticDecomposition, SingleModeMeasurement,
    MeasurementLimit, CondStdParams, AlphaTriple, KhMinimum, GTildeVariants, Class6Bound
)
from .errors import NotApplicableError, NumericalError
from .symplectic import (
    GLEMS_TOL, CASE_TOL, classify, invariants_of, is_entangled, require_physical,
    symplectic_eigenvalues, williamson
)

logger = logging.getLogger(__name__)

# stands in for "no measurement" (τ → ∞) when no finite Eve lowers 𝒦_h
NO_MEASUREMENT_TAU = 1e12


def g_quantity(a: float, b: float, cx: float) -> float:
    if a * b <= cx ** 2:
        raise ValueError(f"g_quantity requires ab > cx^2, got ab={a * b}, cx^2={cx ** 2}")
    return math.sqrt(a / b) + math.sqrt(b / a) + 1 / math.sqrt(a * b) - math.sqrt(a * b - cx ** 2)


def gcmi_homodyne(p: CondStdParams) -> float:
    ab = p.a_t * p.b_t
    if ab <= p.cx_t ** 2:
        raise ValueError(f"Homodyne GCMI requires ab > cx^2, got ab={ab}, cx^2={p.cx_t ** 2}")
    return 0.5 * math.log(ab / (ab - p.cx_t ** 2))


def g_tilde_min(s: StdTwoModeState) -> float:
    nu1, nu2 = symplectic_eigenvalues(s)
    return 2 + 1 / math.sqrt(s.a * s.b) - math.sqrt(nu1 * nu2)


def homodyne_cond_ok(s: StdTwoModeState) -> bool:
    """Double x-homodyne attains the GCMI of every conditional state of s."""
    return g_tilde_min(s) >= 0


def g_tilde_variants(s: StdTwoModeState, tol: float = CASE_TOL) -> GTildeVariants:
    if abs(s.a - s.b) > tol * max(s.a, s.b):
        raise NotApplicableError(f"Symmetric G bounds need a = b, got a={s.a}, b={s.b}")
    nu1, nu2 = symplectic_eigenvalues(s)
    g_min_sym = 2 + 1 / s.a - math.sqrt(nu1 * nu2)
    state_class = classify(s)

    g_opt = None
    if state_class in (StateClass.SYM_GLEMS, StateClass.PURE):
        g_opt = 2 + 1 / s.a - math.sqrt(s.a ** 2 - s.kx ** 2)
        if state_class is StateClass.SYM_GLEMS and not g_min_sym < g_opt:
            raise NumericalError(f"Expected G_min < G_opt for a mixed symmetric GLEMS, got {g_min_sym} >= {g_opt}")

    cond = None
    if state_class in (StateClass.SYM_SQTH, StateClass.PURE):
        cond = nu1 <= 2 + 1 / s.a
    return GTildeVariants(g_min_sym=g_min_sym, g_opt_sym_glems=g_opt, cond_sym_sqth=cond)


def _require_glems(s: StdTwoModeState, dec: SymplecticDecomposition, tol: float):
    if abs(dec.nu2 - 1.0) > tol:
        raise NotApplicableError(f"State {s.as_tuple()} is not a GLEMS (nu2={dec.nu2}); use the oracle")


def alphas(s: StdTwoModeState, dec: SymplecticDecomposition, tol: float = GLEMS_TOL) -> AlphaTriple:
    _require_glems(s, dec, tol)
    weight = dec.nu1 ** 2 - 1
    x3, x4 = dec.x[2], dec.x[3]
    return AlphaTriple(
        alpha_a=weight * x3 ** 2 / s.a,
        alpha_b=weight * x4 ** 2 / s.b,
        alpha_ab=weight * (s.a * x4 ** 2 + s.b * x3 ** 2 - 2 * s.kx * x3 * x4) / (s.a * s.b - s.kx ** 2),
    )


def k_h(q: float, al: AlphaTriple) -> float:
    denominator = 1 - al.alpha_ab * q
    if denominator <= 0:
        raise NumericalError(f"Pole of K_h inside its domain at Q={q} (alpha_AB={al.alpha_ab})")
    return (1 - al.alpha_a * q) * (1 - al.alpha_b * q) / denominator


def q_of(m: SingleModeMeasurement, nu: float) -> float:
    if m.limit is MeasurementLimit.HOMODYNE_X:
        return math.sin(m.phi) ** 2 / nu
    if m.limit is MeasurementLimit.HETERODYNE:
        return 1 / (nu + 1)
    cosh, sinh = math.cosh(2 * m.t), math.sinh(2 * m.t)
    numerator = m.tau * (cosh - sinh * math.cos(2 * m.phi)) + nu
    return numerator / (m.tau ** 2 + 2 * m.tau * nu * cosh + nu ** 2)


def realize_q(q: float, nu: float) -> SingleModeMeasurement:
    """An Eve measurement with the given Q: phi = π/2, tau = 1 and t from a quadratic in e^{2t}.

    Q below the heterodyne value 1/(nu+1) needs extra noise, realized by t = 0, tau = 1/Q - nu.
    """
    lead = q * nu - 1
    linear = q * (1 + nu ** 2) - nu
    disc = linear ** 2 - 4 * lead * q * nu
    w = (-linear - math.sqrt(disc)) / (2 * lead)
    if w >= 1 - 1e-12:
        t = 0.5 * math.log(max(w, 1.0))
        if t <= 1e-12:
            return SingleModeMeasurement.heterodyne()
        return SingleModeMeasurement(phi=math.pi / 2, tau=1.0, t=t)
    return SingleModeMeasurement(phi=0.0, tau=1 / q - nu, t=0.0)


def _stationary_points(al: AlphaTriple, tol: float) -> List[float]:
    a_, b_, c_ = al.alpha_a, al.alpha_b, al.alpha_ab
    # linear cases: alpha_A or alpha_B coincides with alpha_AB
    if abs(a_ - c_) <= tol * c_ or abs(b_ - c_) <= tol * c_:
        return []
    if a_ <= 0 or b_ <= 0:
        return []
    product = (c_ / a_ - 1) * (c_ / b_ - 1)
    if product < 0:
        return []
    root = math.sqrt(product)
    return [(1 + root) / c_, (1 - root) / c_]


def minimize_k_h(
    s: StdTwoModeState,
    dec: SymplecticDecomposition,
    al: Optional[AlphaTriple] = None,
    tol: float = GLEMS_TOL
) -> KhMinimum:
    _require_glems(s, dec, tol)
    nu = dec.nu1
    if nu - 1 <= tol:
        return KhMinimum(k_min=1.0, q_star=1 / nu, eve=SingleModeMeasurement.homodyne_x())
    if al is None:
        al = alphas(s, dec, tol)

    stationary = _stationary_points(al, tol)
    boundary = 1 / nu
    best_value, best_q, best_eve = k_h(boundary, al), boundary, SingleModeMeasurement.homodyne_x()
    for q in stationary:
        if 0 < q < boundary:
            value = k_h(q, al)
            logger.debug(f"Interior stationary point Q={q}: K_h={value}")
            if value < best_value:
                best_value, best_q, best_eve = value, q, realize_q(q, nu)

    if best_value > 1:
        # only the unreachable Q → 0 end beats every candidate
        logger.warning(f"K_h exceeds 1 on all candidates for {s.as_tuple()}; reporting the no-measurement limit")
        return KhMinimum(
            k_min=1.0, q_star=0.0,
            eve=SingleModeMeasurement(phi=0.0, tau=NO_MEASUREMENT_TAU, t=0.0),
            stationary_points=stationary,
        )
    return KhMinimum(k_min=best_value, q_star=best_q, eve=best_eve, stationary_points=stationary)


def lower_bound_l(s: StdTwoModeState, dec: Optional[SymplecticDecomposition] = None) -> float:
    return lower_bound_details(s, dec)[0]


def lower_bound_details(s: StdTwoModeState, dec: Optional[SymplecticDecomposition] = None):
    """(L, KhMinimum) for an entangled GLEMS."""
    require_physical(s)
    if dec is None:
        dec = williamson(s)
    minimum = minimize_k_h(s, dec)
    ab = s.a * s.b
    value = 0.5 * math.log(ab / (ab - s.kx ** 2)) + 0.5 * math.log(minimum.k_min)
    return value, minimum


def class6_upper(s: StdTwoModeState, dec: SymplecticDecomposition) -> Class6Bound:
    """Upper bound for a > b GLEMS with M̃ < 0, raising NotApplicableError when a guard fails."""
    inv = invariants_of(s)
    nu = dec.nu1
    x1, _, x3, _, x5, _, x7, _ = dec.x

    if not s.a > s.b:
        raise NotApplicableError("Generic GLEMS bound needs a > b")
    if not inv.m_tilde < 0:
        raise NotApplicableError(f"Generic GLEMS bound needs M~ < 0, got {inv.m_tilde}")
    z1 = -x3 * x5 / (x1 * x7)
    if not 1 <= z1 < nu:
        raise NotApplicableError(f"Generic GLEMS bound needs 1 <= z1 < nu, got z1={z1}, nu={nu}")
    if not x5 * x7 * nu ** 2 + x1 * x3 > 0:
        raise NotApplicableError("Generic GLEMS bound needs x5*x7*nu^2 + x1*x3 > 0")

    product = x1 * x3 * x5 * x7

    def h(kappa: float) -> float:
        return 1 / (1 - kappa / (product * (kappa + 1) ** 2))

    h_min_1 = h(1.0)
    h_min_2 = h(nu / z1)
    h_min = min(h_min_1, h_min_2)
    logger.debug(f"Generic GLEMS bound: z1={z1}, h1={h_min_1}, h2={h_min_2}")
    return Class6Bound(
        z1=z1, h_min_1=h_min_1, h_min_2=h_min_2, h_min=h_min,
        upper_u=-0.5 * math.log(1 - h_min),
    )


def upper_bound_u(s: StdTwoModeState, dec: Optional[SymplecticDecomposition] = None) -> float:
    if not is_entangled(s):
        raise NotApplicableError("Upper bound U is only evaluated for entangled states")
    state_class = classify(s)
    a, b, kx, kp = s.as_tuple()

    if state_class is StateClass.PURE:
        return math.log(a)
    if state_class is StateClass.SYM_GLEMS:
        return math.log(a / math.sqrt(a ** 2 - kp ** 2))
    if state_class is StateClass.SYM_SQTH:
        if not g_tilde_variants(s).cond_sym_sqth:
            raise NotApplicableError("Symmetric squeezed thermal state violates nu <= 2 + 1/a; use the oracle")
        nu_t = a - kx
        return math.log((nu_t ** 2 + 1) / (2 * nu_t))

    if not homodyne_cond_ok(s):
        raise NotApplicableError("Double homodyne optimality condition fails; use the oracle")
    if state_class is StateClass.ASYM_SQTH_GLEMS:
        return math.log((a + b) / (abs(a - b) + 2))
    if state_class is StateClass.GLEMS4:
        return math.log(a / math.sqrt(a ** 2 - kx * kp))
    if state_class is StateClass.GLEMS5:
        return math.log(b / math.sqrt(b ** 2 - kx * kp))
    if state_class is StateClass.GLEMS6:
        return class6_upper(s, dec if dec is not None else williamson(s)).upper_u
    raise NotApplicableError(f"No closed upper bound for class {state_class.value}; use the oracle")


def gie_symmetric_compact(s: StdTwoModeState, tol: float = CASE_TOL) -> float:
    if abs(s.a - s.b) > tol * max(s.a, s.b):
        raise NotApplicableError(f"Compact symmetric formula needs a = b, got a={s.a}, b={s.b}")
    nu_minus = math.sqrt((s.a - s.kx) * (s.a - s.kp))
    if nu_minus >= 1:
        return 0.0
    return math.log((nu_minus + 1 / nu_minus) / 2)
