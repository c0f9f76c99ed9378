import logging
from typing import Dict, Any, Optional

from ..models import StdTwoModeState, StateClass, GridSpec, MethodKind, GieMethod, GieReport
from .bounds import (
    class6_upper, g_tilde_min, g_tilde_variants, gie_symmetric_compact,
    lower_bound_details, lower_bound_l, upper_bound_u
)
from .companion import gr2eof, log_negativity
from .errors import NotApplicableError, NumericalError
from .oracle import bracket
from .symplectic import classify, is_entangled, require_physical, symplectic_eigenvalues, williamson

logger = logging.getLogger(__name__)

BOUND_AGREEMENT = 1e-9
COMPACT_AGREEMENT = 1e-10

SCHEMA_VERSION = 1


def _closed_form(
    s: StdTwoModeState,
    state_class: StateClass,
    kind: MethodKind,
    g_min: float
) -> GieReport:
    dec = williamson(s)
    upper = upper_bound_u(s, dec)
    lower, minimum = lower_bound_details(s, dec)
    if abs(upper - lower) > BOUND_AGREEMENT:
        raise NumericalError(f"Closed-form bounds disagree for {s.as_tuple()}: L={lower}, U={upper}")
    return GieReport(
        value=upper,
        method=GieMethod(kind=kind, label=state_class.value),
        upper_u=upper,
        lower_l=lower,
        optimal_eve=minimum.eve,
        homodyne_cond_ok=g_min >= 0,
        g_tilde_min=g_min,
    )


def _check_compact(s: StdTwoModeState, value: float):
    compact = gie_symmetric_compact(s)
    if abs(compact - value) > COMPACT_AGREEMENT:
        raise NumericalError(f"Compact symmetric formula {compact} disagrees with closed form {value}")


def gie(s: StdTwoModeState, grid: Optional[GridSpec] = None) -> GieReport:
    """Gaussian intrinsic entanglement: closed form where one is proven, oracle bracket otherwise."""
    require_physical(s)
    g_min = g_tilde_min(s)
    cond_ok = g_min >= 0

    if not is_entangled(s):
        return GieReport(
            value=0.0, method=GieMethod(kind=MethodKind.CLOSED_FORM, label="separable"),
            upper_u=0.0, lower_l=0.0, optimal_eve=None, homodyne_cond_ok=cond_ok, g_tilde_min=g_min,
        )

    state_class = classify(s)
    logger.debug(f"GIE dispatch for {s.as_tuple()}: class {state_class.value}, G_min={g_min}")

    if state_class in (StateClass.PURE, StateClass.SYM_GLEMS):
        report = _closed_form(s, state_class, MethodKind.CLOSED_FORM, g_min)
        _check_compact(s, report.value)
        return report

    if cond_ok and state_class in (StateClass.ASYM_SQTH_GLEMS, StateClass.GLEMS4, StateClass.GLEMS5):
        return _closed_form(s, state_class, MethodKind.CLOSED_FORM, g_min)

    if state_class is StateClass.SYM_SQTH and g_tilde_variants(s).cond_sym_sqth:
        upper = upper_bound_u(s)
        lower = gie_symmetric_compact(s)
        if abs(upper - lower) > BOUND_AGREEMENT:
            raise NumericalError(f"Symmetric squeezed thermal forms disagree: {lower} vs {upper}")
        return GieReport(
            value=upper, method=GieMethod(kind=MethodKind.CLOSED_FORM, label=state_class.value),
            upper_u=upper, lower_l=lower, optimal_eve=None, homodyne_cond_ok=cond_ok, g_tilde_min=g_min,
        )

    if state_class is StateClass.GLEMS6 and cond_ok:
        try:
            class6_upper(s, williamson(s))
            return _closed_form(s, state_class, MethodKind.GENERIC_GLEMS, g_min)
        except NotApplicableError as e:
            logger.warning(f"Generic GLEMS procedure not applicable to {s.as_tuple()}: {e}")

    grid = grid or GridSpec.from_settings()
    lo, hi, upper_search = bracket(s, grid)
    return GieReport(
        value=(lo + hi) / 2,
        method=GieMethod(
            kind=MethodKind.ORACLE_BRACKET, label=state_class.value, lo=lo, hi=hi,
            heuristic=upper_search.heuristic,
        ),
        upper_u=hi,
        lower_l=lo,
        optimal_eve=upper_search.eve,
        homodyne_cond_ok=cond_ok,
        g_tilde_min=g_min,
    )


class AnalysisService:
    """Full report of one state: spectrum, class, bounds, GIE and companion measures."""

    def __init__(self, grid: Optional[GridSpec] = None):
        self.grid = grid

    def analyze(self, s: StdTwoModeState) -> Dict[str, Any]:
        require_physical(s)
        nu1, nu2 = symplectic_eigenvalues(s)
        entangled = is_entangled(s)
        state_class = classify(s)

        upper = lower = None
        if entangled:
            try:
                upper = upper_bound_u(s)
            except NotApplicableError as e:
                logger.info(f"No closed upper bound: {e}")
            if state_class.is_glems:
                lower = lower_bound_l(s)

        report = gie(s, self.grid)
        renyi = gr2eof(s)
        return {
            "schema": SCHEMA_VERSION,
            "state": s.to_dict(),
            "class": state_class.value,
            "physical": True,
            "entangled": entangled,
            "nu1": nu1,
            "nu2": nu2,
            "g_tilde_min": report.g_tilde_min,
            "homodyne_cond_ok": report.homodyne_cond_ok,
            "upper_u": upper,
            "lower_l": lower,
            "gie": report.to_dict(),
            "gr2eof": renyi,
            "log_neg": log_negativity(s),
            "abs_diff": abs(report.value - renyi) if renyi is not None else None,
        }
