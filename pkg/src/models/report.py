from dataclasses import dataclass, field
import math
from enum import Enum
from typing import Dict, Any, Optional, List

from .measurement import SingleModeMeasurement


@dataclass(frozen=True)
class AlphaTriple:
    alpha_a: float
    alpha_b: float
    alpha_ab: float

    def to_dict(self) -> Dict[str, Any]:
        return {"alpha_a": self.alpha_a, "alpha_b": self.alpha_b, "alpha_ab": self.alpha_ab}


@dataclass(frozen=True)
class KhMinimum:
    k_min: float
    q_star: float
    eve: SingleModeMeasurement
    stationary_points: List[float] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "k_min": self.k_min,
            "q_star": self.q_star,
            "eve": self.eve.to_dict(),
            "stationary_points": list(self.stationary_points),
        }


@dataclass(frozen=True)
class GTildeVariants:
    g_min_sym: float
    g_opt_sym_glems: Optional[float]
    cond_sym_sqth: Optional[bool]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "g_min_sym": self.g_min_sym,
            "g_opt_sym_glems": self.g_opt_sym_glems,
            "cond_sym_sqth": self.cond_sym_sqth,
        }


@dataclass(frozen=True)
class Class6Bound:
    """Intermediate quantities of the generic GLEMS upper bound."""
    z1: float
    h_min_1: float
    h_min_2: float
    h_min: float
    upper_u: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "z1": self.z1,
            "h_min_1": self.h_min_1,
            "h_min_2": self.h_min_2,
            "h_min": self.h_min,
            "upper_u": self.upper_u,
        }


@dataclass(frozen=True)
class PureThreeModeParams:
    a1: float
    a2: float
    a3: float

    def to_dict(self) -> Dict[str, Any]:
        return {"a1": self.a1, "a2": self.a2, "a3": self.a3}


class MethodKind(Enum):
    CLOSED_FORM = "closed_form"
    GENERIC_GLEMS = "generic_glems_procedure"
    ORACLE_BRACKET = "oracle_bracket"


@dataclass(frozen=True)
class GieMethod:
    kind: MethodKind
    label: Optional[str] = None
    lo: Optional[float] = None
    hi: Optional[float] = None
    heuristic: bool = False

    def describe(self) -> str:
        if self.kind is MethodKind.CLOSED_FORM:
            return f"closed_form({self.label})"
        if self.kind is MethodKind.ORACLE_BRACKET:
            return f"oracle_bracket({self.lo:.6g},{self.hi:.6g})"
        return self.kind.value

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "label": self.label,
            "lo": self.lo,
            "hi": self.hi,
            "heuristic": self.heuristic,
        }


@dataclass(frozen=True)
class GieReport:
    value: float
    method: GieMethod
    upper_u: float
    lower_l: float
    optimal_eve: Optional[SingleModeMeasurement]
    homodyne_cond_ok: bool
    g_tilde_min: float

    def __post_init__(self):
        if self.value < -1e-12:
            raise ValueError(f"GIE value must be non-negative, got {self.value}")
        if self.lower_l > self.upper_u + 1e-9:
            raise ValueError(f"Lower bound {self.lower_l} exceeds upper bound {self.upper_u}")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": self.value,
            "method": self.method.to_dict(),
            "upper_u": self.upper_u,
            "lower_l": self.lower_l,
            "optimal_eve": self.optimal_eve.to_dict() if self.optimal_eve else None,
            "homodyne_cond_ok": self.homodyne_cond_ok,
            "g_tilde_min": self.g_tilde_min,
        }


@dataclass(frozen=True)
class ScanRecord:
    a: float
    b: float
    kx: float
    kp: float
    state_class: str
    homodyne_cond_ok: bool
    gie: float
    gie_lo: float
    gie_hi: float
    gr2eof: Optional[float]
    log_neg: float
    abs_diff: Optional[float]
    method: str

    FIELDS = ("a", "b", "kx", "kp", "class", "homodyne_cond_ok", "gie", "gie_lo",
              "gie_hi", "gr2eof", "log_neg", "abs_diff", "method")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "a": self.a,
            "b": self.b,
            "kx": self.kx,
            "kp": self.kp,
            "class": self.state_class,
            "homodyne_cond_ok": self.homodyne_cond_ok,
            "gie": self.gie,
            "gie_lo": self.gie_lo,
            "gie_hi": self.gie_hi,
            "gr2eof": self.gr2eof,
            "log_neg": self.log_neg,
            "abs_diff": self.abs_diff,
            "method": self.method,
        }


@dataclass(frozen=True)
class TrajectoryPoint:
    round: int
    params: Dict[str, float]
    value: float

    def to_row(self) -> Dict[str, Any]:
        row: Dict[str, Any] = {"round": self.round, "value": self.value}
        row.update(self.params)
        return row


@dataclass(frozen=True)
class SearchResult:
    """Best point of a grid-and-refine search with its incumbent history."""
    value: float
    params: Dict[str, float]
    trajectory: List[TrajectoryPoint] = field(default_factory=list)
    heuristic: bool = False

    @property
    def eve(self) -> Optional[SingleModeMeasurement]:
        if set(self.params) != {"phi", "tau", "t"}:
            return None
        return SingleModeMeasurement(
            phi=min(max(self.params["phi"], 0.0), math.pi), tau=max(self.params["tau"], 1.0), t=self.params["t"]
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": self.value,
            "params": dict(self.params),
            "heuristic": self.heuristic,
            "rounds": len({point.round for point in self.trajectory}),
        }
