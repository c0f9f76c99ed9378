from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Dict, Any, Tuple, Union
import json
import math

import numpy as np


class StateClass(Enum):
    PURE = "pure"
    SYM_GLEMS = "sym_glems"
    SYM_SQTH = "sym_sqth"
    ASYM_SQTH_GLEMS = "asym_sqth_glems"
    GLEMS4 = "glems4"
    GLEMS5 = "glems5"
    GLEMS6 = "glems6"
    GLEMS7 = "glems7"
    GENERIC = "generic_non_glems"

    @property
    def is_glems(self) -> bool:
        return self not in (StateClass.SYM_SQTH, StateClass.GENERIC)


class CaseTag(Enum):
    SYM = "sym"
    CASE_2A = "case_2a"
    CASE_2B = "case_2b"
    CASE_3A = "case_3a"
    CASE_3B = "case_3b"


@dataclass(frozen=True)
class StdTwoModeState:
    """Standard-form parameters of a two-mode covariance matrix.

    The vacuum covariance matrix is the identity. Quadratures are ordered
    (x_A, p_A, x_B, p_B) and the correlation block is diag(kx, -kp).
    """
    a: float
    b: float
    kx: float
    kp: float

    def __post_init__(self):
        for name in ("a", "b", "kx", "kp"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"State parameter '{name}' must be finite, got {value}")
        if self.a <= 0 or self.b <= 0:
            raise ValueError(f"Local variances must be positive, got a={self.a}, b={self.b}")
        if self.kp < 0:
            raise ValueError(f"kp must be non-negative, got {self.kp}")
        if self.kp > self.kx * (1 + 1e-12) + 1e-15:
            raise ValueError(f"Standard form requires kx >= kp, got kx={self.kx}, kp={self.kp}")

    @property
    def is_standard(self) -> bool:
        # kp = 0 is accepted for product and boundary states but is not standard
        return self.kp > 0

    def covariance_matrix(self) -> np.ndarray:
        return np.array([
            [self.a, 0.0, self.kx, 0.0],
            [0.0, self.a, 0.0, -self.kp],
            [self.kx, 0.0, self.b, 0.0],
            [0.0, -self.kp, 0.0, self.b],
        ])

    def swapped(self) -> 'StdTwoModeState':
        """The same state with modes A and B exchanged."""
        return StdTwoModeState(a=self.b, b=self.a, kx=self.kx, kp=self.kp)

    def as_tuple(self) -> Tuple[float, float, float, float]:
        return (self.a, self.b, self.kx, self.kp)

    def to_dict(self) -> Dict[str, Any]:
        return {"a": self.a, "b": self.b, "kx": self.kx, "kp": self.kp}

    @classmethod
    def from_dict(cls, data: Dict[str, Union[float, str]]) -> 'StdTwoModeState':
        from ..utils.expressions import evaluate

        missing = [key for key in ("a", "b", "kx", "kp") if key not in data]
        if missing:
            raise ValueError(f"State is missing parameters: {', '.join(missing)}")
        return cls(
            a=evaluate(data["a"]),
            b=evaluate(data["b"]),
            kx=evaluate(data["kx"]),
            kp=evaluate(data["kp"]),
        )

    def save_to_file(self, path: Path):
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(self.to_dict(), f, indent=2)

    @classmethod
    def load_from_file(cls, path: Path) -> 'StdTwoModeState':
        with open(path, 'r', encoding='utf-8') as f:
            return cls.from_dict(json.load(f))


@dataclass(frozen=True)
class SymplecticInvariants:
    delta: float
    d: float
    m: float
    m_tilde: float
    l1: float
    l2: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "delta": self.delta,
            "d": self.d,
            "m": self.m,
            "m_tilde": self.m_tilde,
            "l1": self.l1,
            "l2": self.l2,
        }


@dataclass(frozen=True, eq=False)
class SymplecticDecomposition:
    """Symplectic matrix S with S·γ·Sᵀ = diag(nu1, nu1, nu2, nu2).

    S never mixes positions with momenta, so it is fixed by the eight
    entries x1..x8 read row by row from the non-zero positions.
    """
    s_matrix: np.ndarray
    nu1: float
    nu2: float
    case_tag: CaseTag

    @property
    def x(self) -> Tuple[float, ...]:
        s = self.s_matrix
        return (
            float(s[0, 0]), float(s[0, 2]),
            float(s[1, 1]), float(s[1, 3]),
            float(s[2, 0]), float(s[2, 2]),
            float(s[3, 1]), float(s[3, 3]),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "s_matrix": self.s_matrix.tolist(),
            "nu1": self.nu1,
            "nu2": self.nu2,
            "case_tag": self.case_tag.value,
        }


@dataclass(frozen=True, eq=False)
class PurificationCM:
    rank: int
    gamma_ab: np.ndarray
    gamma_abe: np.ndarray
    gamma_e: np.ndarray

    def assembled(self) -> np.ndarray:
        if self.rank == 0:
            return self.gamma_ab.copy()
        return np.block([
            [self.gamma_ab, self.gamma_abe],
            [self.gamma_abe.T, self.gamma_e],
        ])
