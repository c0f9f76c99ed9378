from dataclasses import dataclass
from enum import Enum
from typing import Dict, Any
import math

import numpy as np


class MeasurementLimit(Enum):
    FINITE = "finite"
    HOMODYNE_X = "homodyne_x"
    HETERODYNE = "heterodyne"


@dataclass(frozen=True)
class SingleModeMeasurement:
    """Gaussian measurement on one mode with CM P(phi)·diag(tau·e^{2t}, tau·e^{-2t})·Pᵀ(phi).

    HOMODYNE_X is the t → ∞ limit; phi then selects the measured quadrature
    (phi = π/2 measures x). HETERODYNE is phi = 0, tau = 1, t = 0.
    """
    phi: float = 0.0
    tau: float = 1.0
    t: float = 0.0
    limit: MeasurementLimit = MeasurementLimit.FINITE

    def __post_init__(self):
        if not 0.0 <= self.phi <= math.pi:
            raise ValueError(f"Measurement angle phi must lie in [0, pi], got {self.phi}")
        if self.tau < 1.0 or not math.isfinite(self.tau):
            raise ValueError(f"Thermal factor tau must be finite and >= 1, got {self.tau}")
        if self.limit is MeasurementLimit.FINITE and (self.t < 0 or not math.isfinite(self.t)):
            raise ValueError(f"Squeezing t must be finite and >= 0, got {self.t}")

    @classmethod
    def heterodyne(cls) -> 'SingleModeMeasurement':
        return cls(phi=0.0, tau=1.0, t=0.0, limit=MeasurementLimit.HETERODYNE)

    @classmethod
    def homodyne_x(cls, phi: float = math.pi / 2) -> 'SingleModeMeasurement':
        return cls(phi=phi, tau=1.0, t=math.inf, limit=MeasurementLimit.HOMODYNE_X)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "phi": self.phi,
            "tau": self.tau,
            "t": None if math.isinf(self.t) else self.t,
            "limit": self.limit.value,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'SingleModeMeasurement':
        limit = MeasurementLimit(data.get("limit", "finite"))
        if limit is MeasurementLimit.HETERODYNE:
            return cls.heterodyne()
        if limit is MeasurementLimit.HOMODYNE_X:
            return cls.homodyne_x(float(data.get("phi", math.pi / 2)))
        return cls(
            phi=float(data.get("phi", 0.0)),
            tau=float(data.get("tau", 1.0)),
            t=float(data.get("t", 0.0)),
        )


@dataclass(frozen=True)
class PureLocalMeasurement:
    """Pure Gaussian measurement on A or B: P(theta)·diag(e^{-2r}, e^{2r})·Pᵀ(theta)."""
    theta: float
    r: float

    def __post_init__(self):
        if self.r < 0:
            raise ValueError(f"Squeezing r must be non-negative, got {self.r}")

    def to_dict(self) -> Dict[str, Any]:
        return {"theta": self.theta, "r": self.r}


@dataclass(frozen=True)
class CondStdParams:
    """Standard-form parameters of a conditional two-mode CM."""
    a_t: float
    b_t: float
    cx_t: float
    cp_t: float

    def to_dict(self) -> Dict[str, Any]:
        return {"a_t": self.a_t, "b_t": self.b_t, "cx_t": self.cx_t, "cp_t": self.cp_t}


@dataclass(frozen=True, eq=False)
class GlemsConditional:
    a_t_sq: float
    b_t_sq: float
    cxcp_t: float
    cm: np.ndarray
