from dataclasses import dataclass, asdict
from typing import Dict, Any, Optional


@dataclass(frozen=True)
class GridSpec:
    """Grid densities and caps for the brute-force optimizers."""
    n_theta: int = 6
    n_r: int = 5
    n_phi: int = 8
    n_tau: int = 5
    n_t: int = 9
    r_max: float = 8.0
    tau_max: float = 20.0
    refinement_rounds: int = 3

    def __post_init__(self):
        for name in ("n_theta", "n_r", "n_phi", "n_tau", "n_t"):
            if getattr(self, name) < 3:
                raise ValueError(f"Grid count '{name}' must be at least 3, got {getattr(self, name)}")
        if self.r_max <= 0:
            raise ValueError(f"r_max must be positive, got {self.r_max}")
        if self.tau_max <= 1:
            raise ValueError(f"tau_max must exceed 1, got {self.tau_max}")
        if self.refinement_rounds < 0:
            raise ValueError(f"refinement_rounds must be non-negative, got {self.refinement_rounds}")

    @property
    def t_max(self) -> float:
        return self.r_max

    def with_overrides(self, **overrides: Optional[Any]) -> 'GridSpec':
        data = self.to_dict()
        data.update({k: v for k, v in overrides.items() if v is not None})
        return GridSpec.from_dict(data)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'GridSpec':
        defaults = cls()
        return cls(
            n_theta=int(data.get("n_theta", defaults.n_theta)),
            n_r=int(data.get("n_r", defaults.n_r)),
            n_phi=int(data.get("n_phi", defaults.n_phi)),
            n_tau=int(data.get("n_tau", defaults.n_tau)),
            n_t=int(data.get("n_t", defaults.n_t)),
            r_max=float(data.get("r_max", defaults.r_max)),
            tau_max=float(data.get("tau_max", defaults.tau_max)),
            refinement_rounds=int(data.get("refinement_rounds", defaults.refinement_rounds)),
        )

    @classmethod
    def from_settings(cls) -> 'GridSpec':
        from ..utils.settings import settings
        return cls.from_dict(settings.get("grid", {}))
