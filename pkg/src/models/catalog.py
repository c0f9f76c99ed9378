from dataclasses import dataclass, field
from typing import Dict, Any, Optional

from .state import StdTwoModeState, StateClass

PROVENANCES = ("published", "derived")


@dataclass(frozen=True)
class ExpectedValue:
    value: float
    provenance: str
    note: str = ""

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError(f"Unknown provenance '{self.provenance}', expected one of {PROVENANCES}")

    def to_dict(self) -> Dict[str, Any]:
        return {"value": self.value, "provenance": self.provenance, "note": self.note}


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    state: StdTwoModeState
    class_tag: StateClass
    description: str = ""
    expected: Dict[str, ExpectedValue] = field(default_factory=dict)

    def expected_value(self, name: str) -> Optional[float]:
        entry = self.expected.get(name)
        return entry.value if entry else None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "state": self.state.to_dict(),
            "class": self.class_tag.value,
            "description": self.description,
            "expected": {name: value.to_dict() for name, value in self.expected.items()},
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'CatalogEntry':
        return cls(
            id=data["id"],
            state=StdTwoModeState.from_dict(data["state"]),
            class_tag=StateClass(data["class"]),
            description=data.get("description", ""),
            expected={
                name: ExpectedValue(
                    value=_evaluate(value["value"]),
                    provenance=value["provenance"],
                    note=value.get("note", ""),
                )
                for name, value in data.get("expected", {}).items()
            },
        )


def _evaluate(expression) -> float:
    from ..utils.expressions import evaluate
    return evaluate(expression)
