from typing import Any, Dict, Optional

from .constants import DEFAULT_CONFIG
from .errors import BudgetExceededError


def _limit(key: str, value: Optional[int]) -> int:
    # only None falls back to the default
    limit = int(value if value is not None else DEFAULT_CONFIG[key])
    if limit < 1:
        raise ValueError(f"{key} must be a positive integer, got {limit}")
    return limit


class BudgetGuard:
    """Refuses jobs whose exhaustive search would outgrow the configured limits, and counts work done."""

    def __init__(
        self,
        factorial_budget: Optional[int] = None,
        enumeration_guard: Optional[int] = None,
        prop31_guard: Optional[int] = None,
        automorphism_guard: Optional[int] = None,
    ) -> None:
        self.factorial_budget = _limit("factorial_budget", factorial_budget)
        self.enumeration_guard = _limit("enumeration_guard", enumeration_guard)
        self.prop31_guard = _limit("prop31_guard", prop31_guard)
        self.automorphism_guard = _limit("automorphism_guard", automorphism_guard)
        self.graphs_enumerated = 0
        self.isomorphism_classes = 0
        self.permutations_checked = 0
        self.digraphs_scanned = 0

    @classmethod
    def from_config(cls, config: Dict[str, Any]) -> "BudgetGuard":
        return cls(
            factorial_budget=config.get("factorial_budget"),
            enumeration_guard=config.get("enumeration_guard"),
            prop31_guard=config.get("prop31_guard"),
            automorphism_guard=config.get("automorphism_guard"),
        )

    def check_factorial(self, n_edges: int) -> None:
        if n_edges > self.factorial_budget:
            raise BudgetExceededError("factorial budget", n_edges, self.factorial_budget)

    def check_enumeration(self, v_max: int, e_max: int) -> None:
        for requested in (v_max, e_max):
            if requested > self.enumeration_guard:
                raise BudgetExceededError("enumeration guard", requested, self.enumeration_guard)

    def check_prop31(self, n: int) -> None:
        if n > self.prop31_guard:
            raise BudgetExceededError("digraph enumeration guard", n, self.prop31_guard)

    def check_automorphism(self, n: int) -> None:
        if n > self.automorphism_guard:
            raise BudgetExceededError("automorphism guard", n, self.automorphism_guard)

    def get_usage_report(self) -> Dict[str, Any]:
        return {
            "graphs_enumerated": self.graphs_enumerated,
            "isomorphism_classes": self.isomorphism_classes,
            "permutations_checked": self.permutations_checked,
            "digraphs_scanned": self.digraphs_scanned,
            "factorial_budget": self.factorial_budget,
            "enumeration_guard": self.enumeration_guard,
        }
