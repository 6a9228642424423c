from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional


class Status(str, Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"


@dataclass
class SolveResult:
    """Outcome of one simplex run.

    ``objective``, ``solution``, ``duals`` and ``basis`` are set only when the
    status is optimal.  In exact mode the numbers are ``Fraction``; in float
    mode they are Python floats and ``warnings`` may carry precision notes.
    """

    status: Status
    objective: Optional[object] = None
    solution: Optional[list] = None
    duals: Optional[list] = None
    basis: Optional[list[int]] = None
    pivots: int = 0
    phase1_pivots: int = 0
    exact: bool = True
    backend: str = ""
    warnings: list[str] = field(default_factory=list)

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL

    @property
    def ratio(self):
        """Approximation ratio: reciprocal of the optimum (exact when the solve was)."""
        if not self.optimal:
            raise ValueError(f"no ratio for a {self.status.value} LP")
        if self.exact:
            return 1 / Fraction(self.objective)
        return 1.0 / float(self.objective)
