"""Solve reports: one row per (algorithm, instance, seed) run."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, replace

RATIO_TOL = 1e-9


@dataclass(frozen=True)
class SolveReport:
    algorithm: str
    objective: float
    lower_bound: float | None = None
    approx_ratio: float | None = None
    edge_satisfaction: float | None = None
    wall_time_sec: float = 0.0
    seed: int | None = None
    instance: str | None = None

    def with_bound(self, lb: float) -> "SolveReport":
        return replace(
            self, lower_bound=lb, approx_ratio=approx_ratio(self.objective, lb)
        )

    def to_dict(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


def approx_ratio(objective: float, lower_bound: float) -> float:
    """objective / bound, with the zero-bound cases pinned: a zero objective
    against a zero bound is exactly optimal (ratio 1)."""
    if lower_bound > RATIO_TOL:
        return objective / lower_bound
    return 1.0 if objective <= RATIO_TOL else math.inf


def report_from_dict(row: dict) -> SolveReport:
    known = {f for f in SolveReport.__dataclass_fields__}
    return SolveReport(**{k: v for k, v in row.items() if k in known})
