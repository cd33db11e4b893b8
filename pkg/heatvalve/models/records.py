import math
from typing import Dict, List, Optional

from loguru import logger

from .method import GeneratorMethod
from .model import BaseModel


class HeatFlowRecord(BaseModel):
    phi: float
    omega_q: float
    # natural units, Ω_L²; positive means energy flowing from the bath into the system
    P_L: float
    P_R: float
    P_L_SI: float
    P_R_SI: float
    method: GeneratorMethod
    residual: float
    min_eig: float
    error: Optional[str] = None

    @property
    def failed(self) -> bool:
        return self.error is not None

    @classmethod
    def failure(
        cls, phi: float, omega_q: float, method: GeneratorMethod, error: Exception
    ) -> "HeatFlowRecord":
        nan = math.nan
        return cls(
            phi=phi,
            omega_q=omega_q,
            P_L=nan,
            P_R=nan,
            P_L_SI=nan,
            P_R_SI=nan,
            method=method,
            residual=nan,
            min_eig=nan,
            error=f"{type(error).__name__}: {error}",
        )


class MethodTiming(BaseModel):
    assembly_seconds: float
    solve_seconds: float

    @property
    def total_seconds(self) -> float:
        return self.assembly_seconds + self.solve_seconds


class MethodComparison(BaseModel):
    """Heat currents of several generator methods at one flux point, keyed by method label."""

    phi: float
    omega_q: float
    records: Dict[str, HeatFlowRecord]
    timings: Dict[str, MethodTiming]

    def failed_labels(self) -> List[str]:
        return [label for label, record in self.records.items() if record.failed]

    def max_relative_deviation(self, side: str = "L") -> float:
        """Largest pairwise relative difference of P_side among the methods that succeeded."""
        currents = [getattr(r, f"P_{side}") for r in self.records.values() if not r.failed]
        if len(currents) < 2:
            return 0.0
        worst = 0.0
        for i, a in enumerate(currents):
            for b in currents[i + 1 :]:
                scale = max(abs(a), abs(b))
                if scale == 0:
                    continue
                worst = max(worst, abs(a - b) / scale)
        return worst


class ComparisonTable(BaseModel):
    methods: List[str]
    rows: List[MethodComparison]

    def max_relative_deviation(self, side: str = "L") -> float:
        skipped = sum(len(row.failed_labels()) for row in self.rows)
        if skipped:
            logger.warning(f"{skipped} failed record(s) left out of the P_{side} deviation")
        return max((row.max_relative_deviation(side) for row in self.rows), default=0.0)

    def total_seconds(self, label: str) -> float:
        return sum(row.timings[label].total_seconds for row in self.rows)
