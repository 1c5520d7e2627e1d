"""Noise models and experiment result records."""

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from .operator import Species


@dataclass(frozen=True)
class NoiseModel:
    """Independent single-species flips, each qubit with probability ``p``.

    Args:
        p: Flip probability in [0, 1]
        species: Which Pauli error is applied

    Raises:
        ValueError: If p is outside [0, 1]
    """
    p: float
    species: Species = Species.Z

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"Noise probability must be within [0, 1], got {self.p}")


@dataclass(frozen=True)
class McResult:
    """Aggregated Monte Carlo estimate at one noise rate.

    Args:
        code_id: Label of the code
        p: Physical flip probability
        trials: Number of trials run
        failures: Number of trials whose residual was a nontrivial logical
        ci_halfwidth: Half-width of the 95% Wilson interval
        seed: Master seed of the run
    """
    code_id: str
    p: float
    trials: int
    failures: int
    ci_halfwidth: float
    seed: int

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("A Monte Carlo point needs at least one trial")
        if not 0 <= self.failures <= self.trials:
            raise ValueError(f"Failures ({self.failures}) must lie within [0, trials={self.trials}]")

    @property
    def p_fail(self) -> float:
        return self.failures / self.trials

    def csv_row(self) -> List[str]:
        """Row matching the CSV header ``code_id,p,trials,failures,p_fail,ci,seed``."""
        return [
            self.code_id,
            repr(float(self.p)),
            str(self.trials),
            str(self.failures),
            f"{self.p_fail:.10g}",
            f"{self.ci_halfwidth:.10g}",
            str(self.seed),
        ]


CSV_HEADER = ["code_id", "p", "trials", "failures", "p_fail", "ci", "seed"]


@dataclass
class SweepReport:
    """Outcome of an exhaustive sweep over all errors up to some weight.

    Args:
        code_id: Label of the code
        species: Error species that was swept
        t_max: Largest error weight enumerated
        total: Number of errors decoded
        failures: Supports of the errors that were not corrected
        max_calls_left: Largest left-pass oracle count seen
        max_calls_right: Largest right-pass oracle count seen
        call_bound_left: Allowed left-pass oracle calls per decode
        call_bound_right: Allowed right-pass oracle calls per decode
        oracle_calls: Total invocations of each oracle over the sweep
    """
    code_id: str
    species: Species
    t_max: int
    total: int = 0
    failures: List[Tuple[int, ...]] = field(default_factory=list)
    max_calls_left: int = 0
    max_calls_right: int = 0
    call_bound_left: int = 0
    call_bound_right: int = 0
    oracle_calls: Dict[str, int] = field(default_factory=dict)

    @property
    def corrected(self) -> int:
        return self.total - len(self.failures)

    @property
    def calls_within_bound(self) -> bool:
        return self.max_calls_left <= self.call_bound_left and self.max_calls_right <= self.call_bound_right

    @property
    def passed(self) -> bool:
        return not self.failures and self.calls_within_bound
