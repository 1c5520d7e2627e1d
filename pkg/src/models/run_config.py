"""Run configuration shared by the command line and the experiment manifest."""

import os
from dataclasses import asdict, dataclass, field, fields
from typing import Any, Dict, List, Optional

DEFAULT_ENUMERATION_BUDGET = 10 ** 7
BUDGET_ENV_VAR = "RESHAPE_BUDGET"


def enumeration_budget() -> int:
    """Maximum number of items an exhaustive enumeration may visit.

    Reads ``RESHAPE_BUDGET`` and falls back to 10**7.

    Raises:
        ValueError: If the variable is set to something other than a positive integer
    """
    raw = os.environ.get(BUDGET_ENV_VAR)
    if raw is None or not raw.strip():
        return DEFAULT_ENUMERATION_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{BUDGET_ENV_VAR} must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{BUDGET_ENV_VAR} must be a positive integer, got {raw!r}")
    return value


@dataclass
class RunConfig:
    """Everything needed to replay a command.

    Args:
        command: One of build, decode, mc, verify, gen-seed
        seed_a: Path of the first seed matrix
        seed_b: Path of the second seed matrix
        families: Built-in family specs such as ``toric:6``
        p_list: Noise rates for Monte Carlo runs
        trials: Trials per noise rate
        workers: Worker processes for Monte Carlo runs
        seed: Master RNG seed
        out: Output path (summary JSON, CSV or matrix file)
        species: "z" or "x"
        t_max: Largest weight for exhaustive sweeps
        error: Path of an error vector for ``decode``
        syndrome: Path of a syndrome vector for ``decode``
        kind: Seed kind for ``gen-seed``: repetition, hamming or random
        length: Repetition code length
        closed: Cyclic repetition code
        wc: Column weight of random checks
        wr: Row weight of random checks
        n: Column count of random checks
        fmt: Matrix file format written by ``gen-seed``: dense or alist
        verbose: Debug logging
    """
    command: str
    seed_a: Optional[str] = None
    seed_b: Optional[str] = None
    families: List[str] = field(default_factory=list)
    p_list: List[float] = field(default_factory=list)
    trials: int = 1000
    workers: int = 1
    seed: int = 0
    out: Optional[str] = None
    species: str = "z"
    t_max: Optional[int] = None
    error: Optional[str] = None
    syndrome: Optional[str] = None
    kind: str = "repetition"
    length: int = 3
    closed: bool = False
    wc: int = 3
    wr: int = 4
    n: int = 16
    fmt: str = "dense"
    verbose: bool = False

    def __post_init__(self):
        """Validate numeric settings.

        Raises:
            ValueError: On nonpositive trials/workers, bad species or probabilities
        """
        if self.trials < 1:
            raise ValueError("Trials must be at least 1")
        if self.workers < 1:
            raise ValueError("Workers must be at least 1")
        if self.species not in ("z", "x"):
            raise ValueError(f"Species must be 'z' or 'x', got {self.species!r}")
        if any(not 0.0 <= p <= 1.0 for p in self.p_list):
            raise ValueError("Every noise rate must lie within [0, 1]")
        if self.t_max is not None and self.t_max < 0:
            raise ValueError("t-max cannot be negative")

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunConfig":
        """Rebuild from :meth:`to_dict` output; unknown keys are rejected.

        Raises:
            ValueError: On unknown keys
        """
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"Unknown config keys: {', '.join(sorted(unknown))}")
        values = dict(data)
        for key in ("families", "p_list"):
            if key in values:
                values[key] = list(values[key])
        return cls(**values)

    @classmethod
    def from_namespace(cls, namespace) -> "RunConfig":
        """Build from a parsed argparse namespace."""
        known = {f.name for f in fields(cls)}
        values = {k: v for k, v in vars(namespace).items() if k in known and v is not None}
        return cls.from_dict(values)
