"""Noise sampling, exhaustive sweeps and Monte Carlo failure-rate estimates.

Every trial draws from its own generator seeded with (seed, point index,
trial index), so the outcome of a run never depends on how the trials are
spread over worker processes.
"""

import csv
import hashlib
import json
import logging
import math
from dataclasses import dataclass
from itertools import combinations
from multiprocessing import get_context
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..codes.hgp import HgpCode, flatten, syndrome_x, syndrome_z, reshape
from ..codes.oracles import DecoderSuite
from ..decoding.reshape import call_bounds, decode_syndrome
from ..models.binmatrix import BinMatrix
from ..models.errors import BudgetExceededError
from ..models.noise import CSV_HEADER, McResult, NoiseModel, SweepReport
from ..models.operator import DecodeResult, Species
from ..models.run_config import RunConfig, enumeration_budget

logger = logging.getLogger(__name__)

CHUNK_TRIALS = 250
WILSON_Z = 1.96


def sample_error(n: int, model: NoiseModel, stream: np.random.Generator) -> np.ndarray:
    """Flip each of ``n`` qubits independently with probability ``model.p``."""
    return (stream.random(n) < model.p).astype(np.uint8)


def sample_shaped_error(code: HgpCode, max_rows: int, max_cols: int,
                        stream: np.random.Generator) -> np.ndarray:
    """Random Z-error whose left part sits on ``max_rows`` rows and right part on ``max_cols`` columns.

    Entries inside the chosen lines are uniform bits, so the weight is
    typically far above half the distance while the row-column weight stays
    bounded.

    Raises:
        ValueError: If more lines are requested than the grids have
    """
    (na, nb), (ma, mb) = code.left_shape, code.right_shape
    if not (0 <= max_rows <= na and 0 <= max_cols <= mb):
        raise ValueError(f"Cannot pick {max_rows} of {na} rows and {max_cols} of {mb} columns")
    left = np.zeros((na, nb), dtype=np.uint8)
    rows = stream.choice(na, size=max_rows, replace=False)
    left[rows] = stream.integers(0, 2, size=(max_rows, nb), dtype=np.uint8)
    right = np.zeros((ma, mb), dtype=np.uint8)
    cols = stream.choice(mb, size=max_cols, replace=False)
    right[:, cols] = stream.integers(0, 2, size=(ma, max_cols), dtype=np.uint8)
    return np.concatenate([left.reshape(-1), right.reshape(-1)])


@dataclass(frozen=True)
class TrialRecord:
    """One decoded error.

    Args:
        error: The injected flat error
        correction: The decoder's flat correction
        success: Whether error + correction is a stabilizer
        result: Full decoder output
    """
    error: np.ndarray
    correction: np.ndarray
    success: bool
    result: DecodeResult


def decode_error(code: HgpCode, suite: DecoderSuite, e: np.ndarray,
                 species: Species = Species.Z) -> TrialRecord:
    """Measure the syndrome of ``e``, decode it and judge the residual.

    A residual with trivial syndrome is a stabilizer exactly when it commutes
    with every logical operator of the other species.

    Raises:
        AssertionError: If the correction does not reproduce the syndrome
    """
    op = reshape(code, e, species)
    if species is Species.Z:
        S = syndrome_z(code, op)
        result = decode_syndrome(code, suite, S, species)
        assert syndrome_z(code, result.correction) == S, "ReShape returned an invalid Z correction"
        logicals = code.logical_x_matrix
    else:
        S = syndrome_x(code, op)
        result = decode_syndrome(code, suite, S, species)
        assert syndrome_x(code, result.correction) == S, "ReShape returned an invalid X correction"
        logicals = code.logical_z_matrix
    correction = flatten(result.correction)
    residual = correction ^ e
    success = not logicals.dot(residual).any()
    return TrialRecord(error=e, correction=correction, success=success, result=result)


def run_trial(code: HgpCode, suite: DecoderSuite, model: NoiseModel, stream: np.random.Generator) -> bool:
    """Sample one error from ``model``, decode it and report success."""
    e = sample_error(code.n, model, stream)
    return decode_error(code, suite, e, model.species).success


def trial_stream(seed: int, point_index: int, trial_index: int) -> np.random.Generator:
    """Generator for one trial, independent of every other trial."""
    return np.random.default_rng([seed, point_index, trial_index])


def _count_failures(code: HgpCode, suite: DecoderSuite, model: NoiseModel, seed: int,
                    point_index: int, start: int, stop: int) -> int:
    failures = 0
    for trial_index in range(start, stop):
        if not run_trial(code, suite, model, trial_stream(seed, point_index, trial_index)):
            failures += 1
    return failures


_WORKER_STATE: Dict[str, Any] = {}


def _init_worker(code: HgpCode, suite: DecoderSuite, seed: int) -> None:
    _WORKER_STATE.update(code=code, suite=suite, seed=seed)


def _run_chunk(task: Tuple[int, float, str, int, int]) -> Tuple[int, int]:
    point_index, p, species, start, stop = task
    model = NoiseModel(p, Species(species))
    failures = _count_failures(_WORKER_STATE["code"], _WORKER_STATE["suite"], model,
                               _WORKER_STATE["seed"], point_index, start, stop)
    return point_index, failures


def _warm_caches(code: HgpCode) -> None:
    """Compute cached solvers and logical matrices once before they are shipped to workers."""
    for target in (code, code.dual):
        target.x_solver
        target.logical_x_matrix
        target.logical_z_matrix


def wilson_interval(failures: int, trials: int, z: float = WILSON_Z) -> Tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    p_hat = failures / trials
    denom = 1 + z * z / trials
    center = (p_hat + z * z / (2 * trials)) / denom
    half = wilson_halfwidth(failures, trials, z)
    return max(0.0, center - half), min(1.0, center + half)


def wilson_halfwidth(failures: int, trials: int, z: float = WILSON_Z) -> float:
    """Half-width of the Wilson score interval."""
    p_hat = failures / trials
    spread = p_hat * (1 - p_hat) / trials + z * z / (4 * trials * trials)
    return z * math.sqrt(spread) / (1 + z * z / trials)


def monte_carlo(code: HgpCode, suite: DecoderSuite, p_list: Sequence[float], trials_per_point: int,
                seed: int, workers: int = 1, species: Species = Species.Z,
                code_id: Optional[str] = None) -> List[McResult]:
    """Estimate the logical failure rate at each noise rate.

    Args:
        code: The code under test
        suite: Its four oracles
        p_list: Physical flip probabilities
        trials_per_point: Trials at each probability
        seed: Master seed
        workers: Worker processes; results do not depend on this
        species: Error species
        code_id: Label written to the results (defaults to the code label)

    Returns:
        One result per entry of ``p_list``, in order

    Raises:
        ValueError: If trials_per_point < 1 or workers < 1
    """
    if trials_per_point < 1:
        raise ValueError("trials_per_point must be at least 1")
    if workers < 1:
        raise ValueError("workers must be at least 1")
    models = [NoiseModel(float(p), species) for p in p_list]
    code_id = code_id or code.label
    tasks = [
        (index, model.p, species.value, start, min(start + CHUNK_TRIALS, trials_per_point))
        for index, model in enumerate(models)
        for start in range(0, trials_per_point, CHUNK_TRIALS)
    ]
    failures = [0] * len(models)
    if workers == 1:
        for index, p, _, start, stop in tasks:
            failures[index] += _count_failures(code, suite, models[index], seed, index, start, stop)
    else:
        _warm_caches(code)
        ctx = get_context("spawn")
        with ctx.Pool(processes=workers, initializer=_init_worker, initargs=(code, suite, seed)) as pool:
            for index, count in pool.imap_unordered(_run_chunk, tasks):
                failures[index] += count

    results = []
    for model, count in zip(models, failures):
        result = McResult(
            code_id=code_id,
            p=model.p,
            trials=trials_per_point,
            failures=count,
            ci_halfwidth=wilson_halfwidth(count, trials_per_point),
            seed=seed,
        )
        logger.info("%s p=%g: %d/%d failures (p_fail=%.3g)", code_id, model.p, count,
                    trials_per_point, result.p_fail)
        results.append(result)
    return results


def sweep_size(n: int, t_max: int) -> int:
    """Number of errors of weight 1..t_max on n qubits."""
    return sum(math.comb(n, w) for w in range(1, t_max + 1))


def adversarial_sweep(code: HgpCode, suite: DecoderSuite, t_max: int, species: Species = Species.Z,
                      code_id: Optional[str] = None, budget: Optional[int] = None) -> SweepReport:
    """Decode every error of weight 1..t_max and collect the ones left uncorrected.

    Raises:
        BudgetExceededError: If the number of errors exceeds the enumeration budget
    """
    budget = enumeration_budget() if budget is None else budget
    total = sweep_size(code.n, t_max)
    if total > budget:
        raise BudgetExceededError(
            f"Sweep over {total} errors of weight <= {t_max} exceeds the budget of {budget}"
        )
    bound_left, bound_right = call_bounds(code, species)
    report = SweepReport(
        code_id=code_id or code.label,
        species=species,
        t_max=t_max,
        call_bound_left=bound_left,
        call_bound_right=bound_right,
    )
    suite.reset_calls()
    for weight in range(1, t_max + 1):
        for support in combinations(range(code.n), weight):
            e = np.zeros(code.n, dtype=np.uint8)
            e[list(support)] = 1
            record = decode_error(code, suite, e, species)
            report.total += 1
            report.max_calls_left = max(report.max_calls_left, record.result.oracle_calls_a)
            report.max_calls_right = max(report.max_calls_right, record.result.oracle_calls_bT)
            if not record.success:
                report.failures.append(support)
                logger.debug("sweep failure on support %s", support)
    report.oracle_calls = suite.calls()
    logger.info("%s sweep t<=%d: %d/%d corrected", report.code_id, t_max, report.corrected, report.total)
    return report


def _crossing(ps: np.ndarray, gaps: np.ndarray) -> Optional[float]:
    """First p where the gap p_fail - p turns nonnegative, interpolated in log p."""
    for i in range(len(ps)):
        if gaps[i] >= 0:
            if i == 0:
                return None
            t = gaps[i - 1] / (gaps[i - 1] - gaps[i])
            return float(np.exp(np.log(ps[i - 1]) + t * (np.log(ps[i]) - np.log(ps[i - 1]))))
    return None


def _curve(results: Sequence[McResult]) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    points = sorted((r for r in results if r.p > 0), key=lambda r: r.p)
    ps = np.array([r.p for r in points], dtype=float)
    fails = np.array([r.p_fail for r in points], dtype=float)
    ci = np.array([r.ci_halfwidth for r in points], dtype=float)
    return ps, fails, ci


def pseudo_threshold(results: Sequence[McResult]) -> Optional[float]:
    """Noise rate where the p_fail(p) curve crosses the line p_fail = p.

    Returns None when the curve never crosses inside the sampled range or
    already lies above the line at the smallest p.
    """
    ps, fails, _ = _curve(results)
    return _crossing(ps, fails - ps)


def pseudo_threshold_interval(results: Sequence[McResult]) -> Tuple[Optional[float], Optional[float]]:
    """Crossings of the upper and lower 95% bands: a (low, high) bracket for the pseudo-threshold."""
    ps, fails, ci = _curve(results)
    return _crossing(ps, fails + ci - ps), _crossing(ps, fails - ci - ps)


def compare_pseudo_thresholds(smaller: Sequence[McResult], larger: Sequence[McResult]) -> bool:
    """True when the larger code's pseudo-threshold is significantly below the smaller code's.

    The larger code's bracket must end below the start of the smaller code's bracket.
    """
    low_small, _ = pseudo_threshold_interval(smaller)
    _, high_large = pseudo_threshold_interval(larger)
    if low_small is None or high_large is None:
        return False
    return high_large < low_small


def append_results_csv(path: Path, results: Sequence[McResult]) -> None:
    """Append results to a CSV file, writing the header when the file is new or empty."""
    path = Path(path)
    write_header = not path.exists() or path.stat().st_size == 0
    with open(path, "a", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        if write_header:
            writer.writerow(CSV_HEADER)
        for result in results:
            writer.writerow(result.csv_row())


def matrix_digest(m: BinMatrix) -> str:
    """SHA-256 of a matrix's dense text form."""
    return hashlib.sha256(f"{m.rows} {m.cols}\n{m.to_text()}".encode("utf-8")).hexdigest()


def write_manifest(path: Path, config: RunConfig, codes: Dict[str, HgpCode]) -> None:
    """Record the config and seed-matrix hashes needed to replay a run."""
    manifest = {
        "config": config.to_dict(),
        "codes": {
            code_id: {
                "parameters": code.parameters(),
                "seed_a_sha256": matrix_digest(code.delta_a),
                "seed_b_sha256": matrix_digest(code.delta_b),
            }
            for code_id, code in codes.items()
        },
        "numpy": np.__version__,
    }
    Path(path).write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
