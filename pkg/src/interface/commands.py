"""Command controller behind the command line."""

import json
import logging
from pathlib import Path
from typing import Dict

import numpy as np

from ..codes.classical import build_seed, hamming_check, random_regular_check, repetition_check
from ..codes.hgp import HgpCode, build_hgp, code_summary, flatten, syndrome_x, syndrome_z
from ..codes.oracles import build_decoder_suite
from ..decoding.reshape import decode_syndrome
from ..models.binmatrix import BinMatrix
from ..models.errors import BudgetExceededError
from ..models.operator import Species
from ..models.run_config import RunConfig
from ..models.seed_code import SeedCode
from ..simulation import invariants
from ..simulation.sim import (
    adversarial_sweep,
    append_results_csv,
    compare_pseudo_thresholds,
    decode_error,
    monte_carlo,
    pseudo_threshold,
    pseudo_threshold_interval,
    write_manifest,
)
from ..utils.families import build_family
from ..utils.matrix_io import dense_text, read_matrix, read_vector, write_matrix
from .display import ResultDisplay

logger = logging.getLogger(__name__)

DEFAULT_VERIFY_FAMILY = "planar:3"


def _seed_with_distance(H: BinMatrix) -> SeedCode:
    try:
        return build_seed(H, compute_distance=True)
    except BudgetExceededError as e:
        logger.warning("%s; continuing without seed distances", e)
        return build_seed(H, compute_distance=False)


class CommandController:
    """Runs one command described by a :class:`RunConfig`.

    Library errors propagate to the caller, which maps them to exit codes.

    Args:
        config: Parsed run configuration
        display: Output renderer
    """

    def __init__(self, config: RunConfig, display: ResultDisplay = None):
        self.config = config
        self.display = display or ResultDisplay()
        self.species = Species(config.species)

    def run(self) -> int:
        """Dispatch to the handler of ``config.command``.

        Returns:
            Process exit code

        Raises:
            ValueError: On an unknown command
        """
        handlers = {
            "build": self.cmd_build,
            "decode": self.cmd_decode,
            "mc": self.cmd_mc,
            "verify": self.cmd_verify,
            "gen-seed": self.cmd_gen_seed,
        }
        if self.config.command not in handlers:
            raise ValueError(f"Unknown command: {self.config.command}")
        return handlers[self.config.command]()

    def load_codes(self, default_family: str = None) -> Dict[str, HgpCode]:
        """Codes named by --seed-a/--seed-b or by --family, keyed by code id.

        Raises:
            ValueError: If neither source is given and there is no default
            MatrixFormatError: If a seed file cannot be parsed
        """
        if self.config.seed_a:
            path_a = Path(self.config.seed_a)
            path_b = Path(self.config.seed_b or self.config.seed_a)
            seed_a = _seed_with_distance(read_matrix(path_a))
            seed_b = seed_a if path_b == path_a else _seed_with_distance(read_matrix(path_b))
            code_id = f"{path_a.stem}x{path_b.stem}"
            return {code_id: build_hgp(seed_a, seed_b, label=code_id)}
        families = self.config.families or ([default_family] if default_family else [])
        if not families:
            raise ValueError("Provide --family or --seed-a/--seed-b")
        codes = {}
        for spec in families:
            code = build_family(spec)
            codes[code.label] = code
        return codes

    def _single_code(self) -> HgpCode:
        codes = self.load_codes()
        if len(codes) != 1:
            raise ValueError("This command works on exactly one code")
        return next(iter(codes.values()))

    def cmd_build(self) -> int:
        """Build each code, show its parameters and emit the summary JSON."""
        summaries = []
        for code in self.load_codes().values():
            summary = code_summary(code)
            self.display.show_code_summary(summary)
            summaries.append(summary)
        payload = summaries[0] if len(summaries) == 1 else summaries
        text = json.dumps(payload, indent=2, sort_keys=True)
        if self.config.out:
            Path(self.config.out).write_text(text + "\n", encoding="utf-8")
            self.display.show_success(f"Summary written to {self.config.out}")
        else:
            self.display.console.print_json(text)
        return 0

    def cmd_decode(self) -> int:
        """Decode an error file or a syndrome file and report the correction.

        Raises:
            ValueError: If neither --error nor --syndrome is given
            InconsistentSyndromeError: If the syndrome is not achievable
        """
        code = self._single_code()
        suite = build_decoder_suite(code.seed_a, code.seed_b)
        measure = syndrome_z if self.species is Species.Z else syndrome_x
        if self.config.error:
            e = read_vector(self.config.error, code.n)
            record = decode_error(code, suite, e, self.species)
            support = np.flatnonzero(record.correction).tolist()
            self.display.show_decode(record.result, support, valid=True, success=record.success)
            return 0
        if not self.config.syndrome:
            raise ValueError("decode needs --error or --syndrome")
        if self.species is Species.Z:
            shape = (code.seed_a.m, code.seed_b.n)
        else:
            shape = (code.seed_a.n, code.seed_b.m)
        S = BinMatrix.from_array(read_vector(self.config.syndrome, shape[0] * shape[1]).reshape(shape))
        result = decode_syndrome(code, suite, S, self.species)
        valid = measure(code, result.correction) == S
        support = np.flatnonzero(flatten(result.correction)).tolist()
        self.display.show_decode(result, support, valid=valid)
        return 0 if valid else 1

    def cmd_mc(self) -> int:
        """Run Monte Carlo estimates for every code and report pseudo-thresholds.

        Raises:
            ValueError: If no noise rates are given
        """
        if not self.config.p_list:
            raise ValueError("mc needs at least one noise rate (--p)")
        codes = self.load_codes()
        all_results = {}
        for code_id, code in codes.items():
            suite = build_decoder_suite(code.seed_a, code.seed_b)
            results = monte_carlo(code, suite, self.config.p_list, self.config.trials, self.config.seed,
                                  workers=self.config.workers, species=self.species, code_id=code_id)
            self.display.show_mc_results(results)
            all_results[code_id] = results
            if self.config.out:
                append_results_csv(Path(self.config.out), results)

        rows = []
        for code_id, results in all_results.items():
            low, high = pseudo_threshold_interval(results)
            rows.append((code_id, pseudo_threshold(results), low, high))
        decreasing = None
        if len(all_results) > 1:
            ordered = list(all_results.values())
            decreasing = compare_pseudo_thresholds(ordered[0], ordered[-1])
        self.display.show_thresholds(rows, decreasing)

        if self.config.out:
            manifest = Path(self.config.out).with_suffix(".manifest.json")
            write_manifest(manifest, self.config, codes)
            self.display.show_success(f"Results appended to {self.config.out}; manifest {manifest}")
        return 0

    def cmd_verify(self) -> int:
        """Run every property suite (and an optional sweep) on each code.

        Returns:
            0 when everything passes, 1 otherwise
        """
        passed = True
        for code_id, code in self.load_codes(default_family=DEFAULT_VERIFY_FAMILY).items():
            self.display.show_message(f"Verifying {code_id} {code.parameters()}", style="bold cyan")
            suite = build_decoder_suite(code.seed_a, code.seed_b)
            results = invariants.run_all(code, suite, seed=self.config.seed, samples=self.config.trials)
            self.display.show_properties(results)
            passed = passed and all(r.passed for r in results)
            if self.config.t_max is not None:
                report = adversarial_sweep(code, suite, self.config.t_max, self.species, code_id=code_id)
                self.display.show_sweep(report)
                passed = passed and report.calls_within_bound
                if code.d_z is not None and self.config.t_max <= (code.d_z - 1) // 2:
                    passed = passed and not report.failures
        if passed:
            self.display.show_success("All properties hold")
        else:
            self.display.show_error("Some properties failed")
        return 0 if passed else 1

    def cmd_gen_seed(self) -> int:
        """Generate a seed matrix (repetition, hamming or random) and write or print it.

        Raises:
            ValueError: On an unknown kind
        """
        kind = self.config.kind
        if kind == "repetition":
            H = repetition_check(self.config.length, self.config.closed)
        elif kind == "hamming":
            H = hamming_check(degenerate=True)
        elif kind == "random":
            if (self.config.n * self.config.wc) % self.config.wr:
                raise ValueError("n * wc must be divisible by wr")
            m = self.config.n * self.config.wc // self.config.wr
            H = random_regular_check(self.config.wc, self.config.wr, m, self.config.n, self.config.seed)
        else:
            raise ValueError(f"Unknown seed kind: {kind}")
        if self.config.out:
            write_matrix(H, self.config.out, self.config.fmt)
            self.display.show_success(f"{H.rows}x{H.cols} check written to {self.config.out}")
        else:
            self.display.console.print(dense_text(H), end="", markup=False, highlight=False)
        return 0
