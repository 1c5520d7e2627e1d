"""Executable property suites.

Each property returns a :class:`PropertyResult`; ``verify`` runs them all and
the test suite asserts them, so both exercise the same checks.
"""

import logging
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, List, Optional

import numpy as np

from ..algebra import f2
from ..codes import hgp
from ..codes.classical import build_seed, hamming_check, random_regular_check, repetition_check
from ..codes.oracles import CosetLeaderDecoder, DecoderSuite, KernelSearchDecoder, MwDecoder, RepetitionDecoder, oracle_for
from ..decoding import reshape as rs
from ..models.binmatrix import BinMatrix
from ..models.operator import OpPair, Species
from ..models.noise import NoiseModel
from ..models.seed_code import INFINITE_DISTANCE, SeedCode
from .sim import adversarial_sweep, decode_error, monte_carlo, sample_error, sweep_size

logger = logging.getLogger(__name__)

MAX_ENUMERATED_NORMALIZER_DIM = 16
MAX_EXHAUSTIVE_ORACLE_LENGTH = 12


@dataclass(frozen=True)
class PropertyResult:
    """Outcome of one property check.

    Args:
        module: Module whose contract is checked
        name: Property name
        passed: Whether every case held
        checked: Number of cases examined
        counterexample: Description of the first failing case
    """
    module: str
    name: str
    passed: bool
    checked: int
    counterexample: Optional[str] = None


class _Failure(Exception):
    pass


def _run(module: str, name: str, check: Callable[[], int]) -> PropertyResult:
    try:
        checked = check()
    except _Failure as failure:
        logger.warning("%s/%s failed: %s", module, name, failure)
        return PropertyResult(module, name, False, 0, str(failure))
    return PropertyResult(module, name, True, checked)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise _Failure(message)


def _random_matrix(rng: np.random.Generator, rows: int, cols: int) -> BinMatrix:
    return BinMatrix.from_array(rng.integers(0, 2, size=(rows, cols)))


def naive_rank(a: np.ndarray) -> int:
    """Entry-wise Gaussian elimination, used as a reference for the packed routines."""
    work = np.array(a, dtype=np.uint8) & 1
    rank = 0
    for col in range(work.shape[1]):
        pivot_rows = np.flatnonzero(work[rank:, col]) + rank
        if pivot_rows.size == 0:
            continue
        p = pivot_rows[0]
        work[[rank, p]] = work[[p, rank]]
        for r in range(work.shape[0]):
            if r != rank and work[r, col]:
                work[r] ^= work[rank]
        rank += 1
        if rank == work.shape[0]:
            break
    return rank


def residual_is_stabilizer_naive(code: hgp.HgpCode, residual: np.ndarray) -> bool:
    """Rank test: appending the residual to H_Z does not raise the rank."""
    stacked = np.vstack([code.H_Z.to_array(), residual.reshape(1, -1)])
    return naive_rank(stacked) == naive_rank(code.H_Z.to_array())


# ---- f2 ---------------------------------------------------------------------


def f2_properties(rng: np.random.Generator, samples: int = 200) -> List[PropertyResult]:
    """Rank-nullity, split, solve and packed-vs-naive agreement on random matrices."""

    def rank_nullity() -> int:
        for _ in range(samples):
            a = _random_matrix(rng, int(rng.integers(1, 12)), int(rng.integers(1, 12)))
            basis = f2.kernel_basis(a)
            _require(f2.rank(a) + basis.rows == a.cols, f"rank + nullity != cols for\n{a.to_text()}")
            _require((a @ basis.T).is_zero() if basis.rows else True, "kernel basis not annihilated")
        return samples

    def split_parts() -> int:
        for _ in range(samples):
            a = _random_matrix(rng, int(rng.integers(1, 10)), int(rng.integers(1, 10)))
            dec = f2.decompose(a)
            v = rng.integers(0, 2, size=a.rows).astype(np.uint8)
            m_part, mu_part = f2.split(v, dec)
            _require(np.array_equal(m_part ^ mu_part, v), "parts do not sum to v")
            _require(f2.in_row_span(a.T, m_part), f"image part {m_part} not in im A")
            outside = np.ones(a.rows, dtype=bool)
            outside[list(dec.complement_indices)] = False
            _require(not mu_part[outside].any(), f"complement part {mu_part} leaves the unit vectors")
            _require(len(dec.complement_indices) == a.rows - dec.rank, "complement has the wrong size")
        return samples

    def solve_consistency() -> int:
        for _ in range(samples):
            a = _random_matrix(rng, int(rng.integers(1, 10)), int(rng.integers(1, 10)))
            b = rng.integers(0, 2, size=a.rows).astype(np.uint8)
            x = f2.solve(a, b)
            if x is None:
                _require(naive_rank(np.vstack([a.to_array().T, b])) > naive_rank(a.to_array()),
                         "solve reported no solution for b in im A")
            else:
                _require(np.array_equal(a.dot(x), b), "solve returned x with A x != b")
        return samples

    def packed_matches_naive() -> int:
        for _ in range(samples):
            rows, inner, cols = (int(v) for v in rng.integers(1, [65, 81, 81]))
            a = rng.integers(0, 2, size=(rows, inner))
            b = rng.integers(0, 2, size=(inner, cols))
            v = rng.integers(0, 2, size=inner)
            packed_a = BinMatrix.from_array(a)
            _require((packed_a @ BinMatrix.from_array(b)) == BinMatrix.from_array((a @ b) % 2), "matmul differs")
            _require(np.array_equal(packed_a.dot(v), (a @ v) % 2), "matrix-vector product differs")
            u = rng.integers(0, 2, size=rows)
            _require(np.array_equal(packed_a.left_dot(u), (u @ a) % 2), "vector-matrix product differs")
            _require(np.array_equal(packed_a.T.to_array(), a.T), "transpose differs")
            _require(f2.rank(packed_a) == naive_rank(a), "rank differs")
        return samples

    return [
        _run("f2", "rank_nullity", rank_nullity),
        _run("f2", "split_parts", split_parts),
        _run("f2", "solve_consistency", solve_consistency),
        _run("f2", "packed_matches_naive", packed_matches_naive),
    ]


# ---- classical --------------------------------------------------------------


def reference_seeds() -> List[SeedCode]:
    """Small seed codes (and transposes) with every kernel enumerable."""
    checks = [
        repetition_check(3),
        repetition_check(4, closed=True),
        repetition_check(5, closed=True),
        hamming_check(degenerate=False),
        hamming_check(),
        random_regular_check(3, 4, 9, 12, seed=1),
    ]
    seeds = [build_seed(h) for h in checks]
    return seeds + [s.transpose() for s in seeds]


def _oracles(seed: SeedCode) -> List[MwDecoder]:
    decoders: List[MwDecoder] = [CosetLeaderDecoder(seed), KernelSearchDecoder(seed)]
    if RepetitionDecoder.accepts(seed):
        decoders.append(RepetitionDecoder(seed))
    return decoders


def _received_words(n: int, rng: np.random.Generator, samples: int) -> np.ndarray:
    """Every word of length n when n is small enough, otherwise ``samples`` random ones."""
    if n <= MAX_EXHAUSTIVE_ORACLE_LENGTH:
        index = np.arange(1 << n, dtype=np.int64)
        return ((index[:, None] >> np.arange(n, dtype=np.int64)) & 1).astype(np.uint8)
    return rng.integers(0, 2, size=(samples, n)).astype(np.uint8)


def classical_properties(rng: np.random.Generator, samples: int = 500, max_repetition: int = 12) -> List[PropertyResult]:
    """Oracle exactness, half-distance decoding, agreement of realisations, call counting."""
    seeds = reference_seeds()

    def exactness() -> int:
        checked = 0
        for seed in seeds:
            codewords = f2.span_elements(seed.kernel)
            words = _received_words(seed.n, rng, samples)
            optimum = (words[:, None, :] ^ codewords[None, :, :]).sum(axis=2).min(axis=1)
            for decoder in _oracles(seed):
                for y, best in zip(words, optimum):
                    k = decoder.nearest_codeword(y)
                    _require(not seed.H.dot(k).any(), f"{type(decoder).__name__} returned a non-codeword")
                    _require(int((k ^ y).sum()) == int(best),
                             f"{type(decoder).__name__} on {seed.describe()}: |k+y|={int((k ^ y).sum())}, optimum {best}")
                    checked += 1
        return checked

    def half_distance() -> int:
        checked = 0
        for seed in seeds:
            if seed.distance == INFINITE_DISTANCE:
                continue
            t = (int(seed.distance) - 1) // 2
            codewords = f2.span_elements(seed.kernel)
            decoder = oracle_for(seed)
            c = codewords[int(rng.integers(0, len(codewords)))]
            for weight in range(t + 1):
                for support in combinations(range(seed.n), weight):
                    y = c.copy()
                    y[list(support)] ^= 1
                    _require(np.array_equal(decoder.nearest_codeword(y), c),
                             f"{seed.describe()}: codeword {c} with flips {support} not recovered")
                    checked += 1
        return checked

    def repetition_matches_table() -> int:
        checked = 0
        for length in range(2, max_repetition + 1):
            for closed in (False, True):
                seed = build_seed(repetition_check(length, closed), compute_distance=False)
                table, analytic = CosetLeaderDecoder(seed), RepetitionDecoder(seed)
                for index in range(1 << length):
                    y = ((index >> np.arange(length)) & 1).astype(np.uint8)
                    _require(np.array_equal(table.nearest_codeword(y), analytic.nearest_codeword(y)),
                             f"repetition L={length} closed={closed} disagrees on {y}")
                    checked += 1
        return checked

    def call_counter() -> int:
        decoder = oracle_for(seeds[0])
        for expected in range(1, 11):
            decoder.nearest_codeword(rng.integers(0, 2, size=seeds[0].n))
            _require(decoder.calls == expected, f"counter {decoder.calls} after {expected} calls")
        return 10

    return [
        _run("classical", "oracle_exactness", exactness),
        _run("classical", "half_distance_decoding", half_distance),
        _run("classical", "repetition_matches_table", repetition_matches_table),
        _run("classical", "call_counter", call_counter),
    ]


# ---- hgp --------------------------------------------------------------------


def _random_kernel_element(code: hgp.HgpCode, basis: BinMatrix, rng: np.random.Generator) -> OpPair:
    return hgp.reshape(code, basis.left_dot(rng.integers(0, 2, size=basis.rows)))


def hgp_properties(code: hgp.HgpCode, rng: np.random.Generator, samples: int = 200) -> List[PropertyResult]:
    """CSS commutation, layout, stabilizers, logical bases, distance and the row-count bounds."""
    normalizer = hgp.normalizer_basis_z(code)

    def css_commutation() -> int:
        checked = 0
        for _ in range(20):
            da = _random_matrix(rng, int(rng.integers(1, 7)), int(rng.integers(1, 9)))
            db = _random_matrix(rng, int(rng.integers(1, 7)), int(rng.integers(1, 9)))
            product = hgp.build_hgp(build_seed(da, False), build_seed(db, False))
            _require((product.H_X @ product.H_Z.T).is_zero(), "H_X H_Z^T != 0")
            checked += 1
        _require((code.H_X @ code.H_Z.T).is_zero(), f"H_X H_Z^T != 0 for {code.label}")
        return checked + 1

    def layout() -> int:
        for index in range(code.n):
            e = np.zeros(code.n, dtype=np.uint8)
            e[index] = 1
            op = hgp.reshape(code, e)
            _require(np.array_equal(hgp.flatten(op), e), f"round trip broken at {index}")
            expected = code.H_X.dot(e).reshape(code.seed_a.m, code.seed_b.n)
            _require(np.array_equal(hgp.syndrome_z(code, op).to_array(), expected),
                     f"matrix syndrome differs from H_X at qubit {index}")
        return code.n

    def stabilizer_rows() -> int:
        checked = 0
        for j_a in range(code.seed_a.n):
            for i_b in range(code.seed_b.m):
                stab = hgp.z_stabilizer(code, j_a, i_b)
                row = code.H_Z.row(j_a * code.seed_b.m + i_b)
                _require(np.array_equal(hgp.flatten(stab), row), f"z_stabilizer({j_a}, {i_b}) != H_Z row")
                _require(hgp.syndrome_z(code, stab).is_zero(), f"z_stabilizer({j_a}, {i_b}) has a syndrome")
                checked += 1
        for i_a in range(code.seed_a.m):
            for j_b in range(code.seed_b.n):
                stab = hgp.x_stabilizer(code, i_a, j_b)
                row = code.H_X.row(i_a * code.seed_b.n + j_b)
                _require(np.array_equal(hgp.flatten(stab), row), f"x_stabilizer({i_a}, {j_b}) != H_X row")
                checked += 1
        return checked

    def logical_bases() -> int:
        for species, logicals, checks, stabilizers in (
            (Species.Z, hgp.logical_z_basis(code), code.H_X, code.H_Z),
            (Species.X, hgp.logical_x_basis(code), code.H_Z, code.H_X),
        ):
            _require(len(logicals) == code.k, f"{len(logicals)} {species.name}-logicals, expected k={code.k}")
            for op in logicals:
                _require(not checks.dot(hgp.flatten(op)).any(), f"{species.name}-logical has a syndrome")
            if logicals:
                stacked = BinMatrix.vstack([stabilizers, BinMatrix.from_rows([hgp.flatten(op) for op in logicals], code.n)])
                _require(f2.rank(stacked) == f2.rank(stabilizers) + code.k,
                         f"{species.name}-logicals are not homologically independent")
        return 2 * code.k

    def kernels_annihilate() -> int:
        ker_b = code.seed_b.kernel
        ker_at = code.seed_a.kernel_T
        for _ in range(samples):
            op = _random_kernel_element(code, normalizer, rng)
            for k in ker_b.to_array():
                _require(not code.delta_a.dot(op.left.dot(k)).any(), "δ_A L k != 0 for some k in ker δ_B")
            for kbar in ker_at.to_array():
                _require(not code.delta_b.left_dot(op.right.left_dot(kbar)).any(),
                         "k̄^T R δ_B != 0 for some k̄ in ker δ_A^T")
        return samples

    def _nontrivial_logicals():
        logical_x = code.logical_x_matrix.to_array().T.astype(np.int64)
        for chunk in f2.iter_span(normalizer):
            nontrivial = ((chunk.astype(np.int64) @ logical_x) & 1).any(axis=1)
            for e in chunk[nontrivial]:
                yield hgp.reshape(code, e)

    def row_count_bounds() -> int:
        if normalizer.rows > MAX_ENUMERATED_NORMALIZER_DIM or code.d_z is None:
            return 0
        d_a, d_bt = code.seed_a.distance, code.seed_b.distance_T
        checked = 0
        for op in _nontrivial_logicals():
            rows, cols = rs.wt_rc(op)
            _require(rows >= d_a or cols >= d_bt, f"logical with row-column weight {(rows, cols)}")
            rows_log, cols_log = rs.wt_rc_log(code, op)
            _require(rows_log >= d_a or cols_log >= d_bt,
                     f"logical with logical row-column weight {(rows_log, cols_log)}")
            checked += 1
        return checked

    def distance_formula() -> int:
        if normalizer.rows > MAX_ENUMERATED_NORMALIZER_DIM or code.d_z is None:
            return 0
        exhaustive = hgp.exhaustive_distance_z(code)
        _require(exhaustive == code.d_z, f"exhaustive d_z={exhaustive}, formula {code.d_z}")
        return 1

    return [
        _run("hgp", "css_commutation", css_commutation),
        _run("hgp", "layout_matches_checks", layout),
        _run("hgp", "stabilizer_rows", stabilizer_rows),
        _run("hgp", "logical_bases", logical_bases),
        _run("hgp", "kernels_annihilate_logicals", kernels_annihilate),
        _run("hgp", "logical_row_count_bounds", row_count_bounds),
        _run("hgp", "distance_formula", distance_formula),
    ]


# ---- reshape ----------------------------------------------------------------


def _random_op(code: hgp.HgpCode, rng: np.random.Generator) -> OpPair:
    return OpPair(_random_matrix(rng, *code.left_shape), _random_matrix(rng, *code.right_shape), Species.Z)


def _random_stabilizer(code: hgp.HgpCode, rng: np.random.Generator) -> OpPair:
    return hgp.reshape(code, code.H_Z.left_dot(rng.integers(0, 2, size=code.H_Z.rows)))


def reshape_properties(code: hgp.HgpCode, suite: DecoderSuite, rng: np.random.Generator,
                       samples: int = 1000) -> List[PropertyResult]:
    """Canonical forms, homology invariance, validity, adversarial correctness and call bounds."""
    image_rows_b = f2.RowSpace(code.delta_b)
    image_cols_a = f2.RowSpace(code.delta_a.T)
    outside_b = np.setdiff1d(np.arange(code.seed_b.n), code.seed_b.dec_imT.complement_indices)
    outside_a = np.setdiff1d(np.arange(code.seed_a.m), code.seed_a.dec_im.complement_indices)

    def canonical_form() -> int:
        for _ in range(samples):
            op = _random_op(code, rng)
            left = rs.canonical_left(code, op.left)
            right = rs.canonical_right(code, op.right)
            _require(left.reconstruct() == op.left and right.reconstruct() == op.right, "reconstruction broken")
            for row in left.free.to_array():
                _require(image_rows_b.contains(row), f"free row {row} not in im δ_B^T")
            _require(not left.logical.to_array()[:, outside_b].any(), "left logical part leaves the complement")
            for col in right.free.to_array().T:
                _require(image_cols_a.contains(col), f"free column {col} not in im δ_A")
            _require(not right.logical.to_array()[outside_a, :].any(), "right logical part leaves the complement")
        return samples

    def homology_invariance() -> int:
        for _ in range(samples):
            op = _random_op(code, rng)
            moved = op + _random_stabilizer(code, rng)
            _require(rs.wt_rc_log(code, moved) == rs.wt_rc_log(code, op), "wt_rc_log changed")
            _require(rs.row_log(code, moved.left) == rs.row_log(code, op.left), "row_log index set changed")
            _require(rs.col_log(code, moved.right) == rs.col_log(code, op.right), "col_log index set changed")
        return samples

    def validity() -> int:
        bound_left, bound_right = rs.call_bounds(code)
        for _ in range(samples):
            e = sample_error(code.n, NoiseModel(float(rng.uniform(0.0, 0.5))), rng)
            record = decode_error(code, suite, e)
            _require(record.result.oracle_calls_a <= bound_left and record.result.oracle_calls_bT <= bound_right,
                     "oracle call bound exceeded")
        return samples

    def adversarial() -> int:
        if code.d_z is None or code.d_z == INFINITE_DISTANCE:
            return 0
        t = (int(code.d_z) - 1) // 2
        if t == 0 or sweep_size(code.n, t) > 20000:
            return 0
        report = adversarial_sweep(code, suite, t)
        _require(not report.failures, f"uncorrected errors of weight <= {t}: {report.failures[:3]}")
        _require(report.calls_within_bound, "oracle call bound exceeded during sweep")
        return report.total

    def start_insensitivity() -> int:
        if code.d_z is None or code.d_z == INFINITE_DISTANCE or code.d_z < 3:
            return 0
        for _ in range(min(samples, 200)):
            index = int(rng.integers(0, code.n))
            e = np.zeros(code.n, dtype=np.uint8)
            e[index] = 1
            op = hgp.reshape(code, e)
            S = hgp.syndrome_z(code, op)
            start = op + _random_stabilizer(code, rng)
            result = rs.decode_z(code, suite.a, suite.b_t, S, start)
            _require(hgp.homology_equal_z(code, result.correction, op),
                     f"decoding from a shifted start failed for qubit {index}")
        return min(samples, 200)

    return [
        _run("reshape", "canonical_form", canonical_form),
        _run("reshape", "homology_invariance", homology_invariance),
        _run("reshape", "validity_and_call_bound", validity),
        _run("reshape", "adversarial_half_distance", adversarial),
        _run("reshape", "start_insensitivity", start_insensitivity),
    ]


# ---- sim --------------------------------------------------------------------


def sim_properties(code: hgp.HgpCode, suite: DecoderSuite, rng: np.random.Generator,
                   samples: int = 100) -> List[PropertyResult]:
    """Fast success check against a rank test, and run determinism."""

    def naive_success_check() -> int:
        for _ in range(samples):
            e = sample_error(code.n, NoiseModel(float(rng.uniform(0.0, 0.3))), rng)
            record = decode_error(code, suite, e)
            naive = residual_is_stabilizer_naive(code, record.correction ^ e)
            _require(record.success == naive, f"success check disagrees with rank test on {np.flatnonzero(e)}")
        return samples

    def determinism() -> int:
        seed = int(rng.integers(0, 2 ** 31))
        first = monte_carlo(code, suite, [0.02, 0.05], 50, seed)
        second = monte_carlo(code, suite, [0.02, 0.05], 50, seed)
        _require(first == second, "repeated Monte Carlo run differs")
        return 2

    return [
        _run("sim", "success_matches_rank_test", naive_success_check),
        _run("sim", "determinism", determinism),
    ]


def run_all(code: hgp.HgpCode, suite: DecoderSuite, seed: int = 0, samples: int = 200) -> List[PropertyResult]:
    """Every suite against ``code``; ``samples`` scales the randomized checks."""
    rng = np.random.default_rng(seed)
    results = []
    results += f2_properties(rng, samples)
    results += classical_properties(rng, max(1, samples // 2))
    results += hgp_properties(code, rng, samples)
    results += reshape_properties(code, suite, rng, samples)
    results += sim_properties(code, suite, rng, max(1, samples // 2))
    return results
