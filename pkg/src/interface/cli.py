"""Command-line argument parsing."""

import argparse
from typing import List

COMMANDS = ("build", "decode", "mc", "verify", "gen-seed")


def parse_p_list(text: str) -> List[float]:
    """Parse a comma-separated list of probabilities.

    Raises:
        argparse.ArgumentTypeError: On a non-numeric entry or one outside [0, 1]
    """
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of numbers: {text!r}") from None
    if not values or any(not 0.0 <= v <= 1.0 for v in values):
        raise argparse.ArgumentTypeError(f"probabilities must lie within [0, 1]: {text!r}")
    return values


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    """Parser for ``python -m src.main``."""
    parser = argparse.ArgumentParser(
        prog="reshape-hgp",
        description="Build hypergraph product codes and decode them with ReShape.",
        epilog="Exit codes: 0 ok, 1 verification failure, 2 input error, "
               "3 inconsistent syndrome, 4 budget refusal. RESHAPE_BUDGET overrides the enumeration budget.",
    )
    parser.add_argument("command", choices=COMMANDS, help="what to do")

    codes = parser.add_argument_group("code selection")
    codes.add_argument("--seed-a", metavar="PATH", help="first seed matrix (dense text or .alist)")
    codes.add_argument("--seed-b", metavar="PATH", help="second seed matrix (defaults to --seed-a)")
    codes.add_argument("--family", dest="families", action="append", metavar="SPEC",
                       help="built-in code: planar:L, toric:L, hamming65 or random34:n:seed (repeatable)")

    runs = parser.add_argument_group("decoding and experiments")
    runs.add_argument("--species", choices=("z", "x"), default="z", help="error species (default z)")
    runs.add_argument("--error", metavar="PATH", help="error vector to decode (decode)")
    runs.add_argument("--syndrome", metavar="PATH", help="syndrome vector to decode (decode)")
    runs.add_argument("--p", dest="p_list", type=parse_p_list, metavar="LIST",
                      help="comma-separated noise rates (mc)")
    runs.add_argument("--trials", type=_positive, default=1000,
                      help="trials per noise rate (mc) or random cases per property (verify)")
    runs.add_argument("--workers", type=_positive, default=1, help="worker processes (mc)")
    runs.add_argument("--seed", type=_seed, default=0, help="master RNG seed")
    runs.add_argument("--t-max", dest="t_max", type=int, metavar="T",
                      help="also sweep every error of weight <= T (verify)")
    runs.add_argument("--out", metavar="PATH", help="summary JSON (build), CSV (mc) or matrix file (gen-seed)")

    seeds = parser.add_argument_group("seed generation (gen-seed)")
    seeds.add_argument("--kind", choices=("repetition", "hamming", "random"), default="repetition",
                       help="seed family to generate")
    seeds.add_argument("--length", type=int, default=3, help="repetition code length")
    seeds.add_argument("--closed", action="store_true", help="cyclic repetition code")
    seeds.add_argument("--wc", type=_positive, default=3, help="column weight of random checks")
    seeds.add_argument("--wr", type=_positive, default=4, help="row weight of random checks")
    seeds.add_argument("--n", type=_positive, default=16, help="column count of random checks")
    seeds.add_argument("--format", dest="fmt", choices=("dense", "alist"), default="dense",
                       help="file format written by gen-seed")

    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    return parser
