"""Built-in code families, addressed by short specs such as ``toric:6``.

* ``planar:L``          C(δ, δ) with δ the open length-L repetition check: [[L²+(L-1)², 1, L, L]]
* ``toric:L``           C(δ, δ) with δ the closed length-L repetition check: [[2L², 2, L, L]]
* ``hamming65``         C(δ, δ) with δ the degenerate 4 x 7 Hamming check: [[65, 17, 3, 3]]
* ``random34:n:seed``   C(δ, δ) with δ a random full-rank (3, 4)-regular check of n columns
"""

import logging
from dataclasses import dataclass
from typing import Tuple

from ..codes.classical import build_seed, hamming_check, random_regular_check, repetition_check
from ..codes.hgp import HgpCode, build_hgp
from ..models.binmatrix import BinMatrix

logger = logging.getLogger(__name__)

FAMILY_NAMES = ("planar", "toric", "hamming65", "random34")


@dataclass(frozen=True)
class FamilySpec:
    """A parsed family spec.

    Args:
        name: Family name
        params: Integer parameters in spec order
    """
    name: str
    params: Tuple[int, ...] = ()

    @property
    def code_id(self) -> str:
        return ":".join([self.name] + [str(p) for p in self.params])


def parse_family(spec: str) -> FamilySpec:
    """Parse ``name[:param...]``.

    Raises:
        ValueError: On an unknown family, missing or non-integer parameters
    """
    name, *raw = spec.strip().split(":")
    arity = {"planar": 1, "toric": 1, "hamming65": 0, "random34": 2}
    if name not in arity:
        raise ValueError(f"Unknown code family {name!r}; choose from {', '.join(FAMILY_NAMES)}")
    if len(raw) != arity[name]:
        raise ValueError(f"Family {name} takes {arity[name]} parameter(s), got {len(raw)} in {spec!r}")
    try:
        params = tuple(int(p) for p in raw)
    except ValueError:
        raise ValueError(f"Family parameters must be integers: {spec!r}") from None
    if name in ("planar", "toric") and params[0] < 2:
        raise ValueError(f"{name} needs L >= 2")
    if name == "random34" and (params[0] < 4 or params[0] % 4):
        raise ValueError("random34 needs a column count divisible by 4")
    return FamilySpec(name, params)


def family_seed_matrix(family: FamilySpec) -> BinMatrix:
    """The seed check δ used on both sides of the product."""
    if family.name == "planar":
        return repetition_check(family.params[0], closed=False)
    if family.name == "toric":
        return repetition_check(family.params[0], closed=True)
    if family.name == "hamming65":
        return hamming_check(degenerate=True)
    n, seed = family.params
    return random_regular_check(3, 4, 3 * n // 4, n, seed)


def build_family(spec: str, compute_distance: bool = True) -> HgpCode:
    """Build the code named by ``spec``.

    Raises:
        ValueError: On a malformed spec
        BudgetExceededError: If a seed distance cannot be computed exactly
    """
    family = parse_family(spec)
    seed = build_seed(family_seed_matrix(family), compute_distance=compute_distance)
    code = build_hgp(seed, seed, label=family.code_id)
    logger.info("family %s -> %s", family.code_id, code.parameters())
    return code
