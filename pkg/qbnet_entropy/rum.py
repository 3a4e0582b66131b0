"""Roots-of-unity model.

Party j of n carries the root a_j = exp(2πi(j−1)/n), and a subset J gets the
toy entropy S(J) = |Σ_{j∈J} a_j|. Since the roots sum to zero, S(J) = S(Jᶜ),
and the triangle inequality for complex numbers gives the analogues of
Araki-Lieb and subadditivity. Conditional values S(K|J) = S(J∪K) − S(J) can
be negative.

Subsets are bitmasks: bit j−1 set means party j is in the subset.
"""

import logging
from collections.abc import Iterable
from dataclasses import dataclass, replace

import numpy as np

from qbnet_entropy.errors import RumError
from qbnet_entropy.types import RealArray
from qbnet_entropy.verdicts import CheckVerdict, at_most, equal, strictly_below

logger = logging.getLogger(__name__)

MAX_PARTIES = 16
"""Largest n for exhaustive subset enumeration."""

RUM_TOL = 1e-12
"""Tolerance of every roots-of-unity verdict."""


@dataclass(frozen=True)
class RumSystem:
    """n parties on the unit circle."""

    n: int

    def __post_init__(self) -> None:
        """Check the party count.

        Raises:
            RumError: If n < 1.
        """
        if self.n < 1:
            msg = f"party count must be >= 1, got {self.n}"
            raise RumError(msg)

    @property
    def roots(self) -> np.ndarray:
        """a_j for j = 1..n."""
        return np.exp(2j * np.pi * np.arange(self.n) / self.n)

    @property
    def full_mask(self) -> int:
        """Bitmask of all parties."""
        return (1 << self.n) - 1

    def mask(self, j_set: Iterable[int]) -> int:
        """Bitmask of a 1-based party set.

        Raises:
            RumError: If the set is empty or a party is out of range.
        """
        parties = set(j_set)
        if not parties:
            msg = "party set must be non-empty"
            raise RumError(msg)
        outside = sorted(j for j in parties if not 1 <= j <= self.n)
        if outside:
            msg = f"parties {outside} outside 1..{self.n}"
            raise RumError(msg)
        return sum(1 << (j - 1) for j in parties)


def mask_parties(mask: int) -> list[int]:
    """1-based parties of a bitmask."""
    return [bit + 1 for bit in range(mask.bit_length()) if mask >> bit & 1]


def rum_entropy(sys: RumSystem, j_set: Iterable[int]) -> float:
    """S(J) = |Σ_{j∈J} exp(2πi(j−1)/n)|."""
    parties = np.array(mask_parties(sys.mask(j_set))) - 1
    return float(abs(sys.roots[parties].sum()))


def rum_subset_table(sys: RumSystem) -> RealArray:
    """S for every bitmask 0..2ⁿ−1 (S(∅) = 0).

    Raises:
        RumError: If n exceeds `MAX_PARTIES`.
    """
    if sys.n > MAX_PARTIES:
        msg = f"n = {sys.n} is above the exhaustive limit of {MAX_PARTIES}"
        raise RumError(msg)
    masks = np.arange(1 << sys.n)
    bits = (masks[:, None] >> np.arange(sys.n)) & 1
    return np.abs(bits @ sys.roots)


def _subsets_of(mask: int) -> np.ndarray:
    positions = np.array([bit for bit in range(mask.bit_length()) if mask >> bit & 1])
    if positions.size == 0:
        return np.zeros(1, dtype=np.int64)
    counter = np.arange(1 << positions.size)
    bits = (counter[:, None] >> np.arange(positions.size)) & 1
    return bits @ (1 << positions)


def _family(
    check_id: str,
    lhs: RealArray,
    rhs: RealArray,
    *,
    two_sided: bool,
    label: str,
) -> CheckVerdict:
    margins = -np.abs(rhs - lhs) if two_sided else rhs - lhs
    worst = int(np.argmin(margins))
    build = equal if two_sided else at_most
    verdict = build(check_id, float(lhs[worst]), float(rhs[worst]), label=label, tolerance=RUM_TOL)
    return replace(verdict, instances=int(lhs.size))


def rum_check_suite(sys: RumSystem) -> list[CheckVerdict]:
    """Exhaustive analogue suite.

    Returns verdicts, each aggregated over its whole family with an instance
    count: complement symmetry over every non-empty proper J; S(all) = 0
    (n ≥ 2); |S(J) − S(K)| ≤ S(J∪K) and S(J∪K) ≤ S(J) + S(K) over every
    unordered pair of disjoint non-empty J, K; and a witness of a negative
    conditional value S(K|J) < 0 (n ≥ 2).

    Raises:
        RumError: If n exceeds `MAX_PARTIES`.
    """
    table = rum_subset_table(sys)
    full = sys.full_mask
    proper = np.arange(1, full)
    verdicts: list[CheckVerdict] = []

    if proper.size:
        verdicts.append(
            _family(
                "rum_complement",
                table[proper],
                table[full ^ proper],
                two_sided=True,
                label="S(J) = S(J^c)",
            ),
        )
    if sys.n >= 2:  # noqa: PLR2004
        verdicts.append(
            equal("rum_full_set", float(table[full]), 0.0, label="S(all) = 0", tolerance=RUM_TOL),
        )

    s_j: list[RealArray] = []
    s_k: list[RealArray] = []
    s_jk: list[RealArray] = []
    pair_j: list[RealArray] = []
    pair_k: list[RealArray] = []
    for j in range(1, full + 1):
        ks = _subsets_of(full ^ j)
        ks = ks[ks > j]
        if ks.size:
            s_j.append(np.full(ks.size, table[j]))
            s_k.append(table[ks])
            s_jk.append(table[j | ks])
            pair_j.append(np.full(ks.size, j))
            pair_k.append(ks)

    if s_j:
        sj, sk, sjk = np.concatenate(s_j), np.concatenate(s_k), np.concatenate(s_jk)
        verdicts.append(
            _family(
                "rum_araki_lieb",
                np.abs(sj - sk),
                sjk,
                two_sided=False,
                label="|S(J) - S(K)| <= S(J u K)",
            ),
        )
        verdicts.append(
            _family(
                "rum_subadditivity",
                sjk,
                sj + sk,
                two_sided=False,
                label="S(J u K) <= S(J) + S(K)",
            ),
        )
        conditional = np.minimum(sjk - sj, sjk - sk)
        witness = int(np.argmin(conditional))
        j_mask = int(np.concatenate(pair_j)[witness])
        k_mask = int(np.concatenate(pair_k)[witness])
        if sjk[witness] - sj[witness] > sjk[witness] - sk[witness]:
            j_mask, k_mask = k_mask, j_mask
        verdicts.append(
            strictly_below(
                "rum_negative_conditional",
                float(conditional[witness]),
                0.0,
                gap=RUM_TOL,
                label=f"S({mask_parties(k_mask)}|{mask_parties(j_mask)}) < 0",
            ),
        )

    logger.info(
        "roots-of-unity suite n=%d: %d/%d families hold",
        sys.n,
        sum(v.holds for v in verdicts),
        len(verdicts),
    )
    return verdicts
