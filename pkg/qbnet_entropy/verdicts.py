"""Structured results of inequality and identity checks.

Margins are signed so that a verdict holds exactly when margin ≥ −tolerance:

- lhs ≤ rhs:   margin = rhs − lhs
- lhs = rhs:   margin = −|rhs − lhs|

Infinite values follow relative-entropy support semantics: anything is at
most +inf, and +inf is never at most a finite value.
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass, replace
from enum import StrEnum

from qbnet_entropy.config import PASS_TOL


class Relation(StrEnum):
    """The relation a verdict asserts between lhs and rhs."""

    AT_MOST = "<="
    EQUAL = "=="
    ALL = "all"


@dataclass(frozen=True)
class CheckVerdict:
    """Outcome of one check on one instance.

    Attributes:
        id: Inequality or identity identifier.
        lhs: Left-hand side in nats.
        rhs: Right-hand side in nats.
        margin: Signed slack; negative beyond the tolerance means violated.
        holds: Whether the relation holds within `tolerance`.
        relation: Relation between lhs and rhs.
        tolerance: Absolute tolerance used for `holds`.
        label: Human-readable statement, e.g. "S(a,b) <= S(a) + S(b)".
        seed: Seed of the random instance, if any.
        dims: Per-subsystem dimensions of the instance.
        parts: Sub-verdicts of a composite check.
        instances: Number of instances aggregated into this verdict.
        expect_holds: False for counterexamples, which must fail.
    """

    id: str
    lhs: float
    rhs: float
    margin: float
    holds: bool
    relation: Relation = Relation.AT_MOST
    tolerance: float = PASS_TOL
    label: str = ""
    seed: int | None = None
    dims: tuple[int, ...] = ()
    parts: tuple["CheckVerdict", ...] = ()
    instances: int = 1
    expect_holds: bool = True

    @property
    def as_expected(self) -> bool:
        """Whether the verdict came out the way the claim says it should."""
        return self.holds == self.expect_holds

    def with_instance(self, seed: int | None, dims: Sequence[int]) -> "CheckVerdict":
        """Copy stamped with the instance fingerprint."""
        return replace(self, seed=seed, dims=tuple(dims))

    def as_counterexample(self) -> "CheckVerdict":
        """Copy that is expected to fail."""
        return replace(self, expect_holds=False)


def _at_most_margin(lhs: float, rhs: float) -> float:
    if rhs == math.inf:
        return math.inf
    if lhs == math.inf or rhs == -math.inf:
        return -math.inf
    return rhs - lhs


def at_most(
    check_id: str,
    lhs: float,
    rhs: float,
    *,
    label: str = "",
    tolerance: float = PASS_TOL,
) -> CheckVerdict:
    """Verdict for lhs ≤ rhs."""
    margin = _at_most_margin(lhs, rhs)
    return CheckVerdict(
        check_id,
        float(lhs),
        float(rhs),
        float(margin),
        margin >= -tolerance,
        Relation.AT_MOST,
        tolerance,
        label,
    )


def equal(
    check_id: str,
    lhs: float,
    rhs: float,
    *,
    label: str = "",
    tolerance: float = PASS_TOL,
) -> CheckVerdict:
    """Verdict for lhs = rhs, two-sided."""
    margin = 0.0 if lhs == rhs else -abs(rhs - lhs)
    return CheckVerdict(
        check_id,
        float(lhs),
        float(rhs),
        float(margin),
        margin >= -tolerance,
        Relation.EQUAL,
        tolerance,
        label,
    )


def strictly_below(
    check_id: str,
    lhs: float,
    rhs: float,
    *,
    gap: float,
    label: str = "",
) -> CheckVerdict:
    """Verdict for lhs + gap ≤ rhs, used where a claim needs a strict separation."""
    margin = _at_most_margin(lhs + gap, rhs)
    return CheckVerdict(
        check_id,
        float(lhs),
        float(rhs),
        float(margin),
        margin >= 0.0,
        Relation.AT_MOST,
        0.0,
        label,
    )


def aggregate(verdicts: Sequence[CheckVerdict], *, label: str = "") -> CheckVerdict:
    """Fold verdicts of one family into the worst one, counting instances.

    Raises:
        ValueError: If `verdicts` is empty.
    """
    if not verdicts:
        msg = "aggregate needs at least one verdict"
        raise ValueError(msg)
    worst = min(verdicts, key=lambda v: v.margin)
    return replace(
        worst,
        holds=all(v.as_expected for v in verdicts),
        label=label or worst.label,
        instances=sum(v.instances for v in verdicts),
    )


def composite(check_id: str, parts: Sequence[CheckVerdict], *, label: str = "") -> CheckVerdict:
    """Verdict that holds when every part comes out as expected.

    lhs, rhs and margin are taken from the part with the smallest margin
    among the parts expected to hold.

    Raises:
        ValueError: If `parts` is empty.
    """
    if not parts:
        msg = f"composite verdict {check_id!r} needs at least one part"
        raise ValueError(msg)
    expected = [p for p in parts if p.expect_holds] or list(parts)
    worst = min(expected, key=lambda p: p.margin)
    return CheckVerdict(
        check_id,
        worst.lhs,
        worst.rhs,
        worst.margin,
        all(p.as_expected for p in parts),
        Relation.ALL,
        worst.tolerance,
        label or worst.label,
        parts=tuple(parts),
    )
