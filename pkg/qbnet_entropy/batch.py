"""Seeded batches of registered checks.

Trial k of a batch uses the seed `derive_seed(config.seed, k)`, whichever
thread runs it, so a batch is reproducible from its configuration alone and
its verdicts come back in (id, trial) order. Each trial runs in its own run
scope; an error raised by a trial carries the command, check id, seed and
trial index as an exception note.
"""

import logging
import math
from dataclasses import dataclass

from qbnet_entropy.config import RunConfig
from qbnet_entropy.context import run_scope
from qbnet_entropy.fields import RunContextField
from qbnet_entropy.inequalities import (
    InequalityId,
    RegistryEntry,
    counterexample_suite,
    get_entry,
    resolve_ids,
)
from qbnet_entropy.parallel import map_trials
from qbnet_entropy.randgen import derive_seed
from qbnet_entropy.verdicts import CheckVerdict

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BatchSummary:
    """Verdicts of one id over all trials.

    Attributes:
        id: Inequality id.
        description: Statement of the claim.
        dims: Instance dimensions used by every trial.
        verdicts: One verdict per trial, in trial order.
    """

    id: InequalityId
    description: str
    dims: tuple[int, ...]
    verdicts: tuple[CheckVerdict, ...]

    @property
    def trials(self) -> int:
        """Number of trials."""
        return len(self.verdicts)

    @property
    def passed(self) -> int:
        """Trials whose verdict came out as expected."""
        return sum(v.as_expected for v in self.verdicts)

    @property
    def min_margin(self) -> float:
        """Smallest margin over the trials."""
        return min((v.margin for v in self.verdicts), default=math.inf)

    @property
    def all_passed(self) -> bool:
        """Whether every trial passed."""
        return self.passed == self.trials


@dataclass(frozen=True)
class RunResult:
    """Everything a `check` run produced."""

    batches: tuple[BatchSummary, ...]
    counterexamples: tuple[CheckVerdict, ...]

    @property
    def passed(self) -> bool:
        """True inequalities all hold and every counterexample fails as expected."""
        return all(b.all_passed for b in self.batches) and all(
            v.as_expected for v in self.counterexamples
        )


def run_trial(
    entry: RegistryEntry,
    base_seed: int,
    trial: int,
    dims: tuple[int, ...],
) -> CheckVerdict:
    """Sample and check one instance.

    Args:
        entry: Registered check.
        base_seed: Seed of the batch.
        trial: Trial index.
        dims: Instance dimensions, one per subsystem the sampler reads.

    Returns:
        The verdict stamped with the trial seed and dims.
    """
    seed = derive_seed(base_seed, trial)
    with run_scope({RunContextField.TRIAL: trial, RunContextField.SEED: seed}):
        verdict = entry.check(entry.sample(seed, dims)).with_instance(seed, dims)
        if verdict.as_expected:
            logger.debug("%s trial %d: margin %.3g", entry.id, trial, verdict.margin)
        else:
            logger.warning(
                "%s trial %d failed: %s (margin %.3g)",
                entry.id,
                trial,
                verdict.label,
                verdict.margin,
            )
    return verdict


def run_batch(check_id: InequalityId | str, config: RunConfig) -> BatchSummary:
    """Run `config.trials` seeded trials of one check.

    Raises:
        ConfigError: If the id is not registered or the config is invalid.
    """
    config.validate()
    entry = get_entry(check_id)
    dims = config.dims_for(entry.arity)
    with run_scope({RunContextField.CHECK_ID: entry.id.value}):
        verdicts = map_trials(
            lambda trial: run_trial(entry, config.seed, trial, dims),
            config.trials,
            workers=config.workers,
        )
    summary = BatchSummary(entry.id, entry.description, dims, tuple(verdicts))
    logger.info(
        "%s: %d/%d passed, min margin %.3g",
        summary.id,
        summary.passed,
        summary.trials,
        summary.min_margin,
    )
    return summary


def run_checks(config: RunConfig) -> RunResult:
    """Run every selected check, then the counterexample suite.

    Raises:
        ConfigError: If the config is invalid or names an unknown id.
    """
    config.validate()
    ids = resolve_ids(config.ids)
    with run_scope({RunContextField.COMMAND: config.command}):
        batches = tuple(run_batch(check_id, config) for check_id in ids)
        counterexamples = tuple(counterexample_suite())
    result = RunResult(batches, counterexamples)
    logger.info(
        "%d ids, %d trials each: %s",
        len(batches),
        config.trials,
        "all claims behave as expected" if result.passed else "failures found",
    )
    return result
