"""Configuration and numerical tolerances."""

import os
from dataclasses import dataclass, field
from enum import StrEnum

from qbnet_entropy.errors import ConfigError

CLIP = 1e-12
"""Eigenvalues and probabilities at or below this are numerical zeros."""

STATE_TOL = 1e-10
"""Tolerance for LabeledState invariants (hermiticity, trace, positivity)."""

CHANNEL_TOL = 1e-10
"""Tolerance for Kraus completeness, isometry and unitality tests."""

PROB_TOL = 1e-12
"""Allowed deviation of a probability distribution's total from 1."""

PASS_TOL = 1e-9
"""Absolute tolerance (nats) under which a verdict still holds."""

NULL_SUPPORT_TOL = 1e-9
"""Weight of rho on the null space of sigma above which D(rho//sigma) is infinite."""

PURITY_TOL = 1e-9
"""Largest eigenvalue must be at least 1 - PURITY_TOL for a state to count as pure."""

ORTHONORMAL_TOL = 1e-10
"""Largest |<psi_i|psi_j> - delta_ij| for kets to count as orthonormal."""

MAX_TOTAL_DIM = 4096
"""Largest total Hilbert-space dimension a LabeledState may have."""

SEED_ENV_VAR = "QBNET_SEED"
"""Environment variable holding the default base seed."""

REPORT_SCHEMA = "qbnet-entropy/report-v1"
"""Schema tag written into every JSON report."""

ALL_IDS = "all"
"""Selector that expands to every registered inequality id."""


class OutputFormat(StrEnum):
    """Report rendering."""

    JSON = "json"
    TABLE = "table"


class LogFormat(StrEnum):
    """Log record rendering."""

    SIMPLE = "simple"
    JSON = "json"


def default_seed() -> int:
    """Read the default base seed from the environment.

    Returns:
        The value of `QBNET_SEED`, or 0 when unset.

    Raises:
        ConfigError: If the variable is set but not a non-negative integer.
    """
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None or raw == "":
        return 0
    try:
        value = int(raw)
    except ValueError as e:
        msg = f"{SEED_ENV_VAR}={raw!r} is not an integer"
        raise ConfigError(msg) from e
    if value < 0:
        msg = f"{SEED_ENV_VAR}={raw!r} must be non-negative"
        raise ConfigError(msg)
    return value


@dataclass
class RunConfig:
    """Configuration for a batch of inequality checks.

    All settings have defaults, so `RunConfig()` runs every registered check
    once at dimension 2.

    Attributes:
        command: CLI sub-command that owns this run.
        ids: Inequality ids to run, or ("all",).
        trials: Seeded random instances per id.
        dims: Per-subsystem dimensions for random instances.
        seed: Base seed; trial seeds are derived from (seed, trial index).
        output_format: Report rendering.
        out: Report path; None writes to stdout.
        workers: Threads used to evaluate trials.
        log_format: Log record rendering.
        log_level: Root log level name.

    Example:
        >>> from qbnet_entropy import RunConfig
        >>>
        >>> config = RunConfig(ids=("mi_nonneg",), trials=10, seed=7)
        >>> config.validate()
    """

    command: str = "check"
    """CLI sub-command that owns this run."""

    ids: tuple[str, ...] = (ALL_IDS,)
    """Inequality ids to run."""

    trials: int = 1
    """Number of seeded instances per id."""

    dims: tuple[int, ...] = (2,)
    """Per-subsystem dimensions; the last entry repeats for extra subsystems."""

    seed: int = field(default_factory=default_seed)
    """Base seed for the batch."""

    output_format: OutputFormat = OutputFormat.JSON
    """How the report is rendered."""

    out: str | None = None
    """Report path, or None for stdout."""

    workers: int = 1
    """Threads used to evaluate trials."""

    log_format: LogFormat = LogFormat.SIMPLE
    """How log records are rendered."""

    log_level: str = "WARNING"
    """Root log level."""

    def validate(self) -> None:
        """Check the configuration.

        Raises:
            ConfigError: On the first invalid setting.
        """
        if self.trials < 1:
            msg = f"trials must be >= 1, got {self.trials}"
            raise ConfigError(msg)
        if not self.dims or any(d < 2 for d in self.dims):  # noqa: PLR2004
            msg = f"dims must all be >= 2, got {list(self.dims)}"
            raise ConfigError(msg)
        if self.workers < 1:
            msg = f"workers must be >= 1, got {self.workers}"
            raise ConfigError(msg)
        if self.seed < 0:
            msg = f"seed must be non-negative, got {self.seed}"
            raise ConfigError(msg)
        if not self.ids:
            msg = "at least one inequality id is required"
            raise ConfigError(msg)

    def dims_for(self, count: int) -> tuple[int, ...]:
        """Expand `dims` to `count` subsystems, repeating the last entry.

        Args:
            count: Number of subsystems needed.

        Returns:
            Tuple of `count` dimensions.
        """
        head = self.dims[:count]
        return head + (self.dims[-1],) * (count - len(head))
