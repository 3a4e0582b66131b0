"""Run context field definitions."""

from enum import StrEnum


class RunContextField(StrEnum):
    """Context fields the runner sets while checks execute.

    They end up in every log record (through the formatters) and in the notes of
    any error raised inside a run scope, which is enough to replay a failing
    random instance.

    Example:
        >>> from qbnet_entropy import RunContextField, get_context
        >>>
        >>> seed = get_context(RunContextField.SEED)
    """

    COMMAND = "command"
    """CLI sub-command being executed."""

    CHECK_ID = "check_id"
    """Inequality identifier of the running batch."""

    SEED = "seed"
    """Seed of the current random instance."""

    TRIAL = "trial"
    """Trial index inside the running batch."""
