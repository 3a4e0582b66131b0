"""Integration tests for formatters with the batch runner."""

import json
import logging
from collections.abc import Iterator

import pytest

from qbnet_entropy import RunConfig, run_batch, set_adapter
from qbnet_entropy.adapters import ContextLoggingAdapter
from qbnet_entropy.formatters import JsonContextFormatter, SimpleContextFormatter


class CaptureHandler(logging.Handler):
    """Keeps formatted records."""

    def __init__(self) -> None:
        super().__init__()
        self.lines: list[str] = []

    def emit(self, record: logging.LogRecord) -> None:
        self.lines.append(self.format(record))


@pytest.fixture
def batch_log() -> Iterator[CaptureHandler]:
    """Capture debug records of the batch runner."""
    handler = CaptureHandler()
    logger = logging.getLogger("qbnet_entropy.batch")
    previous = logger.level
    logger.addHandler(handler)
    logger.setLevel(logging.DEBUG)
    yield handler
    logger.removeHandler(handler)
    logger.setLevel(previous)


def test_trial_records_carry_run_context(batch_log: CaptureHandler) -> None:
    """Test that per-trial records name the check, trial and seed."""
    batch_log.setFormatter(JsonContextFormatter())

    run_batch("mi_nonneg", RunConfig(trials=2, seed=3))

    trials = [json.loads(line) for line in batch_log.lines][:2]
    assert [t["context"]["trial"] for t in trials] == [0, 1]
    assert {t["context"]["check_id"] for t in trials} == {"mi_nonneg"}
    assert all(isinstance(t["context"]["seed"], int) for t in trials)


def test_batch_summary_outside_trial_scope(batch_log: CaptureHandler) -> None:
    """Test that the summary record is logged after the trial scopes close."""
    batch_log.setFormatter(SimpleContextFormatter(fmt="%(context)s|%(message)s"))

    run_batch("araki_lieb", RunConfig(trials=1, seed=0))

    context, message = batch_log.lines[-1].split("|", 1)
    assert context == ""
    assert message.startswith("araki_lieb: 1/1 passed")


def test_threaded_trials_keep_context(batch_log: CaptureHandler) -> None:
    """Test that worker threads log with the batch's check id."""
    batch_log.setFormatter(JsonContextFormatter())

    run_batch("cond_bounds", RunConfig(trials=4, seed=1, workers=2))

    records = [json.loads(line) for line in batch_log.lines]
    trial_records = [r for r in records if "trial" in r.get("context", {})]
    assert sorted(r["context"]["trial"] for r in trial_records) == [0, 1, 2, 3]
    assert {r["context"]["check_id"] for r in trial_records} == {"cond_bounds"}


def test_context_logging_adapter_with_simple_formatter(batch_log: CaptureHandler) -> None:
    """Test the context-logging adapter feeding SimpleContextFormatter."""
    from context_logging import setup_log_record

    setup_log_record()
    set_adapter(ContextLoggingAdapter())
    batch_log.setFormatter(SimpleContextFormatter(fmt="%(message)s %(context)s"))

    run_batch("mi_nonneg", RunConfig(trials=1, seed=2))

    assert batch_log.lines[0].startswith("mi_nonneg trial 0")
    assert "trial=0" in batch_log.lines[0]
    assert "seed=" in batch_log.lines[0]
