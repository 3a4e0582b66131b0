"""Tests for run configuration."""

import pytest

from qbnet_entropy.config import SEED_ENV_VAR, RunConfig, default_seed
from qbnet_entropy.errors import ConfigError


def test_defaults() -> None:
    """Test that the default config is valid."""
    config = RunConfig(seed=0)
    config.validate()
    assert config.ids == ("all",)
    assert config.trials == 1


@pytest.mark.parametrize(
    ("kwargs", "match"),
    [
        ({"trials": 0}, "trials must be >= 1, got 0"),
        ({"dims": ()}, "dims must all be >= 2"),
        ({"dims": (2, 1)}, r"dims must all be >= 2, got \[2, 1\]"),
        ({"workers": 0}, "workers must be >= 1"),
        ({"seed": -1}, "seed must be non-negative"),
        ({"ids": ()}, "at least one inequality id"),
    ],
)
def test_validate_errors(kwargs: dict[str, object], match: str) -> None:
    """Test each configuration error."""
    config = RunConfig(**{"seed": 0, **kwargs})  # type: ignore[arg-type]
    with pytest.raises(ConfigError, match=match):
        config.validate()


@pytest.mark.parametrize(
    ("dims", "count", "expected"),
    [((2,), 3, (2, 2, 2)), ((2, 3), 3, (2, 3, 3)), ((2, 3, 4), 2, (2, 3))],
)
def test_dims_for(dims: tuple[int, ...], count: int, expected: tuple[int, ...]) -> None:
    """Test expansion and truncation of dims."""
    assert RunConfig(dims=dims, seed=0).dims_for(count) == expected


def test_default_seed_unset(monkeypatch: pytest.MonkeyPatch) -> None:
    """Test the fallback seed."""
    monkeypatch.delenv(SEED_ENV_VAR, raising=False)
    assert default_seed() == 0
    assert RunConfig().seed == 0


def test_default_seed_from_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    """Test that QBNET_SEED sets the base seed."""
    monkeypatch.setenv(SEED_ENV_VAR, "42")
    assert RunConfig().seed == 42


@pytest.mark.parametrize(("raw", "match"), [("abc", "is not an integer"), ("-3", "non-negative")])
def test_default_seed_errors(monkeypatch: pytest.MonkeyPatch, raw: str, match: str) -> None:
    """Test that a bad QBNET_SEED is a configuration error."""
    monkeypatch.setenv(SEED_ENV_VAR, raw)
    with pytest.raises(ConfigError, match=match):
        default_seed()
