"""Pytest configuration and fixtures."""

from collections.abc import Callable, Iterator
from pathlib import Path

import pytest

from qbnet_entropy.adapters import ContextVarsAdapter
from qbnet_entropy.context import get_adapter, set_adapter
from qbnet_entropy.serialization import dumps, state_to_json
from qbnet_entropy.tensor_core import LabeledState, SubsystemLayout


@pytest.fixture(autouse=True)
def default_adapter() -> Iterator[None]:
    """Run every test with a fresh contextvars adapter and restore the previous one."""
    previous = get_adapter()
    set_adapter(ContextVarsAdapter())
    yield
    set_adapter(previous)


@pytest.fixture
def ab_layout() -> SubsystemLayout:
    """Two qubits a and b."""
    return SubsystemLayout.of(("a", 2), ("b", 2))


@pytest.fixture
def bell_state(ab_layout: SubsystemLayout) -> LabeledState:
    """(|00⟩ + |11⟩)/√2 on a, b."""
    return LabeledState.from_ket(ab_layout, [1, 0, 0, 1])


@pytest.fixture
def mixed_qubit() -> LabeledState:
    """I/2 on a single qubit a."""
    return LabeledState.maximally_mixed(SubsystemLayout.of(("a", 2)))


@pytest.fixture
def write_state(tmp_path: Path) -> Callable[..., str]:
    """Write a state document to a temporary file and return its path."""

    def write(state: LabeledState, name: str = "state.json") -> str:
        path = tmp_path / name
        path.write_text(dumps(state_to_json(state)), encoding="utf-8")
        return str(path)

    return write

