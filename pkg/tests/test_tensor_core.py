"""Tests for labeled states and their algebra."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qbnet_entropy.errors import DimensionError, LayoutError
from qbnet_entropy.randgen import random_density_matrix
from qbnet_entropy.tensor_core import (
    LabeledState,
    SubsystemLayout,
    eig_hermitian,
    partial_trace,
    relabel,
    reorder,
    support_log,
    tensor_product,
)


def _qubit(label: str, ket: list[complex]) -> LabeledState:
    return LabeledState.from_ket(SubsystemLayout.of((label, 2)), ket)


def test_layout_total_dim() -> None:
    """Test the product of dimensions."""
    layout = SubsystemLayout.of(("a", 2), ("b", 3), ("c", 4))
    assert layout.total_dim == 24
    assert layout.dim("b") == 3
    assert list(layout) == [("a", 2), ("b", 3), ("c", 4)]


def test_layout_rejects_duplicates() -> None:
    """Test that duplicate labels are refused."""
    with pytest.raises(LayoutError, match=r"duplicate subsystem labels: \['a'\]"):
        SubsystemLayout.of(("a", 2), ("a", 2))


def test_layout_rejects_oversized_space() -> None:
    """Test the total dimension cap."""
    with pytest.raises(LayoutError, match="exceeds the cap"):
        SubsystemLayout.of(("a", 64), ("b", 65))


def test_layout_unknown_label() -> None:
    """Test the labeled error for an unknown subsystem."""
    with pytest.raises(LayoutError, match="unknown subsystem 'z'"):
        SubsystemLayout.of(("a", 2)).index("z")


def test_layout_restrict_keeps_order() -> None:
    """Test that restrict follows the layout order, not the argument order."""
    layout = SubsystemLayout.of(("a", 2), ("b", 3), ("c", 4))
    assert layout.restrict(["c", "a"]).labels == ("a", "c")


def test_state_shape_mismatch() -> None:
    """Test that the matrix must match the layout."""
    with pytest.raises(DimensionError, match="does not match layout dimension 4"):
        LabeledState(SubsystemLayout.of(("a", 2), ("b", 2)), np.eye(2))


def test_state_matrix_is_read_only(bell_state: LabeledState) -> None:
    """Test that a state cannot be mutated in place."""
    with pytest.raises(ValueError, match="read-only"):
        bell_state.matrix[0, 0] = 0


def test_from_ket_normalizes() -> None:
    """Test that kets are normalized."""
    state = _qubit("a", [3, 4])
    assert np.trace(state.matrix).real == pytest.approx(1.0)
    assert state.matrix[1, 1].real == pytest.approx(16 / 25)


def test_from_ket_rejects_zero() -> None:
    """Test that a zero ket has no state."""
    with pytest.raises(DimensionError, match="zero ket"):
        _qubit("a", [0, 0])


def test_partial_trace_of_bell_is_mixed(bell_state: LabeledState) -> None:
    """Test that either half of a Bell pair is I/2."""
    for label in ("a", "b"):
        reduced = partial_trace(bell_state, [label])
        assert reduced.labels == (label,)
        np.testing.assert_allclose(reduced.matrix, np.eye(2) / 2, atol=1e-12)


def test_partial_trace_of_product_state() -> None:
    """Test that tracing a product state returns its factors."""
    a = _qubit("a", [1, 1j])
    b = _qubit("b", [2, 1])
    c = _qubit("c", [1, 0])
    joint = tensor_product(a, b, c)

    np.testing.assert_allclose(partial_trace(joint, ["b"]).matrix, b.matrix, atol=1e-12)
    np.testing.assert_allclose(
        partial_trace(joint, ["c", "a"]).matrix,
        tensor_product(a, c).matrix,
        atol=1e-12,
    )


def test_partial_trace_keep_all_is_identity(bell_state: LabeledState) -> None:
    """Test that keeping every label returns the state itself."""
    assert partial_trace(bell_state, ["b", "a"]) is bell_state


def test_partial_trace_needs_a_label(bell_state: LabeledState) -> None:
    """Test that an empty keep set is refused."""
    with pytest.raises(LayoutError, match="at least one label"):
        partial_trace(bell_state, [])


def test_reorder_swaps_factors() -> None:
    """Test that reorder permutes tensor factors."""
    a = _qubit("a", [1, 0])
    b = LabeledState.from_ket(SubsystemLayout.of(("b", 3)), [0, 1, 0])
    swapped = reorder(tensor_product(a, b), ["b", "a"])

    assert swapped.layout.dims == (3, 2)
    np.testing.assert_allclose(swapped.matrix, tensor_product(b, a).matrix, atol=1e-12)


def test_reorder_requires_permutation(bell_state: LabeledState) -> None:
    """Test that reorder refuses a partial order."""
    with pytest.raises(LayoutError, match="is not a permutation"):
        reorder(bell_state, ["a"])


def test_relabel(bell_state: LabeledState) -> None:
    """Test renaming subsystems."""
    renamed = relabel(bell_state, {"a": "x"})
    assert renamed.labels == ("x", "b")
    np.testing.assert_array_equal(renamed.matrix, bell_state.matrix)


def test_tensor_product_rejects_shared_labels() -> None:
    """Test that factors must have distinct labels."""
    with pytest.raises(LayoutError, match="duplicate"):
        tensor_product(_qubit("a", [1, 0]), _qubit("a", [0, 1]))


def test_eig_hermitian_requires_square() -> None:
    """Test the shape check."""
    with pytest.raises(DimensionError, match="square"):
        eig_hermitian(np.zeros((2, 3)))


def test_support_log_ignores_null_space() -> None:
    """Test that the log is taken on the support only."""
    rho = np.diag([0.5, 0.5, 0.0]).astype(np.complex128)
    np.testing.assert_allclose(support_log(rho), np.diag([np.log(0.5)] * 2 + [0.0]), atol=1e-12)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32), keep=st.sampled_from(["a", "b", "c"]))
def test_partial_trace_preserves_trace_and_positivity(seed: int, keep: str) -> None:
    """Test that reduced random states are density matrices."""
    layout = SubsystemLayout.of(("a", 2), ("b", 3), ("c", 2))
    reduced = partial_trace(random_density_matrix(layout, None, seed), [keep])

    assert np.trace(reduced.matrix).real == pytest.approx(1.0, abs=1e-10)
    assert reduced.spectrum().min() > -1e-10


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32))
def test_partial_trace_in_steps(seed: int) -> None:
    """Test that tracing c then b equals tracing b and c at once."""
    rho = random_density_matrix(SubsystemLayout.of(("a", 2), ("b", 3), ("c", 2)), None, seed)
    stepwise = partial_trace(partial_trace(rho, ["a", "b"]), ["a"])
    direct = partial_trace(rho, ["a"])

    assert stepwise.labels == direct.labels == ("a",)
    np.testing.assert_allclose(stepwise.matrix, direct.matrix, atol=1e-12)
