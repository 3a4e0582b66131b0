"""Tests for pure-state tools."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qbnet_entropy.entropy import quantum_entropy
from qbnet_entropy.errors import LayoutError, PurityError
from qbnet_entropy.purestate import check_pure_identities, purify, schmidt_decompose
from qbnet_entropy.randgen import random_density_matrix, random_pure_state
from qbnet_entropy.tensor_core import LabeledState, SubsystemLayout, partial_trace, reorder


def test_schmidt_of_bell(bell_state: LabeledState) -> None:
    """Test two equal coefficients for a Bell pair."""
    form = schmidt_decompose(bell_state, ["a"])
    assert form.rank == 2
    np.testing.assert_allclose(form.coefficients, [2**-0.5, 2**-0.5], atol=1e-12)


def test_schmidt_of_product_state() -> None:
    """Test that a product state has Schmidt rank 1."""
    layout = SubsystemLayout.of(("a", 2), ("b", 2))
    form = schmidt_decompose(LabeledState.from_ket(layout, [1, 1, 1, 1]), ["b"])
    assert form.rank == 1
    assert form.coefficients[0] == pytest.approx(1.0)


@pytest.mark.parametrize("cut", [["a"], ["b"], ["a", "c"]])
def test_schmidt_reconstructs_state(cut: list[str]) -> None:
    """Test that the Schmidt form rebuilds the state on either side of the cut."""
    layout = SubsystemLayout.of(("a", 2), ("b", 3), ("c", 2))
    psi = random_pure_state(layout, 17)
    form = schmidt_decompose(psi, cut)

    assert form.rank <= min(form.left_layout.total_dim, form.right_layout.total_dim)
    assert np.sum(form.coefficients**2) == pytest.approx(1.0)
    rebuilt = reorder(form.state(), list(psi.labels))
    np.testing.assert_allclose(rebuilt.matrix, psi.matrix, atol=1e-10)


def test_schmidt_needs_two_sides(bell_state: LabeledState) -> None:
    """Test that a cut must leave something on each side."""
    with pytest.raises(LayoutError, match="two non-empty sides"):
        schmidt_decompose(bell_state, ["a", "b"])


def test_schmidt_refuses_mixed_states() -> None:
    """Test the purity check."""
    rho = random_density_matrix(SubsystemLayout.of(("a", 2), ("b", 2)), None, 1)
    with pytest.raises(PurityError, match="is mixed"):
        schmidt_decompose(rho, ["a"])


def test_purify_recovers_the_state() -> None:
    """Test that tracing out the reference gives the input back."""
    rho = random_density_matrix(SubsystemLayout.of(("a", 2), ("b", 2)), 3, 4)
    psi = purify(rho)

    assert psi.labels == ("a", "b", "r")
    assert psi.layout.dim("r") == 3
    np.testing.assert_allclose(partial_trace(psi, ["a", "b"]).matrix, rho.matrix, atol=1e-10)
    assert quantum_entropy("S(r)", psi) == pytest.approx(quantum_entropy("S(a,b)", rho))


def test_purify_of_mixed_qubit_is_maximally_entangled(mixed_qubit: LabeledState) -> None:
    """Test S(a) = ln 2 on the purification of I/2."""
    psi = purify(mixed_qubit, "ref")
    assert quantum_entropy("S(a)", psi) == pytest.approx(math.log(2))
    assert quantum_entropy("S(a,ref)", psi) == pytest.approx(0.0, abs=1e-12)


def test_pure_identities_count() -> None:
    """Test the number of identities checked for three blocks."""
    psi = random_pure_state(SubsystemLayout.of(("a", 2), ("b", 2), ("c", 2)), 2)
    verdicts = check_pure_identities(psi, [["a"], ["b"], ["c"]])

    assert len(verdicts) == 1 + 6 * 2 + 6 * 2
    assert all(v.holds for v in verdicts)


@settings(max_examples=10, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32))
def test_pure_identities_hold_on_four_blocks(seed: int) -> None:
    """Test every identity on random four-party pure states."""
    layout = SubsystemLayout.of(("a", 2), ("b", 2), ("c", 2), ("d", 2))
    psi = random_pure_state(layout, seed)
    verdicts = check_pure_identities(psi, [["a"], ["b"], ["c"], ["d"]])
    assert all(v.holds for v in verdicts)


def test_pure_identities_with_grouped_blocks() -> None:
    """Test a partition whose blocks hold several labels."""
    layout = SubsystemLayout.of(("a", 2), ("b", 2), ("c", 2), ("d", 2))
    psi = random_pure_state(layout, 8)
    verdicts = check_pure_identities(psi, [["a", "b"], ["c"], ["d"]])

    assert all(v.holds for v in verdicts)
    assert any("S((a,b))" in v.label for v in verdicts)


def test_pure_identities_refuse_mixed_states(mixed_qubit: LabeledState) -> None:
    """Test the purity check."""
    with pytest.raises(PurityError):
        check_pure_identities(mixed_qubit, [["a"]])


def test_pure_identities_need_a_partition(bell_state: LabeledState) -> None:
    """Test that the blocks must cover the labels exactly once."""
    with pytest.raises(LayoutError, match="is not a partition"):
        check_pure_identities(bell_state, [["a"]])
