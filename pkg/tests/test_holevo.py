"""Tests for the Holevo bound pipeline."""

import math

import numpy as np
import pytest

from qbnet_entropy.channels import dephasing_channel, stinespring_dilation
from qbnet_entropy.entropy import holevo_information, quantum_entropy
from qbnet_entropy.errors import DimensionError
from qbnet_entropy.holevo import (
    PRESETS,
    HolevoInstance,
    accessible_info_lower_bound,
    build_purification,
    check_holevo_bound,
    dilation_block,
    holevo_demo,
    measure,
    measured_state,
    measurement_net,
)
from qbnet_entropy.netmodel import compile_ket
from qbnet_entropy.randgen import random_channel, random_ensemble
from qbnet_entropy.tensor_core import SubsystemLayout, partial_trace

LN2 = math.log(2)


def test_purification_traces_to_average_state() -> None:
    """Test that tracing Q and x recovers Σ P(x) ρ_{q|x}."""
    ensemble = random_ensemble(3, SubsystemLayout.of(("q", 2)), 12)
    purified = build_purification(ensemble)

    assert purified.labels == ("q", "Q", "x")
    np.testing.assert_allclose(
        partial_trace(purified, ["q"]).matrix,
        ensemble.average_state().matrix,
        atol=1e-10,
    )


def test_coherent_purification_is_pure() -> None:
    """Test that without dephasing x the purification is a pure state."""
    ensemble = random_ensemble(2, SubsystemLayout.of(("q", 2)), 3)
    purified = build_purification(ensemble, classical_x=False)
    assert quantum_entropy("S(q,Q,x)", purified) == pytest.approx(0.0, abs=1e-10)


def test_purification_holevo_is_cq_information() -> None:
    """Test Hol = S(q:x) on the cq extension."""
    ensemble = PRESETS["zero-plus"]()
    purified = build_purification(ensemble)
    assert quantum_entropy("S(q:x)", purified) == pytest.approx(
        holevo_information(ensemble),
        abs=1e-10,
    )


def test_dephasing_measurement_of_orthogonal_states() -> None:
    """Test that measuring |0⟩/|1⟩ in their own basis reveals x fully."""
    ensemble = PRESETS["orthogonal"]()
    state = measured_state(HolevoInstance(ensemble, dephasing_channel(2)))

    assert state.labels == ("q2", "y2", "x")
    assert quantum_entropy("S(y2:x)", state) == pytest.approx(LN2)


def test_measure_chain_holds_for_a_random_channel() -> None:
    """Test S(y₂:x) ≤ S(q₂,y₂:x) ≤ Hol for a non-projective measurement."""
    ensemble = random_ensemble(3, SubsystemLayout.of(("q", 2)), 31)
    sample = measure(ensemble, random_channel(2, 2, 3, 5))

    assert sample.outcome_info <= sample.joint_info + 1e-9
    assert sample.joint_info <= holevo_information(ensemble) + 1e-9


def test_measurement_dimension_mismatch() -> None:
    """Test that the measurement must act on q."""
    with pytest.raises(DimensionError, match="acts on dimension 3"):
        measure(PRESETS["orthogonal"](), dephasing_channel(3))


def test_dilation_block_recovers_kraus() -> None:
    """Test reading Kraus operators back out of the dilation."""
    channel = random_channel(2, 2, 3, 9)
    unitary = stinespring_dilation(channel)
    for y, k in enumerate(channel.kraus):
        np.testing.assert_allclose(dilation_block(unitary, y, 3), k, atol=1e-12)


def test_orthogonal_preset() -> None:
    """Test Hol = Acc = ln 2 for orthogonal states."""
    report = holevo_demo(PRESETS["orthogonal"](), 4, 0)

    assert report.hol == pytest.approx(LN2)
    assert report.acc_lower_bound == pytest.approx(LN2)
    assert report.gap == pytest.approx(0.0, abs=1e-9)
    assert report.holds


def test_zero_plus_preset_has_a_gap() -> None:
    """Test Acc < Hol for non-orthogonal states."""
    report = holevo_demo(PRESETS["zero-plus"](), 16, 0)

    assert report.hol == pytest.approx(0.4165, abs=1e-4)
    assert report.gap > 0.0
    assert report.holds
    assert len(report.per_sample) == report.samples == 16
    assert max(report.basis_info, *report.per_sample) == report.acc_lower_bound


def test_identical_preset_carries_nothing() -> None:
    """Test Hol = Acc = 0 when the states coincide."""
    report = holevo_demo(PRESETS["identical"](), 3, 1)
    assert report.hol == pytest.approx(0.0, abs=1e-12)
    assert report.acc_lower_bound == pytest.approx(0.0, abs=1e-12)
    assert report.holds


def test_demo_is_deterministic() -> None:
    """Test that one seed gives one report."""
    first = holevo_demo(PRESETS["zero-plus"](), 5, 42)
    second = holevo_demo(PRESETS["zero-plus"](), 5, 42)
    assert first == second


def test_check_holevo_bound_parts() -> None:
    """Test the composite verdict of the bound."""
    ensemble = random_ensemble(4, SubsystemLayout.of(("q", 3)), 7, rank=1)
    verdict = check_holevo_bound(ensemble, 6, 7)

    assert verdict.id == "holevo_bound"
    assert verdict.holds
    assert len(verdict.parts) == 3
    assert verdict.parts[1].instances == 7


def test_sample_count_must_be_positive() -> None:
    """Test the sample-count check."""
    with pytest.raises(ValueError, match="samples must be >= 1"):
        accessible_info_lower_bound(PRESETS["orthogonal"](), 0, 0)


def test_measurement_net_keeps_unit_norm() -> None:
    """Test that the dilated measurement loses no norm before renormalization."""
    ensemble = random_ensemble(3, SubsystemLayout.of(("q", 3)), 8)
    _, psi = compile_ket(measurement_net(HolevoInstance(ensemble, random_channel(3, 3, 2, 9))))

    assert np.vdot(psi, psi).real == pytest.approx(1.0, abs=1e-10)
