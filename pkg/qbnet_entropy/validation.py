"""Invariant checks for states, channels and ensembles.

States built by this library carry only float noise, so the constructors
check shapes and nothing more. Values read from files or handed in by a
caller go through these checks instead, which report every violation at once.
"""

import logging

import numpy as np

from qbnet_entropy.channels import KrausChannel, validate_channel
from qbnet_entropy.config import PROB_TOL, STATE_TOL
from qbnet_entropy.entropy import Ensemble
from qbnet_entropy.errors import InvariantError
from qbnet_entropy.tensor_core import LabeledState, eig_hermitian

logger = logging.getLogger(__name__)


def state_deviations(state: LabeledState) -> dict[str, float]:
    """Deviations of a state from each density-matrix invariant.

    Returns:
        Max-abs asymmetry, |trace − 1| and the negative part of the smallest
        eigenvalue, keyed "hermiticity", "trace" and "positivity".
    """
    m = state.matrix
    return {
        "hermiticity": float(np.max(np.abs(m - m.conj().T))),
        "trace": float(abs(np.trace(m) - 1.0)),
        "positivity": float(max(0.0, -eig_hermitian(m)[0][0])),
    }


def _report(
    warnings: list[str],
    deviation: float,
    what: str,
    *,
    raise_on_violation: bool,
) -> list[str]:
    for message in warnings:
        logger.warning(message)
    if raise_on_violation and warnings:
        error_msg = f"Invalid {what}:\n" + "\n".join(f"  - {w}" for w in warnings)
        raise InvariantError(error_msg, deviation)
    return warnings


def check_state(
    state: LabeledState,
    *,
    raise_on_violation: bool = False,
    tolerance: float = STATE_TOL,
) -> list[str]:
    """Check the density-matrix invariants of a state.

    Args:
        state: State to check.
        raise_on_violation: If True, raise when any invariant fails.
        tolerance: Allowed deviation per invariant.

    Returns:
        List of warning messages, one per failed invariant.

    Raises:
        InvariantError: If raise_on_violation is True and an invariant fails;
            `deviation` is the largest deviation found.

    Example:
        >>> from qbnet_entropy.validation import check_state
        >>>
        >>> warnings = check_state(state)
        >>> if warnings:
        ...     print("state is not a density matrix")
    """
    deviations = state_deviations(state)
    warnings = [
        f"{name} violated on {list(state.labels)}: deviation {value:.3g}"
        for name, value in deviations.items()
        if value > tolerance
    ]
    return _report(
        warnings,
        max(deviations.values()),
        "state",
        raise_on_violation=raise_on_violation,
    )


def check_channel(c: KrausChannel, *, raise_on_violation: bool = False) -> list[str]:
    """Check the Kraus completeness relation.

    Returns:
        List of warning messages (empty when the channel is valid).

    Raises:
        InvariantError: If raise_on_violation is True and the channel is invalid.
    """
    result = validate_channel(c)
    warnings = (
        []
        if result.valid
        else [f"completeness violated for {c.out_dim}x{c.in_dim} channel: {result.deviation:.3g}"]
    )
    return _report(warnings, result.deviation, "channel", raise_on_violation=raise_on_violation)


def check_ensemble(e: Ensemble, *, raise_on_violation: bool = False) -> list[str]:
    """Check the weights and every member state of an ensemble.

    Returns:
        List of warning messages, each prefixed with the member index.

    Raises:
        InvariantError: If raise_on_violation is True and anything is invalid.
    """
    warnings: list[str] = []
    worst = abs(float(e.weights.probabilities.sum()) - 1.0)
    if worst > PROB_TOL:
        warnings.append(f"weights sum to {e.weights.probabilities.sum():.15g}")
    for x, state in enumerate(e.states):
        deviations = state_deviations(state)
        worst = max(worst, *deviations.values())
        warnings.extend(
            f"state {x}: {name} deviation {value:.3g}"
            for name, value in deviations.items()
            if value > STATE_TOL
        )
    return _report(warnings, worst, "ensemble", raise_on_violation=raise_on_violation)
