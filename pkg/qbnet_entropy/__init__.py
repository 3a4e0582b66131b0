"""Entropy inequalities on classical and quantum Bayesian networks.

This library provides:
- Labeled density matrices with partial trace and reordering by subsystem label
- QB nets compiled to pure or mixed states, with visible, traced and slashed nodes
- Kraus channels, Stinespring dilations and classical stochastic matrices
- Shannon and von Neumann entropies, mutual informations and relative entropies
- A registry of seeded checks for every inequality and identity, plus counterexamples
- The Holevo bound pipeline and an exhaustive roots-of-unity suite
- Run-context logging formatters and a `qbnet-entropy` command line

Basic Usage:
    >>> from qbnet_entropy import RunConfig, run_checks
    >>>
    >>> result = run_checks(RunConfig(ids=("mi_nonneg", "cmi_nonneg"), trials=10, seed=7))
    >>> result.passed
    True

Entropic Quantities:
    >>> from qbnet_entropy import LabeledState, SubsystemLayout, quantum_entropy
    >>>
    >>> layout = SubsystemLayout.of(("a", 2), ("b", 2))
    >>> bell = LabeledState.from_ket(layout, [1, 0, 0, 1])
    >>> round(quantum_entropy("S(a:b)", bell), 4)
    1.3863
"""

from qbnet_entropy.batch import BatchSummary, RunResult, run_batch, run_checks
from qbnet_entropy.channels import KrausChannel, apply_channel
from qbnet_entropy.config import RunConfig
from qbnet_entropy.context import (
    get_adapter,
    get_context,
    get_full_context,
    run_scope,
    set_adapter,
    set_context,
)
from qbnet_entropy.entropy import (
    Ensemble,
    ProbDist,
    Quantity,
    classical_entropy,
    holevo_information,
    quantum_entropy,
)
from qbnet_entropy.fields import RunContextField
from qbnet_entropy.inequalities import InequalityId, check_entropic, counterexample_suite
from qbnet_entropy.netmodel import Marking, Node, QBNet, compile_density
from qbnet_entropy.parallel import with_run_context
from qbnet_entropy.tensor_core import LabeledState, SubsystemLayout, partial_trace
from qbnet_entropy.verdicts import CheckVerdict

__all__ = [
    "BatchSummary",
    "CheckVerdict",
    "Ensemble",
    "InequalityId",
    "KrausChannel",
    "LabeledState",
    "Marking",
    "Node",
    "ProbDist",
    "QBNet",
    "Quantity",
    "RunConfig",
    "RunContextField",
    "RunResult",
    "SubsystemLayout",
    "apply_channel",
    "check_entropic",
    "classical_entropy",
    "compile_density",
    "counterexample_suite",
    "get_adapter",
    "get_context",
    "get_full_context",
    "holevo_information",
    "partial_trace",
    "quantum_entropy",
    "run_batch",
    "run_checks",
    "run_scope",
    "set_adapter",
    "set_context",
    "with_run_context",
]

__version__ = "0.1.0"
