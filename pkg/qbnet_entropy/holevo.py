"""Holevo bound pipeline.

An ensemble {P(x), ρ_{q|x}} is purified by the net

    x → Q → q,   x → q

with A(x) = √P(x), A(Q|x) = √λ_{Q|x} and A(q|Q,x) = ⟨q|λ_{Q|x}⟩ taken from
the eigendecomposition of each ρ_{q|x}. A measurement with Kraus set {K_y}
is then applied through its Stinespring unitary: the q arm (q₁, slashed)
and an ancilla y₁ clamped to 0 (slashed) feed a node holding U, which is
split into the outputs q₂ and y₂. The preparation label x stays classical
and Q is traced.
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from qbnet_entropy.channels import (
    KrausChannel,
    dephasing_channel,
    projective_measurement,
    stinespring_dilation,
)
from qbnet_entropy.entropy import Ensemble, holevo_information, quantum_entropy
from qbnet_entropy.errors import DimensionError
from qbnet_entropy.netmodel import Marking, Node, QBNet, compile_density, delta_split
from qbnet_entropy.randgen import derive_seed, make_rng, random_unitary
from qbnet_entropy.tensor_core import LabeledState, SubsystemLayout, eig_hermitian, reorder
from qbnet_entropy.types import ComplexMatrix, Seed
from qbnet_entropy.verdicts import CheckVerdict, aggregate, at_most, composite

logger = logging.getLogger(__name__)

HOLEVO_BOUND = "holevo_bound"


@dataclass(frozen=True, eq=False)
class HolevoInstance:
    """An ensemble together with a measurement channel on its q system."""

    ensemble: Ensemble
    channel: KrausChannel


def _purification_nodes(
    e: Ensemble,
    *,
    q_label: str,
    q_marking: Marking,
    x_marking: Marking,
    spectral_marking: Marking = Marking.VISIBLE,
) -> list[Node]:
    n, d = e.size, e.layout.total_dim
    spectra = np.zeros((d, n))
    eigvecs = np.zeros((d, d * n), dtype=np.complex128)
    for x, state in enumerate(e.states):
        values, vectors = eig_hermitian(state.matrix)
        spectra[:, x] = np.clip(values, 0.0, None) / np.clip(values, 0.0, None).sum()
        # parent assignment (Q, x) has column index Q*n + x
        eigvecs[:, np.arange(d) * n + x] = vectors
    return [
        Node("x", np.sqrt(e.weights.probabilities), (), x_marking),
        Node("Q", np.sqrt(spectra), ("x",), spectral_marking),
        Node(q_label, eigvecs, ("Q", "x"), q_marking),
    ]


def purification_net(e: Ensemble, *, classical_x: bool = True) -> QBNet:
    """The purification net of an ensemble, q system flattened into one node."""
    x_marking = Marking.CLASSICAL if classical_x else Marking.VISIBLE
    return QBNet(
        tuple(_purification_nodes(e, q_label="q", q_marking=Marking.VISIBLE, x_marking=x_marking)),
    )


def build_purification(e: Ensemble, *, classical_x: bool = True) -> LabeledState:
    """Purification of the ensemble's average state on (q, Q, x).

    With `classical_x` the label x is dephased (the cq extension); without it
    the compiled state is pure. Tracing (Q, x) gives Σ_x P(x) ρ_{q|x}.
    """
    state = compile_density(purification_net(e, classical_x=classical_x))
    return reorder(state, ["q", "Q", "x"])


def measurement_net(inst: HolevoInstance) -> QBNet:
    """The purification net followed by the dilated measurement."""
    e, c = inst.ensemble, inst.channel
    d = e.layout.total_dim
    if c.in_dim != d:
        msg = f"measurement acts on dimension {c.in_dim}, ensemble q has dimension {d}"
        raise DimensionError(msg)
    m = len(c.kraus)
    unitary = stinespring_dilation(c)
    clamped = np.zeros(m)
    clamped[0] = 1.0
    nodes = _purification_nodes(
        e,
        q_label="q1",
        q_marking=Marking.SLASHED,
        x_marking=Marking.CLASSICAL,
        spectral_marking=Marking.TRACED,
    )
    nodes.append(Node("y1", clamped, (), Marking.SLASHED))
    nodes.append(Node("qy2", unitary, ("q1", "y1"), Marking.SLASHED))
    nodes.extend(delta_split("qy2", (d, m), ("q2", "y2"), (Marking.VISIBLE, Marking.VISIBLE)))
    return QBNet(tuple(nodes))


def measured_state(inst: HolevoInstance) -> LabeledState:
    """R on (q₂, y₂, x) after measuring the q arm of the purification.

    Raises:
        DimensionError: If the channel does not act on the ensemble's q system.
    """
    state = compile_density(measurement_net(inst), expect_unit_norm=True)
    return reorder(state, ["q2", "y2", "x"])


def random_projective_measurement(dim: int, seed: Seed) -> KrausChannel:
    """Projectors onto the columns of a random unitary."""
    return projective_measurement(random_unitary(dim, make_rng(seed)))


@dataclass(frozen=True)
class MeasurementSample:
    """Mutual informations of one sampled measurement."""

    outcome_info: float
    """S(y₂:x) on R."""

    joint_info: float
    """S(q₂,y₂:x) on R."""


@dataclass(frozen=True, eq=False)
class AccessibleInfo:
    """Result of `accessible_info_lower_bound`."""

    best: float
    channel: KrausChannel
    samples: tuple[MeasurementSample, ...] = field(default=())


def measure(e: Ensemble, channel: KrausChannel) -> MeasurementSample:
    """S(y₂:x) and S(q₂,y₂:x) for one measurement."""
    r = measured_state(HolevoInstance(e, channel))
    return MeasurementSample(
        quantum_entropy("S(y2:x)", r),
        quantum_entropy("S(q2,y2:x)", r),
    )


def accessible_info_lower_bound(e: Ensemble, samples: int, seed: Seed) -> AccessibleInfo:
    """Best S(y₂:x) over the computational basis and `samples` random bases.

    Sample k uses the measurement drawn from `derive_seed(seed, k)`, so any
    single sample can be reproduced on its own.

    Raises:
        ValueError: If samples < 1.
    """
    if samples < 1:
        msg = f"samples must be >= 1, got {samples}"
        raise ValueError(msg)
    d = e.layout.total_dim
    channels = [dephasing_channel(d)]
    channels += [random_projective_measurement(d, derive_seed(seed, k)) for k in range(samples)]
    results = tuple(measure(e, c) for c in channels)
    best_index = max(range(len(results)), key=lambda k: results[k].outcome_info)
    logger.debug(
        "best of %d measurements: %.6g nats",
        len(results),
        results[best_index].outcome_info,
    )
    return AccessibleInfo(results[best_index].outcome_info, channels[best_index], results)


def _bound_verdict(hol: float, acc: AccessibleInfo) -> CheckVerdict:
    outcome_step = aggregate(
        [
            at_most(HOLEVO_BOUND, s.outcome_info, s.joint_info, label="S(y2:x) <= S(q2,y2:x)")
            for s in acc.samples
        ],
    )
    joint_step = aggregate(
        [at_most(HOLEVO_BOUND, s.joint_info, hol, label="S(q2,y2:x) <= Hol") for s in acc.samples],
    )
    bound = at_most(HOLEVO_BOUND, acc.best, hol, label="Acc lower bound <= Hol")
    return composite(HOLEVO_BOUND, [bound, outcome_step, joint_step], label=bound.label)


def check_holevo_bound(e: Ensemble, samples: int, seed: Seed) -> CheckVerdict:
    """Acc lower bound ≤ Hol, with the per-measurement chain as parts.

    Parts: the bound on the best measurement; S(y₂:x) ≤ S(q₂,y₂:x) and
    S(q₂,y₂:x) ≤ Hol, each over every sampled measurement.
    """
    return _bound_verdict(holevo_information(e), accessible_info_lower_bound(e, samples, seed))


def _preset_ket_ensemble(kets: list[list[complex]], weights: list[float]) -> Ensemble:
    layout = SubsystemLayout.of(("q", len(kets[0])))
    return Ensemble.of(weights, [LabeledState.from_ket(layout, k) for k in kets])


PRESETS: dict[str, Callable[[], Ensemble]] = {
    "orthogonal": lambda: _preset_ket_ensemble([[1, 0], [0, 1]], [0.5, 0.5]),
    "zero-plus": lambda: _preset_ket_ensemble([[1, 0], [1, 1]], [0.5, 0.5]),
    "identical": lambda: _preset_ket_ensemble([[1, 0], [1, 0]], [0.5, 0.5]),
}
"""Named ensembles for the demo: qubit |0⟩/|1⟩, |0⟩/|+⟩ and |0⟩/|0⟩, equal weights."""


@dataclass(frozen=True)
class HolevoReport:
    """Summary of one Holevo demo run.

    `per_sample` holds S(y2:x) for each of the `samples` random bases, in
    sample order; the computational-basis measurement is `basis_info`.
    `acc_lower_bound` is the best of all `samples + 1` values.
    """

    hol: float
    acc_lower_bound: float
    samples: int
    gap: float
    holds: bool
    basis_info: float
    per_sample: tuple[float, ...]


def holevo_demo(e: Ensemble, samples: int, seed: Seed) -> HolevoReport:
    """Run the bound check and summarize it for reporting."""
    hol = holevo_information(e)
    acc = accessible_info_lower_bound(e, samples, seed)
    verdict = _bound_verdict(hol, acc)
    basis, *sampled = acc.samples
    return HolevoReport(
        hol=hol,
        acc_lower_bound=acc.best,
        samples=samples,
        gap=hol - acc.best,
        holds=verdict.holds,
        basis_info=basis.outcome_info,
        per_sample=tuple(s.outcome_info for s in sampled),
    )


def dilation_block(unitary: ComplexMatrix, y: int, kraus_count: int) -> ComplexMatrix:
    """⟨·, y| U |·, 0⟩, the Kraus operator stored in a dilation unitary."""
    return unitary[y::kraus_count, 0::kraus_count]
