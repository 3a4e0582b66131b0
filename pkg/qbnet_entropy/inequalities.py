"""Registry of entropy inequality and identity checkers.

Each registered id maps to a checker taking one instance type, a seeded
sampler for that type and the number of subsystem dimensions the sampler
reads. Checkers return one `CheckVerdict`; claims with several steps return
a composite verdict whose parts are the individual steps.

Example:
    >>> from qbnet_entropy.inequalities import InequalityId, check_entropic, get_entry
    >>>
    >>> entry = get_entry(InequalityId.ARAKI_LIEB)
    >>> verdict = check_entropic(entry.id, entry.sample(7, (2, 2)))
    >>> verdict.holds
    True
"""

import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass
from enum import StrEnum
from typing import Any

import numpy as np

from qbnet_entropy.channels import (
    KrausChannel,
    apply_channel,
    channel_from_stochastic,
    check_stochastic,
    is_unital,
)
from qbnet_entropy.config import ALL_IDS, ORTHONORMAL_TOL, PASS_TOL
from qbnet_entropy.entropy import (
    ProbDist,
    classical_entropy,
    classical_relative_entropy,
    clone_cq_state,
    cq_state,
    diagonal_distribution,
    holevo_information,
    quantum_entropy,
    quantum_relative_entropy,
    shannon_entropy,
    state_entropy_fn,
    von_neumann,
)
from qbnet_entropy.errors import ChannelError, ConfigError, DimensionError, InstanceShapeError
from qbnet_entropy.holevo import build_purification, check_holevo_bound
from qbnet_entropy.instances import (
    ChainNetInstance,
    ClassicalChainInstance,
    EnsembleInstance,
    FunctionInstance,
    HolevoBoundInstance,
    IsometryInstance,
    MreClassicalInstance,
    MreQuantumInstance,
    PureInstance,
    StateInstance,
    TriNodeInstance,
    UnitalInstance,
    ensemble_sampler,
    sample_chain_net,
    sample_function,
    sample_function_chain,
    sample_holevo_bound,
    sample_isometry,
    sample_markov_chain,
    sample_mre_classical,
    sample_mre_quantum,
    sample_pure,
    sample_trinode,
    sample_unital,
    state_sampler,
)
from qbnet_entropy.netmodel import (
    Marking,
    Node,
    QBNet,
    b_label,
    classicize,
    classicize_all,
    compile_density,
)
from qbnet_entropy.purestate import check_pure_identities, pure_ket, purify
from qbnet_entropy.tensor_core import (
    LabeledState,
    SubsystemLayout,
    partial_trace,
    reorder,
    tensor_product,
)
from qbnet_entropy.types import InstanceSampler, Label, RealArray
from qbnet_entropy.verdicts import (
    CheckVerdict,
    aggregate,
    at_most,
    composite,
    equal,
    strictly_below,
)

logger = logging.getLogger(__name__)

TRINODE_TOL = 1e-8
"""Tolerance of the tri-node conditional-independence identities."""


class InequalityId(StrEnum):
    """Identifiers of the registered checks."""

    MI_NONNEG = "mi_nonneg"
    CMI_NONNEG = "cmi_nonneg"
    ARAKI_LIEB = "araki_lieb"
    COND_BOUNDS = "cond_bounds"
    UNITAL_MONOTONE = "unital_monotone"
    FUNCTION_DECREASE = "function_decrease"
    ENTROPY_MEASUREMENT = "entropy_measurement"
    ENTROPY_PREPARATION = "entropy_preparation"
    DP_CLASSICAL = "dp_classical"
    DP_FUNCTION = "dp_function"
    DP_SINGLE_GRAPH = "dp_single_graph"
    DP_MULTIGRAPH = "dp_multigraph"
    COND_ON_CLASSICAL = "cond_on_classical"
    CLONE_MERGE = "clone_merge"
    TRINODE_CMI_ZERO = "trinode_cmi_zero"
    ISOMETRY_TRACE = "isometry_trace"
    HOLEVO_IS_MI = "holevo_is_mi"
    MRE_CLASSICAL = "mre_classical"
    MRE_QUANTUM = "mre_quantum"
    MRE_DIAGONAL_REDUCTION = "mre_diagonal_reduction"
    ARAKI_LIEB_PURIFICATION = "araki_lieb_purification"
    HOLEVO_BOUND = "holevo_bound"
    PURE_IDENTITIES = "pure_identities"


def _entropy(state: LabeledState) -> Callable[..., float]:
    entropy_of = state_entropy_fn(state)

    def s(*labels: Label) -> float:
        return entropy_of(frozenset(labels))

    return s


# relative entropy monotonicity


def check_mre_classical(
    t: RealArray,
    p: ProbDist | RealArray,
    q: ProbDist | RealArray,
) -> CheckVerdict:
    """D(Tp//Tq) ≤ D(p//q) for a column-stochastic T(b|a).

    An infinite right-hand side always passes.

    Raises:
        ChannelError: If `t` is not column-stochastic.
        DimensionError: If p or q do not live on T's input.
    """
    matrix = check_stochastic(t)
    pv = p.probabilities if isinstance(p, ProbDist) else np.asarray(p, dtype=np.float64).ravel()
    qv = q.probabilities if isinstance(q, ProbDist) else np.asarray(q, dtype=np.float64).ravel()
    if pv.size != matrix.shape[1] or qv.size != matrix.shape[1]:
        msg = f"distributions of sizes {pv.size}, {qv.size} for a T with {matrix.shape[1]} inputs"
        raise DimensionError(msg)
    return at_most(
        InequalityId.MRE_CLASSICAL,
        classical_relative_entropy(matrix @ pv, matrix @ qv),
        classical_relative_entropy(pv, qv),
        label="D(Tp//Tq) <= D(p//q)",
    )


def _push(c: KrausChannel, state: LabeledState) -> LabeledState:
    reshaped = c.out_dim != c.in_dim and len(state.layout) > 1
    return apply_channel(c, state, output_label="out" if reshaped else None)


def check_mre_quantum(c: KrausChannel, rho: LabeledState, sigma: LabeledState) -> CheckVerdict:
    """D(T(ρ)//T(σ)) ≤ D(ρ//σ) for a channel acting on the whole space.

    Raises:
        LayoutError: If ρ and σ have different layouts.
        DimensionError: If the channel input does not match.
        ChannelError: If the channel is not complete.
    """
    rhs = quantum_relative_entropy(rho, sigma)
    lhs = quantum_relative_entropy(_push(c, rho), _push(c, sigma))
    label = "D(T(rho)//T(sigma)) <= D(rho//sigma)"
    return at_most(InequalityId.MRE_QUANTUM, lhs, rhs, label=label)


def _mre_classical(inst: MreClassicalInstance) -> CheckVerdict:
    return check_mre_classical(inst.transition, inst.p, inst.q)


def _mre_quantum(inst: MreQuantumInstance) -> CheckVerdict:
    return check_mre_quantum(inst.channel, inst.rho, inst.sigma)


def _mre_diagonal_reduction(inst: MreClassicalInstance) -> CheckVerdict:
    t = check_stochastic(inst.transition)
    channel = channel_from_stochastic(t)
    layout = SubsystemLayout.of(("a", t.shape[1]))
    rho = LabeledState.from_diagonal(layout, inst.p.probabilities)
    sigma = LabeledState.from_diagonal(layout, inst.q.probabilities)
    pushed = [apply_channel(channel, s, output_label="b") for s in (rho, sigma)]
    check_id = InequalityId.MRE_DIAGONAL_REDUCTION
    return composite(
        check_id,
        [
            equal(
                check_id,
                quantum_relative_entropy(*pushed),
                classical_relative_entropy(t @ inst.p.probabilities, t @ inst.q.probabilities),
                label="D(T(rho)//T(sigma)) = D(Tp//Tq)",
            ),
            equal(
                check_id,
                quantum_relative_entropy(rho, sigma),
                classical_relative_entropy(inst.p, inst.q),
                label="D(rho//sigma) = D(p//q)",
            ),
        ],
    )


# subadditivity family


def _mi_nonneg(inst: StateInstance) -> CheckVerdict:
    s = _entropy(inst.state)
    return at_most(
        InequalityId.MI_NONNEG,
        s("a", "b"),
        s("a") + s("b"),
        label="S(a,b) <= S(a) + S(b)",
    )


def _cmi_nonneg(inst: StateInstance) -> CheckVerdict:
    rho = inst.state
    check_id = InequalityId.CMI_NONNEG
    cmi = quantum_entropy("S(b:a|e)", rho)

    b_mixed = LabeledState.maximally_mixed(rho.layout.restrict(["b"]))
    abe = partial_trace(rho, ["a", "b", "e"])
    be = partial_trace(rho, ["b", "e"])
    abe_ref = reorder(tensor_product(partial_trace(rho, ["a", "e"]), b_mixed), abe.labels)
    be_ref = reorder(tensor_product(partial_trace(rho, ["e"]), b_mixed), be.labels)
    difference = quantum_relative_entropy(abe, abe_ref) - quantum_relative_entropy(be, be_ref)

    return composite(
        check_id,
        [
            at_most(check_id, 0.0, cmi, label="0 <= S(b:a|e)"),
            equal(
                check_id,
                cmi,
                difference,
                label="S(a:b|e) = D(abe//ae.I_b/N_b) - D(be//e.I_b/N_b)",
            ),
        ],
    )


def _araki_lieb(inst: StateInstance) -> CheckVerdict:
    s = _entropy(inst.state)
    return at_most(
        InequalityId.ARAKI_LIEB,
        abs(s("a") - s("b")),
        s("a", "b"),
        label="|S(a) - S(b)| <= S(a,b)",
    )


def _araki_lieb_purification(inst: StateInstance) -> CheckVerdict:
    check_id = InequalityId.ARAKI_LIEB_PURIFICATION
    s = _entropy(purify(partial_trace(inst.state, ["a", "b"]), "e"))
    return composite(
        check_id,
        [
            equal(check_id, s("b", "e"), s("a"), label="S(b,e) = S(a)"),
            equal(check_id, s("e"), s("a", "b"), label="S(e) = S(a,b)"),
            at_most(check_id, s("b", "e"), s("b") + s("e"), label="S(b,e) <= S(b) + S(e)"),
            at_most(check_id, abs(s("a") - s("b")), s("a", "b"), label="|S(a) - S(b)| <= S(a,b)"),
        ],
    )


def _cond_bounds(inst: StateInstance) -> CheckVerdict:
    check_id = InequalityId.COND_BOUNDS
    s = _entropy(inst.state)
    conditional = s("a", "b") - s("a")
    p = diagonal_distribution(partial_trace(inst.state, ["a", "b"]))
    h_conditional = classical_entropy("H(b|a)", p)
    return composite(
        check_id,
        [
            at_most(check_id, -s("b"), conditional, label="-S(b) <= S(b|a)"),
            at_most(check_id, conditional, s("b"), label="S(b|a) <= S(b)"),
            at_most(check_id, 0.0, h_conditional, label="0 <= H(b|a)"),
            at_most(check_id, h_conditional, classical_entropy("H(b)", p), label="H(b|a) <= H(b)"),
        ],
    )


# entropy-increasing maps


def _unital_monotone(inst: UnitalInstance) -> CheckVerdict:
    check_id = InequalityId.UNITAL_MONOTONE
    if not is_unital(inst.channel):
        msg = f"{check_id} needs a unital channel"
        raise ChannelError(msg)
    t = check_stochastic(inst.transition, doubly=True)
    rho = inst.state
    entropy = von_neumann(rho)
    dim = rho.dim
    p = inst.dist.probabilities
    return composite(
        check_id,
        [
            at_most(
                check_id,
                entropy,
                von_neumann(_push(inst.channel, rho)),
                label="S(rho) <= S(T(rho))",
            ),
            at_most(check_id, shannon_entropy(p), shannon_entropy(t @ p), label="H(p) <= H(Tp)"),
            equal(
                check_id,
                entropy,
                math.log(dim)
                - quantum_relative_entropy(rho, LabeledState.maximally_mixed(rho.layout)),
                label="S(rho) = ln N - D(rho//I/N)",
            ),
        ],
    )


def _function_decrease(inst: FunctionInstance) -> CheckVerdict:
    check_id = InequalityId.FUNCTION_DECREASE
    f = check_stochastic(inst.function)
    if not np.all((f == 0.0) | (f == 1.0)):
        msg = f"{check_id} needs a 0/1 function matrix"
        raise ChannelError(msg)
    joint = ProbDist(("x", "y"), inst.dist.probabilities[:, None] * f.T)
    h_y = classical_entropy("H(y)", joint)
    return composite(
        check_id,
        [
            at_most(check_id, h_y, classical_entropy("H(x)", joint), label="H(f(x)) <= H(x)"),
            equal(check_id, classical_entropy("H(y:x)", joint), h_y, label="H(f(x):x) = H(f(x))"),
        ],
    )


def _entropy_measurement(inst: StateInstance) -> CheckVerdict:
    check_id = InequalityId.ENTROPY_MEASUREMENT
    rho = partial_trace(inst.state, ["b", "a"])
    measured = classicize(rho, "a")
    s, s_cl = _entropy(rho), _entropy(measured)
    diagonal = shannon_entropy(diagonal_distribution(rho).probabilities)
    return composite(
        check_id,
        [
            at_most(check_id, s("a", "b"), diagonal, label="S(rho) <= H{<x|rho|x>}"),
            at_most(check_id, s("a", "b"), s_cl("a", "b"), label="S(b,a) <= S(b,a_cl)"),
            at_most(
                check_id,
                quantum_entropy("S(b:a)", measured),
                quantum_entropy("S(b:a)", rho),
                label="S(b:a_cl) <= S(b:a)",
            ),
        ],
    )


def _entropy_preparation(inst: EnsembleInstance) -> CheckVerdict:
    check_id = InequalityId.ENTROPY_PREPARATION
    e = inst.ensemble
    weights = e.weights.probabilities
    kets = np.column_stack([pure_ket(state) for state in e.states])[:, weights > 0]
    gram_error = np.abs(kets.conj().T @ kets - np.eye(kets.shape[1]))
    orthonormal = float(np.max(gram_error)) < ORTHONORMAL_TOL
    s_avg, h_w = von_neumann(e.average_state()), shannon_entropy(weights)

    if orthonormal:
        condition = equal(check_id, s_avg, h_w, label="S = H{w} for orthonormal psi_j")
    else:
        condition = strictly_below(
            check_id,
            s_avg,
            h_w,
            gap=PASS_TOL,
            label="S < H{w} for non-orthonormal psi_j",
        )
    return composite(
        check_id,
        [at_most(check_id, s_avg, h_w, label="S(sum_j w_j psi_j) <= H{w}"), condition],
    )


def _cond_on_classical(inst: StateInstance) -> CheckVerdict:
    check_id = InequalityId.COND_ON_CLASSICAL
    rho = partial_trace(inst.state, ["b", "a"])
    measured = quantum_entropy("S(b|a)", classicize(rho, "a"))
    return composite(
        check_id,
        [
            at_most(check_id, 0.0, measured, label="0 <= S(b|a_cl)"),
            at_most(
                check_id,
                quantum_entropy("S(b|a)", rho),
                measured,
                label="S(b|a) <= S(b|a_cl)",
            ),
        ],
    )


# data processing


def _dp_classical(inst: ClassicalChainInstance) -> CheckVerdict:
    a, b, c = inst.variables[:3]
    joint = inst.joint()
    return at_most(
        InequalityId.DP_CLASSICAL,
        classical_entropy(f"H({c}:{a})", joint),
        classical_entropy(f"H({b}:{a})", joint),
        label=f"H({c}:{a}) <= H({b}:{a})",
    )


def _dp_function(inst: ClassicalChainInstance) -> CheckVerdict:
    check_id = InequalityId.DP_FUNCTION
    a, x, y, b = inst.variables[:4]
    joint = inst.joint()

    def h(text: str) -> float:
        return classical_entropy(text, joint)

    return composite(
        check_id,
        [
            at_most(check_id, h(f"H({y}:{a})"), h(f"H({x}:{a})"), label="H(f(x):a) <= H(x:a)"),
            at_most(check_id, h(f"H({b}:{x})"), h(f"H({b}:{y})"), label="H(b:x) <= H(b:f(x))"),
        ],
    )


def _chain_mi_classical(rho: LabeledState, b: Label) -> float:
    return quantum_entropy(f"S({b}:a)", classicize(partial_trace(rho, ["a", b]), b))


def _dp_single_graph(inst: ChainNetInstance) -> CheckVerdict:
    check_id = InequalityId.DP_SINGLE_GRAPH
    if inst.length < 2:  # noqa: PLR2004
        msg = f"{check_id} needs a chain of at least 2 links, got {inst.length}"
        raise InstanceShapeError(msg)
    rho = compile_density(inst.net(2, Marking.VISIBLE))
    b0, b1, b2 = (b_label(k) for k in range(3))
    mi = {b: _chain_mi_classical(rho, b) for b in (b0, b1, b2)}
    middle = classicize_all(partial_trace(rho, ["a", b1, b2]), [b1, b2])
    return composite(
        check_id,
        [
            at_most(check_id, mi[b2], mi[b1], label=f"S({b2}_cl:a) <= S({b1}_cl:a)"),
            at_most(check_id, mi[b1], mi[b0], label=f"S({b1}_cl:a) <= S({b0}_cl:a)"),
            equal(
                check_id,
                quantum_entropy(f"S({b2}:a|{b1})", middle),
                0.0,
                label=f"S({b2}:a|{b1}) = 0",
            ),
        ],
    )


def _dp_multigraph(inst: ChainNetInstance) -> CheckVerdict:
    check_id = InequalityId.DP_MULTIGRAPH
    mi = [
        quantum_entropy(f"S({b_label(j)}:a)", compile_density(inst.net(j)))
        for j in range(inst.length + 1)
    ]
    return composite(
        check_id,
        [
            at_most(
                check_id,
                mi[j + 1],
                mi[j],
                label=f"S({b_label(j + 1)}:a) in rho^({j + 1}) <= S({b_label(j)}:a) in rho^({j})",
            )
            for j in range(inst.length)
        ],
    )


# classical structure inside quantum states


def _clone_merge(inst: EnsembleInstance) -> CheckVerdict:
    check_id = InequalityId.CLONE_MERGE
    state = clone_cq_state(inst.ensemble, "a", "a2")
    q = inst.ensemble.layout.labels
    s = _entropy(state)
    p = diagonal_distribution(partial_trace(state, ["a", "a2"]))
    h_a = classical_entropy("H(a)", p)
    return composite(
        check_id,
        [
            equal(check_id, s(*q, "a", "a2"), s(*q, "a"), label="S(b,a,a2) = S(b,a)"),
            equal(
                check_id,
                s(*q, "a", "a2") - s("a2"),
                s(*q, "a") - s("a"),
                label="S(b,a|a2) = S(b|a)",
            ),
            equal(check_id, classical_entropy("H(a,a2)", p), h_a, label="H(a,a2) = H(a)"),
            equal(check_id, classical_entropy("H(a:a2)", p), h_a, label="H(a:a2) = H(a)"),
        ],
    )


def _trinode_cmi_zero(inst: TriNodeInstance) -> CheckVerdict:
    check_id = InequalityId.TRINODE_CMI_ZERO
    parts = [
        equal(
            check_id,
            quantum_entropy("S(a:b|e)", classicize(compile_density(net), "e")),
            0.0,
            label="S(a:b|e_cl) = 0",
            tolerance=TRINODE_TOL,
        )
        for net in inst.nets
    ]
    parts += [
        equal(
            check_id,
            classical_entropy("H(a:b|e)", diagonal_distribution(compile_density(net))),
            0.0,
            label="H(a:b|e) = 0",
            tolerance=TRINODE_TOL,
        )
        for net in inst.classical_nets
    ]
    return composite(check_id, parts)


def _isometry_trace(inst: IsometryInstance) -> CheckVerdict:
    check_id = InequalityId.ISOMETRY_TRACE
    ab = partial_trace(compile_density(inst.chain), ["a", "b"])
    collapsed = compile_density(inst.collapse)
    return composite(
        check_id,
        [
            equal(
                check_id,
                von_neumann(ab),
                von_neumann(classicize(ab, "b")),
                label="S(b,a) = S(b_cl,a)",
            ),
            equal(
                check_id,
                von_neumann(collapsed),
                von_neumann(classicize(collapsed, "a")),
                label="S(a) = S(a_cl)",
            ),
        ],
    )


def _holevo_is_mi(inst: EnsembleInstance) -> CheckVerdict:
    check_id = InequalityId.HOLEVO_IS_MI
    e = inst.ensemble
    hol = holevo_information(e)
    cq = _entropy(cq_state(e, "x"))
    q = e.layout.labels
    purified = quantum_entropy("S(q:x)", build_purification(e))
    return composite(
        check_id,
        [
            equal(check_id, hol, cq(*q) + cq("x") - cq(*q, "x"), label="Hol = S(q:x_cl)"),
            equal(check_id, hol, purified, label="Hol = S(q:x_cl) on the purification net"),
        ],
    )


def _holevo_bound(inst: HolevoBoundInstance) -> CheckVerdict:
    return check_holevo_bound(inst.ensemble, inst.samples, inst.seed)


def _pure_identities(inst: PureInstance) -> CheckVerdict:
    blocks = len(inst.partition)
    return aggregate(
        check_pure_identities(inst.state, inst.partition),
        label=f"partial-entropy identities of a pure state on {blocks} blocks",
    )


@dataclass(frozen=True)
class RegistryEntry:
    """One registered check.

    Attributes:
        id: Identifier.
        instance_type: Type of instance `check` accepts.
        check: Checker returning one verdict.
        sample: Seeded sampler of random instances.
        arity: Number of subsystem dimensions `sample` reads.
        description: One-line statement of the claim.
    """

    id: InequalityId
    instance_type: type
    check: Callable[[Any], CheckVerdict]
    sample: InstanceSampler
    arity: int
    description: str


_ENTRIES = (
    RegistryEntry(
        InequalityId.MI_NONNEG,
        StateInstance,
        _mi_nonneg,
        state_sampler(("a", "b")),
        2,
        "S(a,b) <= S(a) + S(b)",
    ),
    RegistryEntry(
        InequalityId.CMI_NONNEG,
        StateInstance,
        _cmi_nonneg,
        state_sampler(("a", "b", "e")),
        3,
        "S(b:a|e) >= 0",
    ),
    RegistryEntry(
        InequalityId.ARAKI_LIEB,
        StateInstance,
        _araki_lieb,
        state_sampler(("a", "b")),
        2,
        "|S(a) - S(b)| <= S(a,b)",
    ),
    RegistryEntry(
        InequalityId.COND_BOUNDS,
        StateInstance,
        _cond_bounds,
        state_sampler(("a", "b")),
        2,
        "-S(b) <= S(b|a) <= S(b); 0 <= H(b|a) <= H(b)",
    ),
    RegistryEntry(
        InequalityId.UNITAL_MONOTONE,
        UnitalInstance,
        _unital_monotone,
        sample_unital,
        1,
        "S(T(rho)) >= S(rho) for unital T; H(Tp) >= H(p) for doubly stochastic T",
    ),
    RegistryEntry(
        InequalityId.FUNCTION_DECREASE,
        FunctionInstance,
        _function_decrease,
        sample_function,
        2,
        "H(f(x)) <= H(x); H(f(x):x) = H(f(x))",
    ),
    RegistryEntry(
        InequalityId.ENTROPY_MEASUREMENT,
        StateInstance,
        _entropy_measurement,
        state_sampler(("b", "a")),
        2,
        "H{<x|rho|x>} >= S(rho); S(b,a_cl) >= S(b,a); S(b:a_cl) <= S(b:a)",
    ),
    RegistryEntry(
        InequalityId.ENTROPY_PREPARATION,
        EnsembleInstance,
        _entropy_preparation,
        ensemble_sampler(pure=True),
        2,
        "H{w} >= S(sum_j w_j psi_j)",
    ),
    RegistryEntry(
        InequalityId.DP_CLASSICAL,
        ClassicalChainInstance,
        _dp_classical,
        sample_markov_chain,
        3,
        "H(c:a) <= H(b:a) on a -> b -> c",
    ),
    RegistryEntry(
        InequalityId.DP_FUNCTION,
        ClassicalChainInstance,
        _dp_function,
        sample_function_chain,
        4,
        "H(f(x):a) <= H(x:a); H(b:x) <= H(b:f(x))",
    ),
    RegistryEntry(
        InequalityId.DP_SINGLE_GRAPH,
        ChainNetInstance,
        _dp_single_graph,
        sample_chain_net,
        3,
        "S(b2_cl:a) <= S(b1_cl:a) <= S(b_cl:a) on rho^(2)",
    ),
    RegistryEntry(
        InequalityId.DP_MULTIGRAPH,
        ChainNetInstance,
        _dp_multigraph,
        sample_chain_net,
        3,
        "S(b_(j+1):a) <= S(b_j:a) across rho^(j)",
    ),
    RegistryEntry(
        InequalityId.COND_ON_CLASSICAL,
        StateInstance,
        _cond_on_classical,
        state_sampler(("b", "a")),
        2,
        "S(b|a_cl) >= max(0, S(b|a))",
    ),
    RegistryEntry(
        InequalityId.CLONE_MERGE,
        EnsembleInstance,
        _clone_merge,
        ensemble_sampler(pure=False),
        2,
        "S(b,a,a2) = S(b,a); S(b,a|a2) = S(b|a); H(a,a2) = H(a:a2) = H(a)",
    ),
    RegistryEntry(
        InequalityId.TRINODE_CMI_ZERO,
        TriNodeInstance,
        _trinode_cmi_zero,
        sample_trinode,
        3,
        "S(a:b|e_cl) = 0 on fan-out and Markov nets",
    ),
    RegistryEntry(
        InequalityId.ISOMETRY_TRACE,
        IsometryInstance,
        _isometry_trace,
        sample_isometry,
        3,
        "S(b,a) = S(b_cl,a) after tracing isometry outputs",
    ),
    RegistryEntry(
        InequalityId.HOLEVO_IS_MI,
        EnsembleInstance,
        _holevo_is_mi,
        ensemble_sampler(pure=False),
        2,
        "Hol = S(q:x_cl)",
    ),
    RegistryEntry(
        InequalityId.MRE_CLASSICAL,
        MreClassicalInstance,
        _mre_classical,
        sample_mre_classical,
        2,
        "D(Tp//Tq) <= D(p//q)",
    ),
    RegistryEntry(
        InequalityId.MRE_QUANTUM,
        MreQuantumInstance,
        _mre_quantum,
        sample_mre_quantum,
        2,
        "D(T(rho)//T(sigma)) <= D(rho//sigma)",
    ),
    RegistryEntry(
        InequalityId.MRE_DIAGONAL_REDUCTION,
        MreClassicalInstance,
        _mre_diagonal_reduction,
        sample_mre_classical,
        2,
        "quantum D through an embedded classical channel = classical D",
    ),
    RegistryEntry(
        InequalityId.ARAKI_LIEB_PURIFICATION,
        StateInstance,
        _araki_lieb_purification,
        state_sampler(("a", "b")),
        2,
        "S(b,e) = S(a); S(e) = S(a,b) for a purification e",
    ),
    RegistryEntry(
        InequalityId.HOLEVO_BOUND,
        HolevoBoundInstance,
        _holevo_bound,
        sample_holevo_bound,
        2,
        "S(y2:x_cl) <= S(q2,y2:x_cl) <= Hol",
    ),
    RegistryEntry(
        InequalityId.PURE_IDENTITIES,
        PureInstance,
        _pure_identities,
        sample_pure,
        4,
        "partial-entropy identities of pure states",
    ),
)

REGISTRY: dict[InequalityId, RegistryEntry] = {entry.id: entry for entry in _ENTRIES}
"""Every registered check, in reporting order."""


def get_entry(check_id: InequalityId | str) -> RegistryEntry:
    """Registry entry of an id.

    Raises:
        ConfigError: If the id is not registered.
    """
    try:
        return REGISTRY[InequalityId(check_id)]
    except ValueError:
        known = ", ".join(REGISTRY)
        msg = f"unknown inequality id {check_id!r}; known ids: {known}"
        raise ConfigError(msg) from None


def resolve_ids(ids: Sequence[str]) -> list[InequalityId]:
    """Expand "all" and check every id, keeping first-seen order.

    Raises:
        ConfigError: If an id is not registered.
    """
    resolved: list[InequalityId] = []
    for check_id in ids:
        expanded = list(REGISTRY) if check_id == ALL_IDS else [get_entry(check_id).id]
        resolved.extend(x for x in expanded if x not in resolved)
    return resolved


def check_entropic(check_id: InequalityId | str, instance: object) -> CheckVerdict:
    """Run one registered check on one instance.

    Raises:
        ConfigError: If the id is not registered.
        InstanceShapeError: If the instance is not of the id's instance type.
    """
    entry = get_entry(check_id)
    if not isinstance(instance, entry.instance_type):
        msg = (
            f"{entry.id} expects a {entry.instance_type.__name__}, "
            f"got {type(instance).__name__}"
        )
        raise InstanceShapeError(msg)
    return entry.check(instance)


# counterexamples

CLONE_ENTANGLED = "clone_entangled"
CLONE_PURE_TRIPLE = "clone_pure_triple"
TRINODE_COLLIDER = "trinode_collider"


def _collider_net() -> QBNet:
    xor = np.zeros((2, 4))
    for a in range(2):
        for b in range(2):
            xor[a ^ b, 2 * a + b] = 1.0
    return QBNet(
        (
            Node.from_probabilities("a", [0.5, 0.5]),
            Node.from_probabilities("b", [0.5, 0.5]),
            Node.from_probabilities("e", xor, ("a", "b")),
        ),
    )


def counterexample_suite() -> list[CheckVerdict]:
    """Naive identities that fail, each as a verdict expected to fail.

    - A maximally entangled "clone": S(a,a2) = 0 while S(a) = ln 2, so
      S(a,a2) = S(a) fails.
    - The pure state Σ_a 2^{-1/2} |φ_a⟩_b |a⟩|a⟩ with φ₀ = |0⟩, φ₁ = |+⟩:
      S(b,a,a2) = 0 while S(b,a) = ln 2.
    - The classical collider a → e ← b with e = a XOR b of two fair bits:
      H(a:b|e) = ln 2, not 0.
    """
    bell = LabeledState.from_ket(SubsystemLayout.of(("a", 2), ("a2", 2)), [1, 0, 0, 1])
    s_bell = _entropy(bell)

    phi = np.array([[1.0, 0.0], [1.0, 1.0]]) / np.array([[1.0], [math.sqrt(2)]])
    ket = np.zeros((2, 2, 2))
    for a in range(2):
        ket[:, a, a] = phi[a] / math.sqrt(2)
    triple = LabeledState.from_ket(SubsystemLayout.of(("b", 2), ("a", 2), ("a2", 2)), ket)
    s_triple = _entropy(triple)

    collider = diagonal_distribution(compile_density(_collider_net()))

    verdicts = [
        equal(CLONE_ENTANGLED, s_bell("a", "a2"), s_bell("a"), label="S(a,a2) = S(a)"),
        equal(
            CLONE_PURE_TRIPLE,
            s_triple("b", "a", "a2"),
            s_triple("b", "a"),
            label="S(b,a,a2) = S(b,a)",
        ),
        equal(
            TRINODE_COLLIDER,
            classical_entropy("H(a:b|e)", collider),
            0.0,
            label="H(a:b|e) = 0",
            tolerance=TRINODE_TOL,
        ),
    ]
    verdicts = [v.as_counterexample() for v in verdicts]
    for v in verdicts:
        if not v.as_expected:
            logger.warning("counterexample %s unexpectedly holds: %s", v.id, v.label)
    return verdicts
