"""Classical and quantum Bayesian nets and their compilation to density matrices.

A net is a DAG of nodes. Each node carries an amplitude table A(x | parents)
and a marking that says what happens to it when the net is compiled:

- visible: the node is a subsystem of the compiled state;
- slashed: the node's index is summed inside the ket (coherent erasure);
- traced: the node is in the ket and traced out of the density matrix;
- classical: the node is kept and dephased in its computational basis.

Compilation builds the ket ψ(v) = Σ_slashed Π_nodes A(x_node | pa), forms
|ψ⟩⟨ψ| with traced nodes summed out, and dephases the classical nodes.
"""

import logging
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field, replace
from enum import StrEnum
from typing import Self

import numpy as np

from qbnet_entropy.config import CLIP, STATE_TOL
from qbnet_entropy.errors import DimensionError, NetError
from qbnet_entropy.tensor_core import LabeledState, SubsystemLayout
from qbnet_entropy.types import ComplexMatrix, Label

logger = logging.getLogger(__name__)

NORM_TOL = 1e-8
"""Allowed deviation of |ψ|² from 1 for nets without slashed nodes."""


class Marking(StrEnum):
    """What compilation does with a node."""

    VISIBLE = "visible"
    SLASHED = "slashed"
    TRACED = "traced"
    CLASSICAL = "classical"


@dataclass(frozen=True, eq=False)
class Node:
    """One node of a QB net.

    `amplitudes` has one row per own state and one column per parent
    assignment, parent assignments enumerated row-major over `parents` in the
    listed order. A root node has a single column (a 1-D table is accepted).
    """

    label: Label
    amplitudes: ComplexMatrix
    parents: tuple[Label, ...] = ()
    marking: Marking = Marking.VISIBLE

    def __post_init__(self) -> None:
        """Freeze the table and check the root normalization.

        Raises:
            DimensionError: If the table is not 1-D or 2-D, or is empty.
            NetError: If a root's amplitudes are not normalized.
        """
        table = np.array(self.amplitudes, dtype=np.complex128)
        if table.ndim == 1:
            table = table.reshape(-1, 1)
        if table.ndim != 2 or table.size == 0:  # noqa: PLR2004
            msg = f"node {self.label!r}: amplitude table must be a non-empty 2-D array"
            raise DimensionError(msg)
        table.flags.writeable = False
        object.__setattr__(self, "amplitudes", table)
        object.__setattr__(self, "parents", tuple(self.parents))
        object.__setattr__(self, "marking", Marking(self.marking))

        if not self.parents:
            if table.shape[1] != 1:
                msg = f"root node {self.label!r} must have a single amplitude column"
                raise DimensionError(msg)
            norm = float(np.sum(np.abs(table) ** 2))
            if abs(norm - 1.0) > STATE_TOL:
                msg = f"root node {self.label!r} has Σ|A|² = {norm:.12g}, expected 1"
                raise NetError(msg)

    @classmethod
    def from_probabilities(
        cls,
        label: Label,
        probabilities: object,
        parents: Sequence[Label] = (),
        marking: Marking = Marking.CLASSICAL,
    ) -> Self:
        """Node of a classical net: amplitudes √P(x | parents), dephased by default."""
        table = np.asarray(probabilities, dtype=np.float64)
        if np.any(table < 0):
            msg = f"node {label!r}: negative probabilities"
            raise NetError(msg)
        return cls(label, np.sqrt(table), tuple(parents), marking)

    @property
    def state_count(self) -> int:
        """Number of states of the node."""
        return int(self.amplitudes.shape[0])

    def with_marking(self, marking: Marking) -> "Node":
        """Copy with another marking."""
        return replace(self, marking=marking)


@dataclass(frozen=True, eq=False)
class QBNet:
    """A DAG of `Node`s; edges are implied by each node's parents.

    Example:
        >>> import numpy as np
        >>> root = Node("a", np.full(2, 2**-0.5))
        >>> copy = Node("a2", np.eye(2), parents=("a",))
        >>> compile_density(QBNet((root, copy))).labels
        ('a', 'a2')
    """

    nodes: tuple[Node, ...]
    _order: tuple[Label, ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        """Check labels, parent references, table widths and acyclicity.

        Raises:
            NetError: On any structural problem.
            DimensionError: If a table width does not match its parents.
        """
        object.__setattr__(self, "nodes", tuple(self.nodes))
        by_label: dict[Label, Node] = {}
        for node in self.nodes:
            if node.label in by_label:
                msg = f"duplicate node label {node.label!r}"
                raise NetError(msg)
            by_label[node.label] = node

        for node in self.nodes:
            for parent in node.parents:
                if parent not in by_label:
                    msg = f"node {node.label!r} references unknown parent {parent!r}"
                    raise NetError(msg)
            expected = int(np.prod([by_label[p].state_count for p in node.parents], dtype=np.int64))
            if node.amplitudes.shape[1] != expected:
                msg = (
                    f"node {node.label!r} has {node.amplitudes.shape[1]} amplitude columns, "
                    f"its parents need {expected}"
                )
                raise DimensionError(msg)

        object.__setattr__(self, "_order", _topological_order(self.nodes))

    @property
    def labels(self) -> tuple[Label, ...]:
        """Node labels in declaration order."""
        return tuple(node.label for node in self.nodes)

    def node(self, label: Label) -> Node:
        """Look up a node.

        Raises:
            NetError: If there is no such node.
        """
        for node in self.nodes:
            if node.label == label:
                return node
        msg = f"unknown node {label!r}; net has {list(self.labels)}"
        raise NetError(msg)

    def topological_order(self) -> tuple[Label, ...]:
        """Labels in a stable topological order (declaration order breaks ties)."""
        return self._order

    def children(self, label: Label) -> tuple[Label, ...]:
        """Labels of the nodes that list `label` as a parent."""
        self.node(label)
        return tuple(n.label for n in self.nodes if label in n.parents)

    def with_markings(self, markings: Mapping[Label, Marking]) -> "QBNet":
        """Copy with some nodes re-marked."""
        for label in markings:
            self.node(label)
        return QBNet(
            tuple(
                n.with_marking(markings[n.label]) if n.label in markings else n for n in self.nodes
            ),
        )

    def with_marking(self, label: Label, marking: Marking) -> "QBNet":
        """Copy with one node re-marked."""
        return self.with_markings({label: marking})


def _topological_order(nodes: Sequence[Node]) -> tuple[Label, ...]:
    pending = {node.label: set(node.parents) for node in nodes}
    order: list[Label] = []
    while pending:
        ready = [node.label for node in nodes if node.label in pending and not pending[node.label]]
        if not ready:
            msg = f"net has a cycle among {sorted(pending)}"
            raise NetError(msg)
        label = ready[0]
        order.append(label)
        del pending[label]
        for parents in pending.values():
            parents.discard(label)
    return tuple(order)


def classicize(state: LabeledState, label: Label) -> LabeledState:
    """Dephase one subsystem in its computational basis.

    ρ ↦ Σ_x (I ⊗ |x⟩⟨x| ⊗ I) ρ (I ⊗ |x⟩⟨x| ⊗ I): the entries that are
    off-diagonal in the named subsystem are set to zero.

    Raises:
        LayoutError: If the label is unknown.
    """
    layout = state.layout
    position = layout.index(label)
    n = len(layout)
    dim = layout.dims[position]
    shape = [1] * (2 * n)
    shape[position] = dim
    shape[n + position] = dim
    mask = np.eye(dim).reshape(shape)
    dephased = state.tensor() * mask
    return LabeledState(layout, dephased.reshape(layout.total_dim, layout.total_dim))


def classicize_all(state: LabeledState, labels: Iterable[Label]) -> LabeledState:
    """Dephase each of the given subsystems."""
    for label in labels:
        state = classicize(state, label)
    return state


def compile_ket(net: QBNet) -> tuple[SubsystemLayout, ComplexMatrix]:
    """The net's unnormalized ket over every non-slashed node.

    Returns:
        The layout of the non-slashed nodes in topological order, and the ket
        as a flat vector over that layout.
    """
    order = net.topological_order()
    index_of = {label: i for i, label in enumerate(order)}
    operands: list[object] = []
    for label in order:
        node = net.node(label)
        parent_dims = [net.node(p).state_count for p in node.parents]
        operands.append(node.amplitudes.reshape([node.state_count, *parent_dims]))
        operands.append([index_of[label]] + [index_of[p] for p in node.parents])

    kept = [label for label in order if net.node(label).marking is not Marking.SLASHED]
    if not kept:
        msg = "a net with every node slashed has no state"
        raise NetError(msg)
    psi = np.einsum(*operands, [index_of[label] for label in kept])

    layout = SubsystemLayout.of(*((label, net.node(label).state_count) for label in kept))
    return layout, np.asarray(psi, dtype=np.complex128).reshape(-1)


def compile_density(net: QBNet, *, expect_unit_norm: bool = False) -> LabeledState:
    """Compile a net into a density matrix over its visible and classical nodes.

    Nets with slashed nodes are renormalized after the coherent summation.
    Nets without slashed nodes must already produce a unit-norm ket.

    Args:
        net: The net to compile.
        expect_unit_norm: Refuse to renormalize. Set it for nets whose slashed
            nodes only feed unitaries, deltas or clamped inputs, where any
            norm loss means a broken table.

    Raises:
        NetError: If the ket vanishes, is not normalized, or no node is kept.
    """
    layout, psi = compile_ket(net)
    norm2 = float(np.vdot(psi, psi).real)
    has_slashed = any(n.marking is Marking.SLASHED for n in net.nodes)
    if norm2 < CLIP:
        msg = f"net amplitudes cancel: |ψ|² = {norm2:.3g}"
        raise NetError(msg)
    if expect_unit_norm and abs(norm2 - 1.0) > STATE_TOL:
        msg = f"net ket should keep unit norm, got |ψ|² = {norm2:.12g}"
        raise NetError(msg)
    if has_slashed:
        if abs(norm2 - 1.0) > STATE_TOL:
            logger.debug("renormalizing net %s: |ψ|² = %.12g", list(net.labels), norm2)
        psi = psi / np.sqrt(norm2)
    elif abs(norm2 - 1.0) > NORM_TOL:
        msg = f"net ket is not normalized: |ψ|² = {norm2:.12g}"
        raise NetError(msg)

    kept = [
        label
        for label in layout.labels
        if net.node(label).marking in (Marking.VISIBLE, Marking.CLASSICAL)
    ]
    if not kept:
        msg = "a net needs at least one visible or classical node"
        raise NetError(msg)

    n = len(layout)
    tensor = psi.reshape(layout.dims)
    ket_subs = list(range(n))
    bra_subs = [i if label not in kept else n + i for i, label in enumerate(layout.labels)]
    out_ket = [i for i, label in enumerate(layout.labels) if label in kept]
    rho = np.einsum(tensor, ket_subs, tensor.conj(), bra_subs, out_ket + [n + i for i in out_ket])

    sub = layout.restrict(kept)
    state = LabeledState(sub, rho.reshape(sub.total_dim, sub.total_dim))
    classical = [label for label in kept if net.node(label).marking is Marking.CLASSICAL]
    logger.debug(
        "compiled net %s into %s (classical: %s)",
        list(net.labels),
        list(sub.labels),
        classical,
    )
    return classicize_all(state, classical)


def erase_vs_trace(net: QBNet, label: Label) -> tuple[LabeledState, LabeledState]:
    """Compile a net twice, once with `label` slashed and once with it traced.

    Returns:
        (erased, traced) states.

    Raises:
        NetError: If the node is unknown, a root, or not visible.
    """
    node = net.node(label)
    if not node.parents:
        msg = f"node {label!r} is a root; erase_vs_trace needs a non-root node"
        raise NetError(msg)
    if node.marking is not Marking.VISIBLE:
        msg = f"node {label!r} is {node.marking}, expected visible"
        raise NetError(msg)
    erased = compile_density(net.with_marking(label, Marking.SLASHED))
    traced = compile_density(net.with_marking(label, Marking.TRACED))
    return erased, traced


def delta_split(
    parent: Label,
    dims: Sequence[int],
    children: Sequence[Label],
    markings: Sequence[Marking],
) -> tuple[Node, ...]:
    """Nodes that copy the digits of a composite parent index into named children.

    The parent's index is read row-major over `dims`; child k gets
    A(x_k | parent) = δ(x_k, k-th digit of the parent index).
    """
    if not len(dims) == len(children) == len(markings):
        msg = f"delta split of {parent!r}: dims, children and markings differ in length"
        raise DimensionError(msg)
    total = int(np.prod(dims, dtype=np.int64))
    digits = np.array(np.unravel_index(np.arange(total), tuple(dims)))
    nodes = []
    for k, (label, dim, marking) in enumerate(zip(children, dims, markings, strict=True)):
        table = np.zeros((dim, total))
        table[digits[k], np.arange(total)] = 1.0
        nodes.append(Node(label, table, (parent,), marking))
    return tuple(nodes)


def b_label(k: int) -> Label:
    """Label of the k-th b node of a chain net ("b" for k = 0)."""
    return "b" if k == 0 else f"b{k}"


@dataclass(frozen=True)
class ChainAmplitudes:
    """Amplitudes of a chain net a → b → β₁ → … → β_j.

    Attributes:
        root: A(a).
        first: A(b | a), shape (N_b, N_a).
        links: A(β_k | b_{k-1}) with β_k = (b_k, e_k), shape (N_bk·N_ek, N_b(k-1)).
    """

    root: ComplexMatrix
    first: ComplexMatrix
    links: tuple[ComplexMatrix, ...] = ()


def build_chain_net(
    j: int,
    dims: Sequence[tuple[int, int]],
    amplitudes: ChainAmplitudes,
    *,
    intermediate: Marking | Sequence[Marking] = Marking.SLASHED,
) -> QBNet:
    """Build the chain net whose compilation is ρ^(j).

    Link k feeds b_{k-1} into an amplitude A(β_k | b_{k-1}); β_k is slashed
    and split into b_k and the environment e_k, which is traced. b_j is
    visible; the earlier b nodes (b, b₁, …, b_{j-1}) get the `intermediate`
    marking, one per node or one for all.

    Args:
        j: Number of links.
        dims: (N_bk, N_ek) for each link k = 1..j.
        amplitudes: Root, first and link tables.
        intermediate: Marking of b_0..b_{j-1}.

    Returns:
        The chain net.

    Raises:
        DimensionError: If the tables do not match `dims` or each other.
        NetError: If j is negative or an intermediate marking is not allowed.
    """
    if j < 0:
        msg = f"chain length must be >= 0, got {j}"
        raise NetError(msg)
    if len(dims) < j or len(amplitudes.links) < j:
        msg = f"chain of {j} links needs {j} link dims and tables"
        raise DimensionError(msg)
    markings = [intermediate] * j if isinstance(intermediate, Marking) else list(intermediate)
    if len(markings) != j:
        msg = f"expected {j} intermediate markings, got {len(markings)}"
        raise NetError(msg)
    if Marking.TRACED in markings:
        msg = "intermediate b nodes feed later links and cannot be traced"
        raise NetError(msg)

    root = np.asarray(amplitudes.root, dtype=np.complex128).reshape(-1)
    first = np.asarray(amplitudes.first, dtype=np.complex128)
    if first.ndim != 2 or first.shape[1] != root.size:  # noqa: PLR2004
        msg = f"A(b|a) has shape {first.shape}, expected (N_b, {root.size})"
        raise DimensionError(msg)

    def marking_of(k: int) -> Marking:
        return markings[k] if k < j else Marking.VISIBLE

    nodes: list[Node] = [
        Node("a", root),
        Node(b_label(0), first, ("a",), marking_of(0)),
    ]
    previous_dim = first.shape[0]
    for k in range(1, j + 1):
        b_dim, e_dim = dims[k - 1]
        table = np.asarray(amplitudes.links[k - 1], dtype=np.complex128)
        if table.shape != (b_dim * e_dim, previous_dim):
            msg = (
                f"link {k}: A(beta{k}|{b_label(k - 1)}) has shape {table.shape}, "
                f"expected ({b_dim * e_dim}, {previous_dim})"
            )
            raise DimensionError(msg)
        beta = f"beta{k}"
        nodes.append(Node(beta, table, (b_label(k - 1),), Marking.SLASHED))
        nodes.extend(
            delta_split(
                beta,
                (b_dim, e_dim),
                (b_label(k), f"e{k}"),
                (marking_of(k), Marking.TRACED),
            ),
        )
        previous_dim = b_dim
    return QBNet(tuple(nodes))


class TriNodeKind(StrEnum):
    """Tri-node nets without a collider."""

    FAN_OUT = "fan_out"
    MARKOV = "markov"


TRINODE_PARENTS: dict[TriNodeKind, dict[Label, tuple[Label, ...]]] = {
    TriNodeKind.FAN_OUT: {"e": ("eps0",), "a": ("e", "alpha0"), "b": ("e", "beta0")},
    TriNodeKind.MARKOV: {"b": ("beta0",), "e": ("b", "eps0"), "a": ("e", "alpha0")},
}
"""Parents of the three main nodes; every main node also has a root input and a traced output."""

TRINODE_ENVIRONMENT: dict[Label, tuple[Label, Label]] = {
    "a": ("alpha0", "alpha1"),
    "e": ("eps0", "eps1"),
    "b": ("beta0", "beta1"),
}
"""(input, output) environment labels of each main node."""


def trinode_layout(kind: TriNodeKind) -> dict[Label, tuple[Label, ...]]:
    """Parents of every node of a tri-node net, environment included, in build order."""
    parents: dict[Label, tuple[Label, ...]] = {}
    for main in ("a", "e", "b"):
        parents[TRINODE_ENVIRONMENT[main][0]] = ()
    main_order = ("e", "a", "b") if kind is TriNodeKind.FAN_OUT else ("b", "e", "a")
    for main in main_order:
        parents[main] = TRINODE_PARENTS[kind][main]
    for main in ("a", "e", "b"):
        parents[TRINODE_ENVIRONMENT[main][1]] = (main,)
    return parents


def build_trinode_net(
    kind: TriNodeKind,
    tables: Mapping[Label, ComplexMatrix],
) -> QBNet:
    """Fan-out or Markov tri-node net with root and output environments traced.

    Args:
        kind: Net shape.
        tables: Amplitude table for every node of `trinode_layout`.

    Returns:
        A net whose compiled state lives on (e, a, b) or (b, e, a), depending on
        the topological order; reorder as needed.

    Raises:
        NetError: If a table is missing.
    """
    parents = trinode_layout(kind)
    environment = {label for pair in TRINODE_ENVIRONMENT.values() for label in pair}
    nodes = []
    for label, node_parents in parents.items():
        if label not in tables:
            msg = f"missing amplitude table for tri-node {label!r}"
            raise NetError(msg)
        marking = Marking.TRACED if label in environment else Marking.VISIBLE
        nodes.append(Node(label, tables[label], node_parents, marking))
    return QBNet(tuple(nodes))
