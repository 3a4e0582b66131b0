"""Kraus-operator channels."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from typing import NamedTuple, Self

import numpy as np

from qbnet_entropy.config import CHANNEL_TOL, CLIP
from qbnet_entropy.errors import ChannelError, DimensionError
from qbnet_entropy.tensor_core import LabeledState, SubsystemLayout
from qbnet_entropy.types import ComplexMatrix, Label, RealArray

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """A channel T(ρ) = Σ_μ K_μ ρ K_μ†.

    Every Kraus operator is an out_dim × in_dim matrix. Completeness
    (Σ K†K = I) is not enforced here; see `validate_channel`.
    """

    kraus: tuple[ComplexMatrix, ...]

    def __post_init__(self) -> None:
        """Freeze the operators and check their shapes.

        Raises:
            ChannelError: If there are no operators or their shapes differ.
        """
        operators = []
        for k in self.kraus:
            op = np.array(k, dtype=np.complex128)
            if op.ndim != 2:  # noqa: PLR2004
                msg = f"Kraus operators must be matrices, got shape {op.shape}"
                raise ChannelError(msg)
            op.flags.writeable = False
            operators.append(op)
        if not operators:
            msg = "a channel needs at least one Kraus operator"
            raise ChannelError(msg)
        shapes = {op.shape for op in operators}
        if len(shapes) > 1:
            msg = f"ragged Kraus operators: shapes {sorted(shapes)}"
            raise ChannelError(msg)
        object.__setattr__(self, "kraus", tuple(operators))

    @classmethod
    def of(cls, *operators: object) -> Self:
        """Build a channel from operators given as positional arguments."""
        return cls(tuple(np.asarray(op, dtype=np.complex128) for op in operators))

    @property
    def in_dim(self) -> int:
        """Input dimension."""
        return int(self.kraus[0].shape[1])

    @property
    def out_dim(self) -> int:
        """Output dimension."""
        return int(self.kraus[0].shape[0])

    def stacked(self) -> ComplexMatrix:
        """Operators as one array of shape (count, out_dim, in_dim)."""
        return np.stack(self.kraus)


class ChannelCheck(NamedTuple):
    """Result of `validate_channel`."""

    valid: bool
    deviation: float


def validate_channel(c: KrausChannel) -> ChannelCheck:
    """Check the completeness relation Σ_μ K_μ† K_μ = I.

    Returns:
        Whether it holds within `CHANNEL_TOL` and the max-abs deviation.
    """
    ops = c.stacked()
    gram = np.einsum("moi,moj->ij", ops.conj(), ops)
    deviation = float(np.max(np.abs(gram - np.eye(c.in_dim))))
    return ChannelCheck(deviation <= CHANNEL_TOL, deviation)


def _require_valid(c: KrausChannel) -> None:
    check = validate_channel(c)
    if not check.valid:
        msg = f"Kraus operators are not complete: max |ΣK†K − I| = {check.deviation:.3g}"
        raise ChannelError(msg)


def apply_channel(
    c: KrausChannel,
    state: LabeledState,
    target: Label | None = None,
    *,
    output_label: Label | None = None,
) -> LabeledState:
    """Apply a channel to one factor of a state, identity elsewhere.

    Args:
        c: A valid channel.
        state: Input state.
        target: Factor the channel acts on; None means the whole space.
        output_label: Label of the output factor. Defaults to `target`. With
            `target=None` it collapses the output into one factor, which is
            required when the channel changes the total dimension of a
            multi-factor state.

    Returns:
        The output state; the target factor has dimension `out_dim`.

    Raises:
        ChannelError: If the channel is not complete.
        DimensionError: If the input dimension does not match.

    Example:
        >>> import numpy as np
        >>> plus = LabeledState.from_ket(SubsystemLayout.of(("q", 2)), [1, 1])
        >>> apply_channel(dephasing_channel(2), plus, "q").matrix.real
        array([[0.5, 0. ],
               [0. , 0.5]])
    """
    _require_valid(c)
    ops = c.stacked()

    if target is None:
        if state.dim != c.in_dim:
            msg = f"channel input dimension {c.in_dim} != state dimension {state.dim}"
            raise DimensionError(msg)
        out = np.einsum("moi,ij,mpj->op", ops, state.matrix, ops.conj())
        if output_label is None and len(state.layout) == 1:
            output_label = state.labels[0]
        if output_label is not None:
            layout = SubsystemLayout.of((output_label, c.out_dim))
        elif c.out_dim == c.in_dim:
            layout = state.layout
        else:
            msg = "output_label is required when a channel reshapes a multi-factor state"
            raise DimensionError(msg)
        return LabeledState(layout, out)

    layout = state.layout
    position = layout.index(target)
    if layout.dims[position] != c.in_dim:
        msg = (
            f"channel input dimension {c.in_dim} != dimension {layout.dims[position]} "
            f"of subsystem {target!r}"
        )
        raise DimensionError(msg)

    n = len(layout)
    kraus_idx, out_ket, out_bra = 2 * n, 2 * n + 1, 2 * n + 2
    rho_subs = list(range(2 * n))
    result_subs = list(rho_subs)
    result_subs[position] = out_ket
    result_subs[n + position] = out_bra
    out = np.einsum(
        ops,
        [kraus_idx, out_ket, position],
        state.tensor(),
        rho_subs,
        ops.conj(),
        [kraus_idx, out_bra, n + position],
        result_subs,
    )

    labels = list(layout.labels)
    dims = list(layout.dims)
    labels[position] = output_label or target
    dims[position] = c.out_dim
    new_layout = SubsystemLayout(tuple(labels), tuple(dims))
    return LabeledState(new_layout, out.reshape(new_layout.total_dim, new_layout.total_dim))


def is_isometry(a: ComplexMatrix) -> bool:
    """Whether Σ_y A(y|x) A*(y|x') = δ(x, x') within `CHANNEL_TOL`.

    `a` is indexed [y, x].
    """
    table = np.asarray(a, dtype=np.complex128)
    if table.ndim == 1:
        table = table.reshape(-1, 1)
    gram = table.conj().T @ table
    return bool(np.max(np.abs(gram - np.eye(table.shape[1]))) <= CHANNEL_TOL)


def is_unital(c: KrausChannel) -> bool:
    """Whether Σ_μ K_μ K_μ† = I within `CHANNEL_TOL`.

    Raises:
        ChannelError: If the channel is not square.
    """
    if c.in_dim != c.out_dim:
        msg = f"unitality needs a square channel, got {c.out_dim}x{c.in_dim}"
        raise ChannelError(msg)
    ops = c.stacked()
    total = np.einsum("mij,mkj->ik", ops, ops.conj())
    return bool(np.max(np.abs(total - np.eye(c.out_dim))) <= CHANNEL_TOL)


def stinespring_dilation(c: KrausChannel) -> ComplexMatrix:
    """Unitary U on q ⊗ y with ⟨q₂, y| U |q₁, 0⟩ = ⟨q₂| K_y |q₁⟩.

    The environment y has one state per Kraus operator. Columns (q₁, y₁ = 0)
    hold the Kraus blocks verbatim; the other columns are an orthonormal
    completion built by Gram-Schmidt over the canonical basis vectors, in
    index order.

    Raises:
        ChannelError: If the channel is not complete or not square.
    """
    _require_valid(c)
    if c.in_dim != c.out_dim:
        msg = f"a dilation unitary needs in_dim == out_dim, got {c.in_dim} -> {c.out_dim}"
        raise ChannelError(msg)
    d, m = c.in_dim, len(c.kraus)
    size = d * m
    ops = c.stacked()

    unitary = np.zeros((size, size), dtype=np.complex128)
    # row index q2*m + y, column index q1*m + y1
    fixed = ops.transpose(1, 0, 2).reshape(size, d)
    unitary[:, 0::m] = fixed

    basis = [fixed[:, k] for k in range(d)]
    free_columns = [col for col in range(size) if col % m != 0]
    candidates = iter(np.eye(size, dtype=np.complex128))
    for col in free_columns:
        for candidate in candidates:
            vector = candidate.copy()
            for _ in range(2):
                for b in basis:
                    vector -= np.vdot(b, vector) * b
            norm = np.linalg.norm(vector)
            if norm > 1e-6:  # noqa: PLR2004
                vector /= norm
                basis.append(vector)
                unitary[:, col] = vector
                break
    logger.debug("dilated %d Kraus operators on dim %d", m, d)
    return unitary


def induced_transition(c: KrausChannel) -> RealArray:
    """Classical transition matrix T(b|a) = Σ_μ |⟨b|K_μ|a⟩|², indexed [b, a]."""
    return np.asarray(np.sum(np.abs(c.stacked()) ** 2, axis=0), dtype=np.float64)


def check_stochastic(t: RealArray, *, doubly: bool = False) -> RealArray:
    """Return `t` as a float array after checking it is column-stochastic.

    Raises:
        ChannelError: On negative entries or column (and, if `doubly`, row) sums
            off by more than `CHANNEL_TOL`.
    """
    matrix = np.asarray(t, dtype=np.float64)
    if matrix.ndim != 2:  # noqa: PLR2004
        msg = f"a transition matrix must be 2-D, got shape {matrix.shape}"
        raise ChannelError(msg)
    if np.any(matrix < -CLIP):
        msg = "transition matrix has negative entries"
        raise ChannelError(msg)
    column_error = float(np.max(np.abs(matrix.sum(axis=0) - 1.0)))
    if column_error > CHANNEL_TOL:
        msg = f"transition matrix columns do not sum to 1 (max error {column_error:.3g})"
        raise ChannelError(msg)
    if doubly:
        row_error = float(np.max(np.abs(matrix.sum(axis=1) - 1.0)))
        if row_error > CHANNEL_TOL:
            msg = f"transition matrix rows do not sum to 1 (max error {row_error:.3g})"
            raise ChannelError(msg)
    return matrix


def channel_from_stochastic(t: RealArray) -> KrausChannel:
    """Embed a column-stochastic T(b|a) as Kraus operators √T(b|a)·|b⟩⟨a|.

    Zero entries contribute zero operators and are left out.
    """
    matrix = check_stochastic(t)
    out_dim, in_dim = matrix.shape
    operators = []
    for b, a in zip(*np.nonzero(matrix > 0), strict=True):
        op = np.zeros((out_dim, in_dim), dtype=np.complex128)
        op[b, a] = np.sqrt(matrix[b, a])
        operators.append(op)
    return KrausChannel(tuple(operators))


def identity_channel(dim: int) -> KrausChannel:
    """The channel with the single Kraus operator I."""
    return KrausChannel.of(np.eye(dim))


def unitary_channel(u: ComplexMatrix) -> KrausChannel:
    """The channel ρ ↦ UρU†."""
    return KrausChannel.of(u)


def dephasing_channel(dim: int) -> KrausChannel:
    """Full dephasing in the computational basis: Kraus set {|x⟩⟨x|}."""
    return KrausChannel(tuple(np.diag(row) for row in np.eye(dim)))


def projective_measurement(basis: ComplexMatrix) -> KrausChannel:
    """Kraus set {|v_y⟩⟨v_y|} for the orthonormal columns v_y of `basis`."""
    vectors = np.asarray(basis, dtype=np.complex128)
    return KrausChannel(tuple(np.outer(v, v.conj()) for v in vectors.T))


def trace_out_channel(dims: Sequence[int], keep: int) -> KrausChannel:
    """Partial trace as a channel: keep factor `keep` of a product space with `dims`.

    Kraus operators are ⟨i| on the discarded factors ⊗ I on the kept one, one
    per basis state i of the discarded factors.
    """
    if not 0 <= keep < len(dims):
        msg = f"factor {keep} out of range for dims {list(dims)}"
        raise DimensionError(msg)
    total = int(np.prod(dims, dtype=np.int64))
    kept_dim = dims[keep]
    others = [d for k, d in enumerate(dims) if k != keep]
    operators = []
    for rest in np.ndindex(*others):
        op = np.zeros((kept_dim, total), dtype=np.complex128)
        for x in range(kept_dim):
            index = [*rest[:keep], x, *rest[keep:]]
            op[x, np.ravel_multi_index(index, tuple(dims))] = 1.0
        operators.append(op)
    return KrausChannel(tuple(operators))
