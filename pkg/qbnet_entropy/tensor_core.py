"""Dense matrix algebra over labeled subsystems.

A `LabeledState` is a density matrix whose tensor factors have names. Factor
order is significant: the matrix index of a basis state is row-major over the
layout's labels, and every operation here keeps the relative order of the
labels it keeps.
"""

from collections.abc import Callable, Iterable, Iterator, Mapping
from dataclasses import dataclass
from functools import reduce
from typing import Self

import numpy as np

from qbnet_entropy.config import CLIP, MAX_TOTAL_DIM
from qbnet_entropy.errors import DimensionError, LayoutError
from qbnet_entropy.types import ComplexMatrix, Label, RealArray


def _frozen(matrix: object, dtype: type = np.complex128) -> ComplexMatrix:
    array = np.array(matrix, dtype=dtype)
    array.flags.writeable = False
    return array


@dataclass(frozen=True)
class SubsystemLayout:
    """Ordered named subsystems and their dimensions.

    Example:
        >>> layout = SubsystemLayout.of(("a", 2), ("b", 3))
        >>> layout.total_dim
        6
    """

    labels: tuple[Label, ...]
    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        """Validate labels and dimensions.

        Raises:
            LayoutError: On duplicate labels, empty layouts or an oversized space.
            DimensionError: On a label/dim count mismatch or a dimension below 1.
        """
        if len(self.labels) != len(self.dims):
            msg = f"{len(self.labels)} labels but {len(self.dims)} dims"
            raise DimensionError(msg)
        if len(set(self.labels)) != len(self.labels):
            duplicates = sorted({x for x in self.labels if self.labels.count(x) > 1})
            msg = f"duplicate subsystem labels: {duplicates}"
            raise LayoutError(msg)
        for label, dim in zip(self.labels, self.dims, strict=True):
            if dim < 1:
                msg = f"subsystem {label!r} has dimension {dim}"
                raise DimensionError(msg)
        if self.total_dim > MAX_TOTAL_DIM:
            msg = f"total dimension {self.total_dim} exceeds the cap of {MAX_TOTAL_DIM}"
            raise LayoutError(msg)

    @classmethod
    def of(cls, *pairs: tuple[Label, int]) -> Self:
        """Build a layout from (label, dim) pairs."""
        return cls(tuple(p[0] for p in pairs), tuple(int(p[1]) for p in pairs))

    @property
    def total_dim(self) -> int:
        """Product of all subsystem dimensions (1 for an empty layout)."""
        return int(np.prod(self.dims, dtype=np.int64)) if self.dims else 1

    def __iter__(self) -> Iterator[tuple[Label, int]]:
        return iter(zip(self.labels, self.dims, strict=True))

    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, label: object) -> bool:
        return label in self.labels

    def index(self, label: Label) -> int:
        """Position of a label.

        Raises:
            LayoutError: If the label is not in the layout.
        """
        try:
            return self.labels.index(label)
        except ValueError:
            msg = f"unknown subsystem {label!r}; layout has {list(self.labels)}"
            raise LayoutError(msg) from None

    def dim(self, label: Label) -> int:
        """Dimension of a labeled subsystem."""
        return self.dims[self.index(label)]

    def require(self, labels: Iterable[Label]) -> list[Label]:
        """Return `labels` as a list after checking each one exists."""
        result = list(labels)
        for label in result:
            self.index(label)
        return result

    def restrict(self, keep: Iterable[Label]) -> "SubsystemLayout":
        """Sub-layout on `keep`, in this layout's order."""
        wanted = set(self.require(keep))
        return SubsystemLayout(
            tuple(x for x in self.labels if x in wanted),
            tuple(d for x, d in self if x in wanted),
        )

    def concat(self, other: "SubsystemLayout") -> "SubsystemLayout":
        """This layout followed by `other`."""
        return SubsystemLayout(self.labels + other.labels, self.dims + other.dims)


@dataclass(frozen=True, eq=False)
class LabeledState:
    """A density matrix over a `SubsystemLayout`.

    The matrix is copied and made read-only on construction. Shape is checked
    here; the density-matrix invariants (hermiticity, unit trace, positivity)
    are checked by `qbnet_entropy.validation.check_state`, since intermediate
    results are allowed to carry float noise.
    """

    layout: SubsystemLayout
    matrix: ComplexMatrix

    def __post_init__(self) -> None:
        """Freeze the matrix and check its shape.

        Raises:
            DimensionError: If the matrix does not match the layout.
        """
        matrix = _frozen(self.matrix)
        n = self.layout.total_dim
        if matrix.shape != (n, n):
            msg = f"matrix shape {matrix.shape} does not match layout dimension {n}"
            raise DimensionError(msg)
        object.__setattr__(self, "matrix", matrix)

    @classmethod
    def from_ket(cls, layout: SubsystemLayout, ket: object) -> Self:
        """Pure state |ψ⟩⟨ψ| from a (not necessarily normalized) ket."""
        vector = np.asarray(ket, dtype=np.complex128).reshape(-1)
        if vector.size != layout.total_dim:
            msg = f"ket of length {vector.size} does not match layout dimension {layout.total_dim}"
            raise DimensionError(msg)
        norm = np.linalg.norm(vector)
        if norm <= CLIP:
            msg = "cannot build a state from a zero ket"
            raise DimensionError(msg)
        vector = vector / norm
        return cls(layout, np.outer(vector, vector.conj()))

    @classmethod
    def from_diagonal(cls, layout: SubsystemLayout, probabilities: object) -> Self:
        """Diagonal (classical) state with the given probabilities."""
        return cls(layout, np.diag(np.asarray(probabilities, dtype=np.complex128).reshape(-1)))

    @classmethod
    def maximally_mixed(cls, layout: SubsystemLayout) -> Self:
        """I/N on the layout."""
        n = layout.total_dim
        return cls(layout, np.eye(n) / n)

    @property
    def labels(self) -> tuple[Label, ...]:
        """Subsystem labels in layout order."""
        return self.layout.labels

    @property
    def dim(self) -> int:
        """Total dimension."""
        return self.layout.total_dim

    def spectrum(self) -> RealArray:
        """Eigenvalues in ascending order."""
        return eig_hermitian(self.matrix)[0]

    def tensor(self) -> ComplexMatrix:
        """The matrix reshaped to `dims + dims`."""
        return self.matrix.reshape(self.layout.dims + self.layout.dims)


def kron(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """Kronecker product, `a` on the slow index."""
    return np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))


def tensor_product(*states: LabeledState) -> LabeledState:
    """Product state of the given states, layouts concatenated in order.

    Raises:
        ValueError: If no state is given.
        LayoutError: If two states share a label.
    """
    if not states:
        msg = "tensor_product needs at least one state"
        raise ValueError(msg)
    layout = reduce(SubsystemLayout.concat, (s.layout for s in states))
    matrix = reduce(kron, (s.matrix for s in states))
    return LabeledState(layout, matrix)


def partial_trace(state: LabeledState, keep: Iterable[Label]) -> LabeledState:
    """Trace out every subsystem not in `keep`.

    Args:
        state: State to reduce.
        keep: Labels to keep; their relative layout order is preserved.

    Returns:
        The reduced state.

    Raises:
        LayoutError: If `keep` is empty or names an unknown label.
    """
    kept = set(state.layout.require(keep))
    if not kept:
        msg = "partial_trace needs at least one label to keep"
        raise LayoutError(msg)
    layout = state.layout
    if len(kept) == len(layout):
        return state

    n = len(layout)
    ket = list(range(n))
    bra = [i if label not in kept else n + i for i, label in enumerate(layout.labels)]
    out = [i for i, label in enumerate(layout.labels) if label in kept]
    out += [n + i for i in out]
    reduced = np.einsum(state.tensor(), ket + bra, out)

    sub = layout.restrict(kept)
    return LabeledState(sub, reduced.reshape(sub.total_dim, sub.total_dim))


def reorder(state: LabeledState, order: Iterable[Label]) -> LabeledState:
    """Permute the tensor factors into `order`.

    Raises:
        LayoutError: If `order` is not a permutation of the state's labels.
    """
    target = state.layout.require(order)
    if sorted(target) != sorted(state.labels):
        msg = f"{target} is not a permutation of {list(state.labels)}"
        raise LayoutError(msg)
    if tuple(target) == state.labels:
        return state
    n = len(target)
    perm = [state.layout.index(label) for label in target]
    tensor = state.tensor().transpose(perm + [n + p for p in perm])
    layout = SubsystemLayout(tuple(target), tuple(state.layout.dims[p] for p in perm))
    return LabeledState(layout, tensor.reshape(layout.total_dim, layout.total_dim))


def relabel(state: LabeledState, mapping: Mapping[Label, Label]) -> LabeledState:
    """Rename subsystems; labels missing from `mapping` keep their name."""
    state.layout.require(mapping)
    labels = tuple(mapping.get(label, label) for label in state.labels)
    return LabeledState(SubsystemLayout(labels, state.layout.dims), state.matrix)


def eig_hermitian(m: ComplexMatrix) -> tuple[RealArray, ComplexMatrix]:
    """Eigendecomposition of a Hermitian matrix.

    The input is symmetrized as (m + m†)/2 first, which absorbs the small
    asymmetry left by chained products.

    Args:
        m: Square matrix, Hermitian up to float noise.

    Returns:
        Ascending eigenvalues and the matching orthonormal eigenvectors as
        columns.

    Raises:
        DimensionError: If `m` is not square.
    """
    matrix = np.asarray(m, dtype=np.complex128)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:  # noqa: PLR2004
        msg = f"eig_hermitian needs a square matrix, got shape {matrix.shape}"
        raise DimensionError(msg)
    values, vectors = np.linalg.eigh((matrix + matrix.conj().T) / 2)
    return values, vectors


def hermitian_function(
    m: ComplexMatrix,
    func: Callable[[RealArray], RealArray],
    *,
    support_only: bool = False,
) -> ComplexMatrix:
    """Apply a scalar function to the spectrum of a Hermitian matrix.

    Args:
        m: Hermitian matrix.
        func: Vectorized function of the eigenvalues.
        support_only: Drop eigenvalues at or below `CLIP` instead of mapping them.

    Returns:
        V · diag(func(λ)) · V†.
    """
    values, vectors = eig_hermitian(m)
    if support_only:
        mask = values > CLIP
        values, vectors = values[mask], vectors[:, mask]
    mapped = func(values)
    return (vectors * mapped) @ vectors.conj().T


def support_log(state: LabeledState | ComplexMatrix) -> ComplexMatrix:
    """Natural logarithm restricted to the support.

    Eigenvalues at or below `CLIP` are left out, so a rank-deficient state
    gets Σ_{λ>clip} ln(λ) v v† rather than -inf entries.
    """
    matrix = state.matrix if isinstance(state, LabeledState) else state
    return hermitian_function(matrix, np.log, support_only=True)
