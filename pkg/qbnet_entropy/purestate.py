"""Pure states: Schmidt decomposition, purification and partial-entropy identities."""

from collections.abc import Sequence
from dataclasses import dataclass
from itertools import combinations, permutations

import numpy as np

from qbnet_entropy.config import CLIP, PURITY_TOL
from qbnet_entropy.entropy import state_entropy_fn
from qbnet_entropy.errors import LayoutError, PurityError
from qbnet_entropy.tensor_core import LabeledState, SubsystemLayout, eig_hermitian, reorder
from qbnet_entropy.types import ComplexMatrix, Label, RealArray
from qbnet_entropy.verdicts import CheckVerdict, equal

PURE_IDENTITIES = "pure_identities"


def pure_ket(state: LabeledState) -> ComplexMatrix:
    """The ket of a pure state, up to a global phase.

    Raises:
        PurityError: If the largest eigenvalue is below 1 − `PURITY_TOL`.
    """
    values, vectors = eig_hermitian(state.matrix)
    if values[-1] < 1.0 - PURITY_TOL:
        msg = f"state on {list(state.labels)} is mixed: largest eigenvalue {values[-1]:.12g}"
        raise PurityError(msg)
    return vectors[:, -1]


@dataclass(frozen=True, eq=False)
class SchmidtForm:
    """|ψ⟩ = Σ_k c_k |u_k⟩|v_k⟩ with descending coefficients c_k > 0.

    Attributes:
        coefficients: Schmidt coefficients √P(k), descending.
        left: Columns u_k on `left_layout`.
        right: Columns v_k on `right_layout`.
        left_layout: Layout of the left side of the cut.
        right_layout: Layout of the right side of the cut.
    """

    coefficients: RealArray
    left: ComplexMatrix
    right: ComplexMatrix
    left_layout: SubsystemLayout
    right_layout: SubsystemLayout

    @property
    def rank(self) -> int:
        """Number of nonzero coefficients."""
        return int(self.coefficients.size)

    def ket(self) -> ComplexMatrix:
        """Reconstructed ket on left ⊗ right."""
        return np.einsum("k,ik,jk->ij", self.coefficients, self.left, self.right).reshape(-1)

    def state(self) -> LabeledState:
        """Reconstructed pure state on left ⊗ right."""
        return LabeledState.from_ket(self.left_layout.concat(self.right_layout), self.ket())


def schmidt_decompose(psi: LabeledState, cut: Sequence[Label]) -> SchmidtForm:
    """Schmidt decomposition of a pure state across `cut` | rest.

    The ket is reshaped into the matrix A(left, right) and decomposed by SVD.
    When the right side is larger the matrix is transposed first and the
    factors are swapped back afterwards. Coefficients with c² ≤ `CLIP` are
    dropped.

    Args:
        psi: Pure state.
        cut: Labels on the left side; the rest form the right side.

    Returns:
        The Schmidt form.

    Raises:
        PurityError: If `psi` is mixed.
        LayoutError: If `cut` is empty, covers everything, or names unknown labels.
    """
    left_labels = psi.layout.require(cut)
    right_labels = [label for label in psi.labels if label not in left_labels]
    if not left_labels or not right_labels:
        msg = f"cut {left_labels} must split {list(psi.labels)} into two non-empty sides"
        raise LayoutError(msg)

    ordered = reorder(psi, left_labels + right_labels)
    ket = pure_ket(ordered)
    left_layout = SubsystemLayout.of(*((x, psi.layout.dim(x)) for x in left_labels))
    right_layout = SubsystemLayout.of(*((x, psi.layout.dim(x)) for x in right_labels))
    matrix = ket.reshape(left_layout.total_dim, right_layout.total_dim)

    swapped = right_layout.total_dim > left_layout.total_dim
    u, s, vh = np.linalg.svd(matrix.T if swapped else matrix, full_matrices=False)
    keep = s**2 > CLIP
    u, s, v = u[:, keep], s[keep], vh[keep, :].T
    if swapped:
        u, v = v, u
    return SchmidtForm(s, u, v, left_layout, right_layout)


def purify(rho: LabeledState, reference: Label = "r") -> LabeledState:
    """Spectral purification Σ_k √λ_k |v_k⟩|k⟩ on (rho's labels, reference).

    The reference dimension equals the rank of `rho`.

    Raises:
        LayoutError: If `reference` clashes with a label of `rho`.
    """
    values, vectors = eig_hermitian(rho.matrix)
    order = np.argsort(values)[::-1]
    values, vectors = values[order], vectors[:, order]
    keep = values > CLIP
    values, vectors = values[keep], vectors[:, keep]
    ket = (vectors * np.sqrt(values)).reshape(-1)
    layout = rho.layout.concat(SubsystemLayout.of((reference, int(values.size))))
    return LabeledState.from_ket(layout, ket)


def _label(blocks: Sequence[Sequence[Label]]) -> str:
    return ",".join(
        block[0] if len(block) == 1 else "(" + ",".join(block) + ")" for block in blocks
    )


def check_pure_identities(
    psi: LabeledState,
    partition: Sequence[Sequence[Label]],
) -> list[CheckVerdict]:
    """Partial-entropy identities of a pure multipartite state.

    Always checked: S(everything) = 0; S(J) = S(Jᶜ) and S(J:Jᶜ) = 2 S(J) for
    every union J of blocks. Depending on the number of blocks, also over all
    ordered assignments of the blocks to I, J, K(, L):

    - 3 blocks: S(J|I) = S(K) − S(I) and S(I:J|K) = S(I:J);
    - 4 blocks: S(I:J|K) = −S(I:J|L).

    Args:
        psi: Pure state.
        partition: Disjoint non-empty blocks covering every label.

    Returns:
        One verdict per identity instance.

    Raises:
        PurityError: If `psi` is mixed.
        LayoutError: If `partition` is not a partition of the labels.
    """
    pure_ket(psi)
    blocks = [tuple(psi.layout.require(block)) for block in partition]
    flat = [label for block in blocks for label in block]
    if any(not block for block in blocks) or sorted(flat) != sorted(psi.labels):
        msg = f"{[list(b) for b in blocks]} is not a partition of {list(psi.labels)}"
        raise LayoutError(msg)

    entropy_of = state_entropy_fn(psi)

    def s(*parts: tuple[Label, ...]) -> float:
        return entropy_of(frozenset(label for part in parts for label in part))

    everything = tuple(flat)
    verdicts = [equal(PURE_IDENTITIES, s(everything), 0.0, label="S(all) = 0")]

    for size in range(1, len(blocks)):
        for chosen in combinations(range(len(blocks)), size):
            j = tuple(label for k in chosen for label in blocks[k])
            jc = tuple(label for label in everything if label not in j)
            name = _label([blocks[k] for k in chosen])
            verdicts.append(equal(PURE_IDENTITIES, s(j), s(jc), label=f"S({name}) = S(complement)"))
            verdicts.append(
                equal(
                    PURE_IDENTITIES,
                    s(j) + s(jc) - s(everything),
                    2 * s(j),
                    label=f"S({name}:complement) = 2 S({name})",
                ),
            )

    if len(blocks) == 3:  # noqa: PLR2004
        for i, j, k in permutations(blocks):
            names = _label([i]), _label([j]), _label([k])
            verdicts.append(
                equal(
                    PURE_IDENTITIES,
                    s(j, i) - s(i),
                    s(k) - s(i),
                    label=f"S({names[1]}|{names[0]}) = S({names[2]}) - S({names[0]})",
                ),
            )
            verdicts.append(
                equal(
                    PURE_IDENTITIES,
                    s(i, k) + s(j, k) - s(i, j, k) - s(k),
                    s(i) + s(j) - s(i, j),
                    label=f"S({names[0]}:{names[1]}|{names[2]}) = S({names[0]}:{names[1]})",
                ),
            )
    elif len(blocks) == 4:  # noqa: PLR2004
        for i, j, k, last in permutations(blocks):
            names = _label([i]), _label([j]), _label([k]), _label([last])
            verdicts.append(
                equal(
                    PURE_IDENTITIES,
                    s(i, k) + s(j, k) - s(i, j, k) - s(k),
                    -(s(i, last) + s(j, last) - s(i, j, last) - s(last)),
                    label=(
                        f"S({names[0]}:{names[1]}|{names[2]}) = "
                        f"-S({names[0]}:{names[1]}|{names[3]})"
                    ),
                ),
            )
    return verdicts
