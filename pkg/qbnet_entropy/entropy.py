"""Classical and quantum entropic quantities, in nats.

Every selector reduces to joint entropies of label sets:

    X(A|G)   = X(A ∪ G) − X(G)
    X(A:B)   = X(A) + X(B) − X(A ∪ B)
    X(A:B|G) = X(A ∪ G) + X(B ∪ G) − X(A ∪ B ∪ G) − X(G)

with X = H for a joint probability distribution and X = S for a state.
"""

import math
import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import StrEnum
from typing import Self

import numpy as np

from qbnet_entropy.config import CLIP, NULL_SUPPORT_TOL, PROB_TOL
from qbnet_entropy.errors import DimensionError, LayoutError, QbnetError
from qbnet_entropy.tensor_core import (
    LabeledState,
    SubsystemLayout,
    eig_hermitian,
    partial_trace,
    support_log,
)
from qbnet_entropy.types import ComplexMatrix, EntropyOf, Label, RealArray


@dataclass(frozen=True, eq=False)
class ProbDist:
    """Joint probability distribution over named discrete variables.

    `table` has one axis per variable, in the order of `variables`.

    Example:
        >>> p = ProbDist(("x", "y"), [[0.4, 0.1], [0.1, 0.4]])
        >>> p.marginal(["y"]).probabilities
        array([0.5, 0.5])
    """

    variables: tuple[Label, ...]
    table: RealArray

    def __post_init__(self) -> None:
        """Freeze the table and check it is a distribution.

        Raises:
            DimensionError: If the table rank does not match the variables.
            QbnetError: On negative entries or a total off by more than `PROB_TOL`.
        """
        table = np.array(self.table, dtype=np.float64)
        variables = tuple(self.variables)
        if table.ndim != len(variables):
            msg = f"table of rank {table.ndim} for variables {list(variables)}"
            raise DimensionError(msg)
        if len(set(variables)) != len(variables):
            msg = f"duplicate variables {list(variables)}"
            raise LayoutError(msg)
        if np.any(table < -CLIP):
            msg = f"negative probabilities in distribution over {list(variables)}"
            raise QbnetError(msg)
        total = float(table.sum())
        if abs(total - 1.0) > PROB_TOL:
            msg = f"distribution over {list(variables)} sums to {total:.15g}"
            raise QbnetError(msg)
        table = np.clip(table, 0.0, None)
        table.flags.writeable = False
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "table", table)

    @classmethod
    def of(cls, probabilities: Sequence[float] | RealArray, variable: Label = "x") -> Self:
        """Distribution of a single variable."""
        return cls((variable,), np.asarray(probabilities, dtype=np.float64).reshape(-1))

    @property
    def probabilities(self) -> RealArray:
        """Flattened probabilities, row-major over the variables."""
        return self.table.reshape(-1)

    def marginal(self, keep: Iterable[Label]) -> "ProbDist":
        """Marginal on `keep`, kept in this distribution's variable order.

        Raises:
            LayoutError: If a variable is unknown.
        """
        wanted = set(keep)
        unknown = wanted - set(self.variables)
        if unknown:
            msg = f"unknown variables {sorted(unknown)}; distribution has {list(self.variables)}"
            raise LayoutError(msg)
        axes = tuple(i for i, v in enumerate(self.variables) if v not in wanted)
        return ProbDist(
            tuple(v for v in self.variables if v in wanted),
            self.table.sum(axis=axes),
        )


def shannon_entropy(probabilities: RealArray) -> float:
    """-Σ p ln p over entries above `CLIP`."""
    p = np.asarray(probabilities, dtype=np.float64).reshape(-1)
    p = p[p > CLIP]
    return float(-np.sum(p * np.log(p)))


def von_neumann(state: LabeledState | ComplexMatrix) -> float:
    """S(ρ) = -tr ρ ln ρ from the eigenvalues above `CLIP`."""
    matrix = state.matrix if isinstance(state, LabeledState) else state
    return shannon_entropy(eig_hermitian(matrix)[0])


def diagonal_distribution(state: LabeledState) -> ProbDist:
    """The state's diagonal as a distribution over its labels.

    Float noise (tiny negatives, a trace off by rounding) is cleaned up.
    """
    diagonal = np.clip(np.real(np.diag(state.matrix)), 0.0, None)
    diagonal = diagonal / diagonal.sum()
    return ProbDist(state.labels, diagonal.reshape(state.layout.dims))


def state_entropy_fn(state: LabeledState) -> EntropyOf:
    """Memoized S(labels) for one state; S(∅) = 0."""
    cache: dict[frozenset[Label], float] = {frozenset(): 0.0}

    def entropy_of(labels: frozenset[Label]) -> float:
        if labels not in cache:
            cache[labels] = von_neumann(partial_trace(state, labels))
        return cache[labels]

    return entropy_of


def dist_entropy_fn(p: ProbDist) -> EntropyOf:
    """Memoized H(labels) for one distribution; H(∅) = 0."""
    cache: dict[frozenset[Label], float] = {frozenset(): 0.0}

    def entropy_of(labels: frozenset[Label]) -> float:
        if labels not in cache:
            cache[labels] = shannon_entropy(p.marginal(labels).probabilities)
        return cache[labels]

    return entropy_of


class QuantityKind(StrEnum):
    """Shape of an entropic expression."""

    ENTROPY = "entropy"
    CONDITIONAL = "conditional"
    MUTUAL = "mutual"
    CONDITIONAL_MUTUAL = "conditional_mutual"


_QUANTITY_RE = re.compile(r"^\s*([SH])\s*\((.*)\)\s*$")


def _parse_labels(text: str, source: str) -> tuple[Label, ...]:
    labels = tuple(part.strip() for part in text.split(","))
    if not labels or any(not label for label in labels):
        msg = f"empty label in quantity {source!r}"
        raise QbnetError(msg)
    return labels


@dataclass(frozen=True)
class Quantity:
    """An entropic expression such as S(a:b|e) or H(y|x).

    Attributes:
        family: "S" (von Neumann) or "H" (Shannon).
        first: Left argument.
        second: Right argument of a mutual information, else empty.
        given: Conditioning labels, else empty.
    """

    family: str
    first: tuple[Label, ...]
    second: tuple[Label, ...] = ()
    given: tuple[Label, ...] = ()

    @classmethod
    def parse(cls, text: str) -> Self:
        """Parse `S(a)`, `S(a,b)`, `S(a|b)`, `S(a:b)`, `S(a:b|e)` or the `H(...)` forms.

        Raises:
            QbnetError: If the text is not a quantity.
        """
        match = _QUANTITY_RE.match(text)
        if match is None:
            msg = f"cannot parse quantity {text!r}; expected e.g. S(a:b|e)"
            raise QbnetError(msg)
        family, body = match.groups()
        main, _, given = body.partition("|")
        first, colon, second = main.partition(":")
        if "|" in given or ":" in second or ":" in given:
            msg = f"quantity {text!r} has more than one '|' or ':'"
            raise QbnetError(msg)
        return cls(
            family,
            _parse_labels(first, text),
            _parse_labels(second, text) if colon else (),
            _parse_labels(given, text) if "|" in body else (),
        )

    @property
    def kind(self) -> QuantityKind:
        """Shape of the expression."""
        if self.second:
            return QuantityKind.CONDITIONAL_MUTUAL if self.given else QuantityKind.MUTUAL
        return QuantityKind.CONDITIONAL if self.given else QuantityKind.ENTROPY

    @property
    def labels(self) -> frozenset[Label]:
        """Every label the expression mentions."""
        return frozenset(self.first + self.second + self.given)

    def evaluate(self, entropy_of: EntropyOf) -> float:
        """Evaluate through a joint-entropy function."""
        a, b, g = frozenset(self.first), frozenset(self.second), frozenset(self.given)
        match self.kind:
            case QuantityKind.ENTROPY:
                return entropy_of(a)
            case QuantityKind.CONDITIONAL:
                return entropy_of(a | g) - entropy_of(g)
            case QuantityKind.MUTUAL:
                return entropy_of(a) + entropy_of(b) - entropy_of(a | b)
            case QuantityKind.CONDITIONAL_MUTUAL:
                return (
                    entropy_of(a | g) + entropy_of(b | g) - entropy_of(a | b | g) - entropy_of(g)
                )

    def __str__(self) -> str:
        body = ",".join(self.first)
        if self.second:
            body += ":" + ",".join(self.second)
        if self.given:
            body += "|" + ",".join(self.given)
        return f"{self.family}({body})"


def _as_quantity(quantity: Quantity | str) -> Quantity:
    return Quantity.parse(quantity) if isinstance(quantity, str) else quantity


def classical_entropy(quantity: Quantity | str, p: ProbDist) -> float:
    """Evaluate a Shannon quantity on a joint distribution.

    Args:
        quantity: Expression, e.g. "H(y|x)"; an "S" prefix is accepted too.
        p: Joint distribution over the named variables.

    Returns:
        Value in nats, with 0·ln 0 = 0.

    Raises:
        LayoutError: If a variable is not in `p`.
    """
    q = _as_quantity(quantity)
    unknown = q.labels - set(p.variables)
    if unknown:
        msg = f"unknown variables {sorted(unknown)} in {q}; distribution has {list(p.variables)}"
        raise LayoutError(msg)
    return q.evaluate(dist_entropy_fn(p))


def quantum_entropy(quantity: Quantity | str, state: LabeledState) -> float:
    """Evaluate a von Neumann quantity on a state.

    Args:
        quantity: Expression, e.g. "S(a:b|e)".
        state: State holding the named subsystems.

    Returns:
        Value in nats.

    Raises:
        LayoutError: If a subsystem is not in the state.
    """
    q = _as_quantity(quantity)
    state.layout.require(sorted(q.labels))
    return q.evaluate(state_entropy_fn(state))


def classical_relative_entropy(
    p: ProbDist | RealArray,
    q: ProbDist | RealArray,
) -> float:
    """D(P//Q) = Σ P ln(P/Q), or +inf when P has weight where Q has none.

    Raises:
        DimensionError: If the supports differ in size.
    """
    pv = p.probabilities if isinstance(p, ProbDist) else np.asarray(p, dtype=np.float64).ravel()
    qv = q.probabilities if isinstance(q, ProbDist) else np.asarray(q, dtype=np.float64).ravel()
    if pv.shape != qv.shape:
        msg = f"relative entropy of distributions of sizes {pv.size} and {qv.size}"
        raise DimensionError(msg)
    support = pv > CLIP
    if np.any(qv[support] <= CLIP):
        return math.inf
    return float(np.sum(pv[support] * np.log(pv[support] / qv[support])))


def quantum_relative_entropy(rho: LabeledState, sigma: LabeledState) -> float:
    """D(ρ//σ) = tr ρ(ln ρ − ln σ), or +inf if supp ρ ⊄ supp σ.

    The support test projects ρ onto the null space of σ (eigenvalues at or
    below `CLIP`) and compares the weight found there with `NULL_SUPPORT_TOL`.

    Raises:
        LayoutError: If the layouts differ.
    """
    if rho.layout != sigma.layout:
        msg = f"relative entropy between layouts {rho.layout} and {sigma.layout}"
        raise LayoutError(msg)
    values, vectors = eig_hermitian(sigma.matrix)
    null = vectors[:, values <= CLIP]
    if null.size:
        weight = float(np.real(np.trace(null.conj().T @ rho.matrix @ null)))
        if weight > NULL_SUPPORT_TOL:
            return math.inf
    difference = support_log(rho) - support_log(sigma)
    return float(np.real(np.trace(rho.matrix @ difference)))


@dataclass(frozen=True, eq=False)
class Ensemble:
    """Preparation ensemble {P(x), ρ_{q|x}}.

    Attributes:
        weights: Distribution over the preparation label x.
        states: ρ_{q|x} for each x, all on one layout.
    """

    weights: ProbDist
    states: tuple[LabeledState, ...]

    def __post_init__(self) -> None:
        """Check the ensemble shape.

        Raises:
            DimensionError: If weights and states differ in number.
            LayoutError: If the states do not share one layout.
        """
        object.__setattr__(self, "states", tuple(self.states))
        if self.weights.probabilities.size != len(self.states):
            msg = f"{self.weights.probabilities.size} weights for {len(self.states)} states"
            raise DimensionError(msg)
        layouts = {s.layout for s in self.states}
        if len(layouts) > 1:
            msg = "ensemble states must share one layout"
            raise LayoutError(msg)

    @classmethod
    def of(cls, weights: Sequence[float] | RealArray, states: Sequence[LabeledState]) -> Self:
        """Build an ensemble from plain weights."""
        return cls(ProbDist.of(weights), tuple(states))

    @property
    def layout(self) -> SubsystemLayout:
        """Layout of the q system."""
        return self.states[0].layout

    @property
    def size(self) -> int:
        """Number of preparations."""
        return len(self.states)

    def average_state(self) -> LabeledState:
        """ρ_q = Σ_x P(x) ρ_{q|x}."""
        stacked = np.stack([s.matrix for s in self.states])
        mixed = np.einsum("x,xij->ij", self.weights.probabilities, stacked)
        return LabeledState(self.layout, mixed)


def cq_state(e: Ensemble, x_label: Label = "x") -> LabeledState:
    """Σ_x P(x) ρ_{q|x} ⊗ |x⟩⟨x| on (q, x).

    Raises:
        LayoutError: If `x_label` clashes with a q label.
    """
    n = e.size
    d = e.layout.total_dim
    blocks = np.zeros((d, n, d, n), dtype=np.complex128)
    for x, (weight, state) in enumerate(zip(e.weights.probabilities, e.states, strict=True)):
        blocks[:, x, :, x] = weight * state.matrix
    layout = e.layout.concat(SubsystemLayout.of((x_label, n)))
    return LabeledState(layout, blocks.reshape(d * n, d * n))


def clone_cq_state(e: Ensemble, x_label: Label = "a", copy_label: Label = "a2") -> LabeledState:
    """Σ_x P(x) ρ_{q|x} ⊗ |x⟩⟨x| ⊗ |x⟩⟨x| on (q, x, copy): x and its classical clone.

    Raises:
        LayoutError: If a label clashes.
    """
    n = e.size
    d = e.layout.total_dim
    blocks = np.zeros((d, n, n, d, n, n), dtype=np.complex128)
    for x, (weight, state) in enumerate(zip(e.weights.probabilities, e.states, strict=True)):
        blocks[:, x, x, :, x, x] = weight * state.matrix
    layout = e.layout.concat(SubsystemLayout.of((x_label, n), (copy_label, n)))
    return LabeledState(layout, blocks.reshape(d * n * n, d * n * n))


def holevo_information(e: Ensemble) -> float:
    """Hol = S(Σ_x P(x) ρ_{q|x}) − Σ_x P(x) S(ρ_{q|x})."""
    mixed = von_neumann(e.average_state())
    components = sum(
        float(w) * von_neumann(s) for w, s in zip(e.weights.probabilities, e.states, strict=True)
    )
    return mixed - components


def nats_to_bits(x: float) -> float:
    """Convert nats to bits."""
    return x / math.log(2)
