"""Checker instances and their seeded samplers.

Every sampler has the `InstanceSampler` shape `(seed, dims) -> instance`,
where `dims` holds one dimension per subsystem the check needs. All draws of
one instance come from a single generator built from the seed, so an
instance is a pure function of (seed, dims).
"""

from collections.abc import Sequence
from dataclasses import dataclass
from typing import cast

import numpy as np

from qbnet_entropy.channels import KrausChannel
from qbnet_entropy.entropy import Ensemble, ProbDist
from qbnet_entropy.netmodel import (
    ChainAmplitudes,
    Marking,
    Node,
    QBNet,
    TriNodeKind,
    build_chain_net,
    build_trinode_net,
)
from qbnet_entropy.randgen import (
    ClassicalKind,
    make_rng,
    random_amplitudes,
    random_channel,
    random_chain_amplitudes,
    random_classical,
    random_density_matrix,
    random_ensemble,
    random_isometry,
    random_ket,
    random_pure_state,
    random_trinode_tables,
    random_unitary,
)
from qbnet_entropy.tensor_core import LabeledState, SubsystemLayout
from qbnet_entropy.types import InstanceSampler, Label, RealArray, Seed, SeedLike

CHAIN_LINKS = 3
"""Links of the sampled chain nets; ρ^(0)..ρ^(3) are compared."""

TRINODE_ENV_DIM = 2
"""Dimension of every environment node of a sampled tri-node net."""

UNITAL_MIXTURE = 3
"""Unitaries mixed into a sampled unital channel."""

HOLEVO_SAMPLES = 16
"""Random measurements per sampled Holevo-bound instance."""


@dataclass(frozen=True, eq=False)
class StateInstance:
    """A single state; the check decides which labels it reads."""

    state: LabeledState


@dataclass(frozen=True, eq=False)
class UnitalInstance:
    """A unital channel with an input state, and its classical twin.

    Attributes:
        channel: Square unital channel on the single factor of `state`.
        state: Input state.
        transition: Doubly stochastic T(b|a).
        dist: Input distribution for `transition`.
    """

    channel: KrausChannel
    state: LabeledState
    transition: RealArray
    dist: ProbDist


@dataclass(frozen=True, eq=False)
class FunctionInstance:
    """P(x) with a deterministic y = f(x), given as the 0/1 matrix F[y, x]."""

    dist: ProbDist
    function: RealArray


@dataclass(frozen=True, eq=False)
class EnsembleInstance:
    """A preparation ensemble."""

    ensemble: Ensemble


@dataclass(frozen=True, eq=False)
class ClassicalChainInstance:
    """A classical Markov chain v₀ → v₁ → … with T(v_{k+1}|v_k) per link.

    Attributes:
        root: P(v₀).
        links: Column-stochastic T[v_{k+1}, v_k] for each link.
        variables: Variable names v₀, v₁, …
    """

    root: ProbDist
    links: tuple[RealArray, ...]
    variables: tuple[Label, ...]

    def joint(self) -> ProbDist:
        """P(v₀, v₁, …) = P(v₀) Π_k T(v_{k+1}|v_k)."""
        table = self.root.probabilities
        for t in self.links:
            table = table[..., None] * np.asarray(t).T
        return ProbDist(self.variables, table)


@dataclass(frozen=True, eq=False)
class ChainNetInstance:
    """Amplitudes for the chain nets ρ^(0)..ρ^(j).

    Attributes:
        amplitudes: Root, A(b|a) and isometric link tables.
        link_dims: (N_bk, N_ek) per link.
    """

    amplitudes: ChainAmplitudes
    link_dims: tuple[tuple[int, int], ...]

    @property
    def length(self) -> int:
        """Number of links."""
        return len(self.amplitudes.links)

    def net(self, j: int, intermediate: Marking = Marking.SLASHED) -> QBNet:
        """The net of ρ^(j)."""
        return build_chain_net(j, self.link_dims, self.amplitudes, intermediate=intermediate)


@dataclass(frozen=True, eq=False)
class TriNodeInstance:
    """Tri-node nets without a collider.

    Attributes:
        nets: Quantum nets with traced environment, one per kind.
        classical_nets: Classical fan-out, Markov and reverse-Markov nets.
    """

    nets: tuple[QBNet, ...]
    classical_nets: tuple[QBNet, ...]


@dataclass(frozen=True, eq=False)
class IsometryInstance:
    """Nets for the trace-through-isometry checks.

    Attributes:
        chain: a → b → β₁ with b visible and β₁'s outputs (b₁, e₁) split off.
        collapse: a → b → c with isometric A(b|a), A(c|b), b slashed, c traced.
    """

    chain: QBNet
    collapse: QBNet


@dataclass(frozen=True, eq=False)
class MreClassicalInstance:
    """Stochastic T with two input distributions."""

    transition: RealArray
    p: ProbDist
    q: ProbDist


@dataclass(frozen=True, eq=False)
class MreQuantumInstance:
    """Channel with two input states; `sigma` is full rank."""

    channel: KrausChannel
    rho: LabeledState
    sigma: LabeledState


@dataclass(frozen=True, eq=False)
class PureInstance:
    """Pure state with a partition of its labels into blocks."""

    state: LabeledState
    partition: tuple[tuple[Label, ...], ...]


@dataclass(frozen=True, eq=False)
class HolevoBoundInstance:
    """Ensemble with the measurement sampling budget and its seed."""

    ensemble: Ensemble
    samples: int
    seed: Seed


def _layout(labels: Sequence[Label], dims: Sequence[int]) -> SubsystemLayout:
    return SubsystemLayout.of(*zip(labels, dims, strict=True))


def _dist(rng: np.random.Generator, size: int, variable: Label) -> ProbDist:
    return cast(ProbDist, random_classical(ClassicalKind.DIST, size, rng, variable=variable))


def _matrix(rng: np.random.Generator, kind: ClassicalKind, out_dim: int, in_dim: int) -> RealArray:
    return cast(RealArray, random_classical(kind, (out_dim, in_dim), rng))


def state_sampler(labels: Sequence[Label]) -> InstanceSampler:
    """Sampler of random states of random rank on `labels`."""

    def sample(seed: Seed, dims: tuple[int, ...]) -> StateInstance:
        rng = make_rng(seed)
        layout = _layout(labels, dims)
        rank = int(rng.integers(1, layout.total_dim + 1))
        return StateInstance(random_density_matrix(layout, rank, rng))

    return sample


def sample_unital(seed: Seed, dims: tuple[int, ...]) -> UnitalInstance:
    """Mixture of random unitaries, random state, doubly stochastic twin."""
    rng = make_rng(seed)
    d = dims[0]
    weights = rng.dirichlet(np.ones(UNITAL_MIXTURE))
    channel = KrausChannel(tuple(np.sqrt(w) * random_unitary(d, rng) for w in weights))
    state = random_density_matrix(SubsystemLayout.of(("q", d)), None, rng)
    transition = _matrix(rng, ClassicalKind.DOUBLY_STOCHASTIC, d, d)
    return UnitalInstance(channel, state, transition, _dist(rng, d, "a"))


def sample_function(seed: Seed, dims: tuple[int, ...]) -> FunctionInstance:
    """P(x) over dims[0] values and a random map into dims[1] values."""
    rng = make_rng(seed)
    n_x, n_y = dims
    function = _matrix(rng, ClassicalKind.DETERMINISTIC_FUNCTION, n_y, n_x)
    return FunctionInstance(_dist(rng, n_x, "x"), function)


def ensemble_sampler(*, pure: bool) -> InstanceSampler:
    """Sampler of ensembles on q with dims (N_q, ensemble size)."""

    def sample(seed: Seed, dims: tuple[int, ...]) -> EnsembleInstance:
        q_dim, size = dims
        rank = 1 if pure else None
        return EnsembleInstance(
            random_ensemble(size, SubsystemLayout.of(("q", q_dim)), seed, rank=rank),
        )

    return sample


def sample_markov_chain(seed: Seed, dims: tuple[int, ...]) -> ClassicalChainInstance:
    """Chain a → b → c with random stochastic links."""
    rng = make_rng(seed)
    n_a, n_b, n_c = dims
    links = (
        _matrix(rng, ClassicalKind.STOCHASTIC, n_b, n_a),
        _matrix(rng, ClassicalKind.STOCHASTIC, n_c, n_b),
    )
    return ClassicalChainInstance(_dist(rng, n_a, "a"), links, ("a", "b", "c"))


def sample_function_chain(seed: Seed, dims: tuple[int, ...]) -> ClassicalChainInstance:
    """Chain a → x → y = f(x) → b, the middle link deterministic."""
    rng = make_rng(seed)
    n_a, n_x, n_y, n_b = dims
    links = (
        _matrix(rng, ClassicalKind.STOCHASTIC, n_x, n_a),
        _matrix(rng, ClassicalKind.DETERMINISTIC_FUNCTION, n_y, n_x),
        _matrix(rng, ClassicalKind.STOCHASTIC, n_b, n_y),
    )
    return ClassicalChainInstance(_dist(rng, n_a, "a"), links, ("a", "x", "y", "b"))


def sample_chain_net(seed: Seed, dims: tuple[int, ...]) -> ChainNetInstance:
    """Chain amplitudes with dims (N_a, N_b, N_e); every b_k has dimension N_b."""
    n_a, n_b, n_e = dims
    link_dims = ((n_b, n_e),) * CHAIN_LINKS
    amplitudes = random_chain_amplitudes(CHAIN_LINKS, n_a, n_b, list(link_dims), seed)
    return ChainNetInstance(amplitudes, link_dims)


def classical_trinode_nets(dims: Sequence[int], seed: SeedLike) -> tuple[QBNet, ...]:
    """Random classical fan-out, Markov and reverse-Markov nets on (a, e, b).

    Args:
        dims: (N_a, N_e, N_b).
        seed: Seed or generator.
    """
    rng = make_rng(seed)
    size = dict(zip(("a", "e", "b"), dims, strict=True))
    shapes: dict[str, tuple[tuple[Label, Label | None], ...]] = {
        "fan_out": (("e", None), ("a", "e"), ("b", "e")),
        "markov": (("a", None), ("e", "a"), ("b", "e")),
        "reverse_markov": (("b", None), ("e", "b"), ("a", "e")),
    }
    nets = []
    for edges in shapes.values():
        nodes = []
        for child, parent in edges:
            if parent is None:
                nodes.append(Node.from_probabilities(child, _dist(rng, size[child], child).table))
            else:
                table = _matrix(rng, ClassicalKind.STOCHASTIC, size[child], size[parent])
                nodes.append(Node.from_probabilities(child, table, (parent,)))
        nets.append(QBNet(tuple(nodes)))
    return tuple(nets)


def sample_trinode(seed: Seed, dims: tuple[int, ...]) -> TriNodeInstance:
    """Quantum nets of both kinds plus the classical twins, dims (N_a, N_e, N_b)."""
    rng = make_rng(seed)
    main = dict(zip(("a", "e", "b"), dims, strict=True))
    nets = tuple(
        build_trinode_net(kind, random_trinode_tables(kind, main, TRINODE_ENV_DIM, rng))
        for kind in TriNodeKind
    )
    return TriNodeInstance(nets, classical_trinode_nets(dims, rng))


def sample_isometry(seed: Seed, dims: tuple[int, ...]) -> IsometryInstance:
    """Nets for the isometry checks, dims (N_a, N_b, N_e).

    The collapse net needs N_b ≥ N_a, so its b uses max(N_a, N_b).
    """
    rng = make_rng(seed)
    n_a, n_b, n_e = dims
    amplitudes = ChainAmplitudes(
        root=random_ket(n_a, rng),
        first=random_amplitudes(n_b, n_a, rng),
        links=(random_isometry(n_b, n_b * n_e, rng),),
    )
    chain = build_chain_net(1, [(n_b, n_e)], amplitudes, intermediate=Marking.VISIBLE)

    wide = max(n_a, n_b)
    collapse = QBNet(
        (
            Node("a", random_ket(n_a, rng)),
            Node("b", random_isometry(n_a, wide, rng), ("a",), Marking.SLASHED),
            Node("c", random_isometry(wide, wide * n_e, rng), ("b",), Marking.TRACED),
        ),
    )
    return IsometryInstance(chain, collapse)


def sample_mre_classical(seed: Seed, dims: tuple[int, ...]) -> MreClassicalInstance:
    """Random T (dims[1] × dims[0]) and two input distributions."""
    rng = make_rng(seed)
    n_in, n_out = dims
    transition = _matrix(rng, ClassicalKind.STOCHASTIC, n_out, n_in)
    return MreClassicalInstance(transition, _dist(rng, n_in, "a"), _dist(rng, n_in, "a"))


def sample_mre_quantum(seed: Seed, dims: tuple[int, ...]) -> MreQuantumInstance:
    """Random channel dims[0] → dims[1], random ρ, full-rank σ."""
    rng = make_rng(seed)
    d_in, d_out = dims
    kraus_count = -(-d_in // d_out) + 1
    channel = random_channel(d_in, d_out, kraus_count, rng)
    layout = SubsystemLayout.of(("q", d_in))
    rho = random_density_matrix(layout, int(rng.integers(1, d_in + 1)), rng)
    sigma = random_density_matrix(layout, None, rng)
    return MreQuantumInstance(channel, rho, sigma)


PURE_BLOCKS = (2, 3, 4)
"""Block counts drawn for pure-state identity instances."""


def sample_pure(seed: Seed, dims: tuple[int, ...]) -> PureInstance:
    """Random pure state on 2, 3 or 4 single-label blocks p1, p2, …"""
    rng = make_rng(seed)
    blocks = int(rng.choice(PURE_BLOCKS))
    labels = [f"p{k + 1}" for k in range(blocks)]
    state = random_pure_state(_layout(labels, dims[:blocks]), rng)
    return PureInstance(state, tuple((label,) for label in labels))


def sample_holevo_bound(seed: Seed, dims: tuple[int, ...]) -> HolevoBoundInstance:
    """Random mixed ensemble with dims (N_q, size)."""
    q_dim, size = dims
    ensemble = random_ensemble(size, SubsystemLayout.of(("q", q_dim)), seed)
    return HolevoBoundInstance(ensemble, HOLEVO_SAMPLES, seed)

