"""Seeded random instances.

Every generator takes a `SeedLike`: an integer seed, or a numpy `Generator`
that several draws of one trial share. Integer seeds always go through
`make_rng`, so the algorithm below is the one reproducibility contract.
Changing it is a breaking change and bumps `GENERATOR_VERSION`.
"""

from collections.abc import Mapping
from enum import StrEnum

import numpy as np

from qbnet_entropy.channels import KrausChannel
from qbnet_entropy.entropy import Ensemble, ProbDist
from qbnet_entropy.errors import ChannelError, DimensionError
from qbnet_entropy.netmodel import ChainAmplitudes, TriNodeKind, trinode_layout
from qbnet_entropy.tensor_core import LabeledState, SubsystemLayout
from qbnet_entropy.types import ComplexMatrix, Label, RealArray, Seed, SeedLike

GENERATOR_ALGORITHM = "PCG64"
"""Bit generator behind every random instance."""

GENERATOR_VERSION = 1
"""Version of the sampling recipes below."""


def make_rng(seed: SeedLike) -> np.random.Generator:
    """A PCG64 generator for a seed, or the generator itself."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(seed))


def derive_seed(base: Seed, trial: int) -> Seed:
    """Seed of one trial, a deterministic function of (base seed, trial index)."""
    sequence = np.random.SeedSequence(base, spawn_key=(trial,))
    return int(sequence.generate_state(1, np.uint64)[0])


class ClassicalKind(StrEnum):
    """What `random_classical` draws."""

    DIST = "dist"
    STOCHASTIC = "stochastic"
    DOUBLY_STOCHASTIC = "doubly_stochastic"
    DETERMINISTIC_FUNCTION = "deterministic_function"


def random_classical(
    kind: ClassicalKind,
    dims: int | tuple[int, int],
    seed: SeedLike,
    *,
    variable: Label = "x",
) -> ProbDist | RealArray:
    """Random distribution or transition matrix.

    Args:
        kind: What to draw.
        dims: Support size for a distribution; (N_out, N_in) or a single size
            for matrices. Doubly stochastic matrices must be square.
        seed: Seed or generator.
        variable: Variable name of a drawn distribution.

    Returns:
        A `ProbDist` for `DIST`, otherwise a column-stochastic matrix T[b, a].

    Raises:
        DimensionError: On a non-positive size or a non-square doubly
            stochastic request.
    """
    rng = make_rng(seed)
    out_dim, in_dim = (dims, dims) if isinstance(dims, int) else dims
    if out_dim < 1 or in_dim < 1:
        msg = f"random_classical needs sizes >= 1, got {dims}"
        raise DimensionError(msg)

    match kind:
        case ClassicalKind.DIST:
            return ProbDist.of(rng.dirichlet(np.ones(out_dim)), variable)
        case ClassicalKind.STOCHASTIC:
            return rng.dirichlet(np.ones(out_dim), size=in_dim).T
        case ClassicalKind.DOUBLY_STOCHASTIC:
            if out_dim != in_dim:
                msg = f"doubly stochastic matrices are square, got {out_dim}x{in_dim}"
                raise DimensionError(msg)
            weights = rng.dirichlet(np.ones(2 * in_dim))
            identity = np.eye(in_dim)
            return sum(
                (w * identity[rng.permutation(in_dim)] for w in weights),
                start=np.zeros((in_dim, in_dim)),
            )
        case ClassicalKind.DETERMINISTIC_FUNCTION:
            image = rng.integers(0, out_dim, size=in_dim)
            matrix = np.zeros((out_dim, in_dim))
            matrix[image, np.arange(in_dim)] = 1.0
            return matrix


def _ginibre(rng: np.random.Generator, rows: int, cols: int) -> ComplexMatrix:
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def random_isometry(in_dim: int, out_dim: int, seed: SeedLike) -> ComplexMatrix:
    """Random V (out_dim × in_dim) with V†V = I, from a QR of a Ginibre matrix.

    Raises:
        DimensionError: If in_dim > out_dim.
    """
    if in_dim > out_dim:
        msg = f"no isometry from dimension {in_dim} into {out_dim}"
        raise DimensionError(msg)
    q, r = np.linalg.qr(_ginibre(make_rng(seed), out_dim, in_dim))
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def random_unitary(dim: int, seed: SeedLike) -> ComplexMatrix:
    """Random dim × dim unitary."""
    return random_isometry(dim, dim, seed)


def random_ket(dim: int, seed: SeedLike) -> ComplexMatrix:
    """Random unit vector of length `dim`."""
    vector = _ginibre(make_rng(seed), dim, 1).reshape(-1)
    return vector / np.linalg.norm(vector)


def random_amplitudes(rows: int, cols: int, seed: SeedLike) -> ComplexMatrix:
    """Random amplitude table A(y|x) whose columns are unit vectors."""
    rng = make_rng(seed)
    return np.stack([random_ket(rows, rng) for _ in range(cols)], axis=1)


def random_density_matrix(
    layout: SubsystemLayout,
    rank: int | None,
    seed: SeedLike,
) -> LabeledState:
    """G·G†/tr(G·G†) for a complex Gaussian G of shape (dim, rank).

    Args:
        layout: Layout of the state.
        rank: Rank of the state; None means full rank.
        seed: Seed or generator.

    Raises:
        DimensionError: If rank is outside [1, total dimension].
    """
    dim = layout.total_dim
    rank = dim if rank is None else rank
    if not 1 <= rank <= dim:
        msg = f"rank {rank} outside [1, {dim}]"
        raise DimensionError(msg)
    g = _ginibre(make_rng(seed), dim, rank)
    rho = g @ g.conj().T
    return LabeledState(layout, rho / np.trace(rho).real)


def random_pure_state(layout: SubsystemLayout, seed: SeedLike) -> LabeledState:
    """Random rank-1 state."""
    return LabeledState.from_ket(layout, random_ket(layout.total_dim, seed))


def random_channel(in_dim: int, out_dim: int, kraus_count: int, seed: SeedLike) -> KrausChannel:
    """Random channel sliced from a random isometry.

    A random isometry V of shape (kraus_count·out_dim) × in_dim is cut into
    kraus_count blocks of out_dim rows; Σ K†K = V†V = I.

    Raises:
        ChannelError: If kraus_count < 1 or in_dim > out_dim·kraus_count.
    """
    if kraus_count < 1:
        msg = f"kraus_count must be >= 1, got {kraus_count}"
        raise ChannelError(msg)
    if in_dim > out_dim * kraus_count:
        msg = (
            f"cannot draw a channel {in_dim} -> {out_dim} with {kraus_count} Kraus operators: "
            f"no isometry into dimension {out_dim * kraus_count}"
        )
        raise ChannelError(msg)
    v = random_isometry(in_dim, out_dim * kraus_count, seed)
    return KrausChannel(tuple(v.reshape(kraus_count, out_dim, in_dim)))


def random_ensemble(
    size: int,
    layout: SubsystemLayout,
    seed: SeedLike,
    *,
    rank: int | None = None,
) -> Ensemble:
    """Random weights and random states of the given rank (None for full rank)."""
    rng = make_rng(seed)
    weights = rng.dirichlet(np.ones(size))
    states = tuple(random_density_matrix(layout, rank, rng) for _ in range(size))
    return Ensemble.of(weights, states)


def random_chain_amplitudes(
    j: int,
    a_dim: int,
    b_dim: int,
    link_dims: list[tuple[int, int]],
    seed: SeedLike,
) -> ChainAmplitudes:
    """Random root, random A(b|a) and random isometric links for a chain net."""
    rng = make_rng(seed)
    links = []
    previous = b_dim
    for b_k, e_k in link_dims[:j]:
        links.append(random_isometry(previous, b_k * e_k, rng))
        previous = b_k
    return ChainAmplitudes(
        root=random_ket(a_dim, rng),
        first=random_amplitudes(b_dim, a_dim, rng),
        links=tuple(links),
    )


def random_trinode_tables(
    kind: TriNodeKind,
    dims: Mapping[Label, int],
    env_dim: int,
    seed: SeedLike,
) -> dict[Label, ComplexMatrix]:
    """Random normalized amplitude tables for every node of a tri-node net.

    Args:
        kind: Net shape.
        dims: Dimensions of a, e and b.
        env_dim: Dimension of each environment node.
        seed: Seed or generator.
    """
    rng = make_rng(seed)
    parents = trinode_layout(kind)
    sizes = {label: dims.get(label, env_dim) for label in parents}
    tables = {}
    for label, node_parents in parents.items():
        cols = int(np.prod([sizes[p] for p in node_parents], dtype=np.int64))
        tables[label] = random_amplitudes(sizes[label], cols, rng)
    return tables
