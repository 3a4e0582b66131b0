"""Tests for seeded random instances."""

import numpy as np
import pytest

from qbnet_entropy.channels import validate_channel
from qbnet_entropy.entropy import ProbDist
from qbnet_entropy.errors import ChannelError, DimensionError
from qbnet_entropy.randgen import (
    ClassicalKind,
    derive_seed,
    make_rng,
    random_channel,
    random_classical,
    random_density_matrix,
    random_ensemble,
    random_isometry,
    random_ket,
)
from qbnet_entropy.tensor_core import SubsystemLayout

LAYOUT = SubsystemLayout.of(("a", 2), ("b", 3))


def test_derive_seed_is_deterministic() -> None:
    """Test that trial seeds depend only on (base, trial)."""
    assert derive_seed(7, 3) == derive_seed(7, 3)
    assert len({derive_seed(7, t) for t in range(50)}) == 50
    assert derive_seed(7, 0) != derive_seed(8, 0)


def test_same_seed_same_state() -> None:
    """Test reproducibility of a drawn state."""
    first = random_density_matrix(LAYOUT, None, 42)
    second = random_density_matrix(LAYOUT, None, 42)
    np.testing.assert_array_equal(first.matrix, second.matrix)


def test_make_rng_passes_generators_through() -> None:
    """Test that a generator is shared rather than reseeded."""
    rng = make_rng(1)
    assert make_rng(rng) is rng


@pytest.mark.parametrize("rank", [1, 3, None])
def test_density_matrix_rank(rank: int | None) -> None:
    """Test the rank and trace of a drawn state."""
    state = random_density_matrix(LAYOUT, rank, 5)
    spectrum = state.spectrum()

    assert np.trace(state.matrix).real == pytest.approx(1.0)
    assert int(np.sum(spectrum > 1e-10)) == (rank or LAYOUT.total_dim)
    assert spectrum.min() > -1e-12


def test_density_matrix_rank_range() -> None:
    """Test the rank bounds."""
    with pytest.raises(DimensionError, match=r"rank 7 outside \[1, 6\]"):
        random_density_matrix(LAYOUT, 7, 0)


def test_random_isometry() -> None:
    """Test V†V = I and the dimension check."""
    v = random_isometry(2, 5, 9)
    assert v.shape == (5, 2)
    np.testing.assert_allclose(v.conj().T @ v, np.eye(2), atol=1e-12)

    with pytest.raises(DimensionError, match="no isometry from dimension 3 into 2"):
        random_isometry(3, 2, 0)


def test_random_ket_is_unit() -> None:
    """Test the norm of a random ket."""
    assert np.linalg.norm(random_ket(4, 3)) == pytest.approx(1.0)


def test_random_channel_is_complete() -> None:
    """Test that drawn channels satisfy completeness."""
    channel = random_channel(3, 2, 4, 11)
    assert (channel.in_dim, channel.out_dim, len(channel.kraus)) == (3, 2, 4)
    assert validate_channel(channel).valid


@pytest.mark.parametrize(
    ("in_dim", "out_dim", "kraus_count", "match"),
    [
        (2, 2, 0, "kraus_count must be >= 1"),
        (5, 2, 2, "no isometry into dimension 4"),
    ],
)
def test_random_channel_errors(in_dim: int, out_dim: int, kraus_count: int, match: str) -> None:
    """Test the labeled errors for impossible channel shapes."""
    with pytest.raises(ChannelError, match=match):
        random_channel(in_dim, out_dim, kraus_count, 0)


def test_random_distribution() -> None:
    """Test a drawn distribution."""
    p = random_classical(ClassicalKind.DIST, 5, 1, variable="y")
    assert isinstance(p, ProbDist)
    assert p.variables == ("y",)
    assert p.probabilities.sum() == pytest.approx(1.0)


def test_random_stochastic_matrix() -> None:
    """Test that a drawn matrix is column stochastic with shape (N_out, N_in)."""
    t = np.asarray(random_classical(ClassicalKind.STOCHASTIC, (3, 4), 2))
    assert t.shape == (3, 4)
    np.testing.assert_allclose(t.sum(axis=0), np.ones(4))
    assert t.min() >= 0


def test_random_doubly_stochastic_matrix() -> None:
    """Test that rows and columns of a doubly stochastic draw sum to 1."""
    t = np.asarray(random_classical(ClassicalKind.DOUBLY_STOCHASTIC, 4, 2))
    np.testing.assert_allclose(t.sum(axis=0), np.ones(4))
    np.testing.assert_allclose(t.sum(axis=1), np.ones(4))


def test_random_doubly_stochastic_needs_square() -> None:
    """Test that a rectangular doubly stochastic request is refused."""
    with pytest.raises(DimensionError, match="square"):
        random_classical(ClassicalKind.DOUBLY_STOCHASTIC, (2, 3), 0)


def test_random_deterministic_function() -> None:
    """Test that each column of a function matrix has a single 1."""
    t = np.asarray(random_classical(ClassicalKind.DETERMINISTIC_FUNCTION, (3, 5), 4))
    np.testing.assert_array_equal(t.sum(axis=0), np.ones(5))
    assert set(np.unique(t)) <= {0.0, 1.0}


def test_random_classical_size_check() -> None:
    """Test that sizes must be positive."""
    with pytest.raises(DimensionError, match="sizes >= 1"):
        random_classical(ClassicalKind.DIST, 0, 0)


def test_random_ensemble() -> None:
    """Test the shape of a drawn ensemble."""
    ensemble = random_ensemble(3, SubsystemLayout.of(("q", 2)), 6, rank=1)
    assert ensemble.size == 3
    assert ensemble.weights.probabilities.sum() == pytest.approx(1.0)
    for state in ensemble.states:
        assert state.spectrum()[-1] == pytest.approx(1.0)
