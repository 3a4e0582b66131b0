"""Type aliases and protocols for qbnet-entropy."""

from collections.abc import Callable
from typing import Any, Protocol

import numpy as np
import numpy.typing as npt

ComplexMatrix = npt.NDArray[np.complex128]
"""Dense complex matrix (amplitude tables, operators, density matrices)."""

RealArray = npt.NDArray[np.float64]
"""Dense real array (probabilities, spectra, transition matrices)."""

Label = str
"""Subsystem or node label."""

Seed = int
"""64-bit unsigned seed."""

SeedLike = int | np.random.Generator
"""Either a seed or an already constructed generator."""

ContextKey = str
"""Type alias for run-context keys."""

ContextValue = Any
"""Type alias for run-context values."""

ContextDict = dict[ContextKey, ContextValue]
"""Type alias for the run-context dictionary."""


class InstanceSampler(Protocol):
    """Protocol for functions that draw a random checker instance."""

    def __call__(self, seed: Seed, dims: tuple[int, ...]) -> Any:  # noqa: ANN401
        """Draw one instance for the given seed and per-subsystem dimensions."""
        ...


EntropyOf = Callable[[frozenset[Label]], float]
"""Maps a set of labels to the joint entropy of those labels."""
