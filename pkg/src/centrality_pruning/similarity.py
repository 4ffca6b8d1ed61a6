"""Absolute-cosine similarity between filter representatives and the
distance transform used for shortest paths."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .errors import DimensionMismatch
from .representatives import Representative

DISTANCE_FLOOR = 1e-9


@dataclass(frozen=True, eq=False)
class SimilarityMatrix:
    w: np.ndarray = field(repr=False)
    zero: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.w.flags.writeable = False
        self.zero.flags.writeable = False

    @property
    def n(self) -> int:
        return self.w.shape[0]


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    d: np.ndarray = field(repr=False)
    zero: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.d.flags.writeable = False
        self.zero.flags.writeable = False

    @property
    def n(self) -> int:
        return self.d.shape[0]


def similarity_matrix(reps: Sequence[Representative], backend: str | None = None) -> SimilarityMatrix:
    """w[i, j] = |cos(f_i, f_j)|; zero-flagged filters are similar to nothing,
    themselves included."""
    if not reps:
        raise DimensionMismatch("need at least one representative")
    lengths = {r.vector.shape for r in reps}
    if len(lengths) != 1 or len(next(iter(lengths))) != 1:
        raise DimensionMismatch(f"representatives have mismatched shapes {sorted(lengths)}")
    R = np.ascontiguousarray(np.stack([r.vector for r in reps]), dtype=np.float64)
    zero = np.array([r.is_zero for r in reps], dtype=bool)
    W = kernels.get(backend).abscos_matrix(R, zero.view(np.uint8))
    return SimilarityMatrix(W, zero)


def to_distance(W: SimilarityMatrix) -> DistanceMatrix:
    d = np.maximum(1.0 - W.w, DISTANCE_FLOOR)
    np.fill_diagonal(d, 0.0)
    return DistanceMatrix(d, W.zero.copy())


def from_array(w: np.ndarray, zero: np.ndarray | None = None) -> SimilarityMatrix:
    """Wrap an explicit similarity array (tests, oracle studies)."""
    w = np.array(w, dtype=np.float64)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise DimensionMismatch(f"similarity matrix must be square, got {w.shape}")
    if zero is None:
        zero = np.zeros(w.shape[0], dtype=bool)
    return SimilarityMatrix(w, np.array(zero, dtype=bool))
