"""Centrality scores over the filter similarity graph and budgeted selection."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .errors import InvalidRatio
from .similarity import DistanceMatrix, SimilarityMatrix

METHODS = ("wdc", "bc", "l1", "gm", "cs", "oracle")
PATH_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class ScoreVector:
    """Per-filter scores; higher means more prunable."""

    method: str
    scores: np.ndarray = field(repr=False)

    @property
    def n(self) -> int:
        return len(self.scores)


@dataclass(frozen=True)
class PruneSelection:
    keep: tuple[int, ...]
    prune: tuple[int, ...]
    p: float
    # greedy steps ((i, j), pruned) for the pairwise-similarity baseline
    trace: tuple = field(default=(), compare=False)

    @property
    def n(self) -> int:
        return len(self.keep) + len(self.prune)


def check_ratio(p: float) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise InvalidRatio(f"pruning ratio must lie in [0, 1], got {p}")
    return p


def keep_count(n: int, p: float) -> int:
    """ceil((1 - p) * n), snapping values within 1e-9 of an integer
    (p = 1/3 with n = 3 must keep 2, not 3)."""
    x = (1.0 - check_ratio(p)) * n
    r = round(x)
    if abs(x - r) <= 1e-9 * max(1, n):
        return int(r)
    return math.ceil(x)


def wdc_scores(W: SimilarityMatrix) -> ScoreVector:
    n = W.n
    acc = np.zeros(n)
    for u in range(n):
        row = W.w[u].copy()
        row[u] = 0.0
        acc = acc + row
    acc[W.zero] = np.inf
    return ScoreVector("wdc", acc)


def bc_scores(D: DistanceMatrix, backend: str | None = None) -> ScoreVector:
    scores = kernels.get(backend).brandes(np.ascontiguousarray(D.d), PATH_TOL)
    scores[D.zero] = np.inf
    return ScoreVector("bc", scores)


def rank_filters(scores: ScoreVector | Sequence[float], p: float) -> PruneSelection:
    """Prune the highest-scoring filters so that ceil((1-p)n) remain; ties
    prune the higher index first."""
    values = np.asarray(scores.scores if isinstance(scores, ScoreVector) else scores, dtype=np.float64)
    n = len(values)
    n_keep = keep_count(n, p)
    order = sorted(range(n), key=lambda i: (-values[i], -i))
    prune = tuple(sorted(order[: n - n_keep]))
    pruned = set(prune)
    keep = tuple(i for i in range(n) if i not in pruned)
    return PruneSelection(keep, prune, float(p))
