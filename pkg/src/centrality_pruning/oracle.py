"""Exhaustive minimizer of retained pairwise similarity, for small layers."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable

import numpy as np

from . import kernels
from .centrality import keep_count
from .errors import TooLarge
from .similarity import SimilarityMatrix

DEFAULT_LIMIT = 20
TIE_TOL = 1e-12


@dataclass(frozen=True)
class OracleResult:
    keep: tuple[int, ...]
    objective: float
    subsets_examined: int


def retained_similarity(w: np.ndarray, keep: Iterable[int]) -> float:
    """Sum of w[i, j] over unordered pairs of ``keep``, in lexicographic pair order."""
    keep = sorted(keep)
    total = 0.0
    for a, i in enumerate(keep):
        for j in keep[a + 1:]:
            total += float(w[i, j])
    return total


def optimal_subset(W: SimilarityMatrix, p: float, limit: int = DEFAULT_LIMIT,
                   backend: str | None = None) -> OracleResult:
    n = W.n
    if n > limit:
        raise TooLarge(f"{n} filters exceed the exhaustive-search limit of {limit}")
    k = keep_count(n, p)
    keep, examined = kernels.get(backend).subset_search(np.ascontiguousarray(W.w), k, TIE_TOL)
    assert examined == comb(n, k)
    keep = tuple(int(i) for i in keep)
    return OracleResult(keep, retained_similarity(W.w, keep), examined)
