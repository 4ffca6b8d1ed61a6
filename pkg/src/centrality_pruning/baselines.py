"""Passive baseline scorers: l1-norm, geometric-median proximity, and the
greedy pairwise-similarity pruner.

The pairwise-similarity pruner is a reconstruction from a one-sentence
method description: repeatedly take the most similar surviving pair and
drop its smaller-norm member.
"""

from __future__ import annotations

import numpy as np

from .centrality import PruneSelection, ScoreVector, check_ratio, keep_count
from .errors import DimensionMismatch, TooFewFilters
from .similarity import SimilarityMatrix


def _flat(filters) -> np.ndarray:
    filters = np.asarray(filters, dtype=np.float64)
    if filters.ndim < 2 or filters.shape[0] < 1:
        raise DimensionMismatch(f"expected (n, ...) filters, got shape {filters.shape}")
    return filters.reshape(filters.shape[0], -1)


def l1_norms(filters) -> np.ndarray:
    return np.abs(_flat(filters)).sum(axis=1)


def l1_scores(filters) -> ScoreVector:
    return ScoreVector("l1", -l1_norms(filters))


def gm_scores(filters) -> ScoreVector:
    X = _flat(filters)
    n = X.shape[0]
    if n < 2:
        raise TooFewFilters("geometric-median scoring needs at least two filters")
    dist = np.zeros((n, n))
    for i in range(n - 1):
        diff = X[i + 1:] - X[i]
        dist[i, i + 1:] = np.sqrt(np.sum(diff * diff, axis=1))
    dist = dist + dist.T
    return ScoreVector("gm", -dist.sum(axis=1))


def cs_prune(W: SimilarityMatrix, l1norms, p: float) -> PruneSelection:
    check_ratio(p)
    n = W.n
    norms = np.asarray(l1norms, dtype=np.float64)
    if norms.shape != (n,):
        raise DimensionMismatch(f"need {n} l1-norms, got shape {norms.shape}")
    n_prune = n - keep_count(n, p)
    alive = np.ones(n, dtype=bool)
    upper = np.triu(np.ones((n, n), dtype=bool), 1)
    trace = []
    for _ in range(n_prune):
        live = np.flatnonzero(alive)
        if live.size == 1:
            # a lone survivor has no partner; only reachable at p = 1
            victim = int(live[0])
            trace.append(((victim,), victim))
        else:
            cand = np.where(upper & alive[:, None] & alive[None, :], W.w, -np.inf)
            i, j = divmod(int(np.argmax(cand)), n)
            victim = j if norms[j] <= norms[i] else i
            trace.append(((i, j), victim))
        alive[victim] = False
    keep = tuple(int(i) for i in np.flatnonzero(alive))
    prune = tuple(int(i) for i in np.flatnonzero(~alive))
    return PruneSelection(keep, prune, float(p), tuple(trace))
