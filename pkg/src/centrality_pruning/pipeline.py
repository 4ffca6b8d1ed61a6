"""Per-layer scoring: filters in, selection out, for any supported method."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .baselines import cs_prune, gm_scores, l1_norms, l1_scores
from .centrality import PruneSelection, ScoreVector, bc_scores, check_ratio, rank_filters, wdc_scores
from .representatives import layer_representatives
from .similarity import SimilarityMatrix, similarity_matrix, to_distance

SCORING_METHODS = ("wdc", "bc", "l1", "gm", "cs")


@dataclass(frozen=True, eq=False)
class LayerResult:
    selection: PruneSelection
    scores: ScoreVector | None


def layer_similarity(filters: np.ndarray, backend: str | None = None) -> SimilarityMatrix:
    return similarity_matrix(layer_representatives(filters), backend=backend)


def score_layer(filters: np.ndarray, method: str, p: float,
                W: SimilarityMatrix | None = None, backend: str | None = None) -> LayerResult:
    """Score an (n, w, h, c) layer with ``method`` and select at ratio ``p``.

    ``W`` may be passed in to share the similarity matrix between methods.
    """
    if method not in SCORING_METHODS:
        raise ValueError(f"unknown method {method!r}")
    check_ratio(p)
    if method in ("wdc", "bc", "cs") and W is None:
        W = layer_similarity(filters, backend)
    if method == "cs":
        return LayerResult(cs_prune(W, l1_norms(filters), p), None)
    if method == "wdc":
        scores = wdc_scores(W)
    elif method == "bc":
        scores = bc_scores(to_distance(W), backend=backend)
    elif method == "l1":
        scores = l1_scores(filters)
    else:
        scores = gm_scores(filters)
    return LayerResult(rank_filters(scores, p), scores)
