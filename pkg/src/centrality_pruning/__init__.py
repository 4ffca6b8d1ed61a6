"""Data-free CNN filter pruning by graph centrality.

Filters are reduced to rank-1 representatives, linked by absolute cosine
similarity, and scored by weighted degree or betweenness centrality; the
most central (most replaceable) filters are pruned.
"""

__version__ = "0.1.0"

from .baselines import cs_prune, gm_scores, l1_scores
from .centrality import PruneSelection, ScoreVector, bc_scores, keep_count, rank_filters, wdc_scores
from .errors import PruneError
from .oracle import OracleResult, optimal_subset
from .planner import LayerCost, PruningPlan, build_plan, layer_cost
from .representatives import Representative, flatten_filter, leading_singular_triplet, representative
from .similarity import DistanceMatrix, SimilarityMatrix, similarity_matrix, to_distance
from .tensor_io import LayerSpec, ModelManifest, Tensor, load_manifest, parse_npy, to_npy

__all__ = [
    "DistanceMatrix", "LayerCost", "LayerSpec", "ModelManifest", "OracleResult", "PruneError",
    "PruneSelection", "PruningPlan", "Representative", "ScoreVector", "SimilarityMatrix", "Tensor",
    "bc_scores", "build_plan", "cs_prune", "flatten_filter", "gm_scores", "keep_count", "l1_scores",
    "layer_cost", "leading_singular_triplet", "load_manifest", "optimal_subset", "parse_npy",
    "rank_filters", "representative", "similarity_matrix", "to_distance", "to_npy", "wdc_scores",
]
