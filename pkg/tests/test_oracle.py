import math

import numpy as np
import pytest

from centrality_pruning.errors import InvalidRatio, TooLarge
from centrality_pruning.oracle import optimal_subset, retained_similarity
from centrality_pruning.similarity import from_array
from oracles import enumerate_subsets_bitmask, random_similarity


def test_p_zero(backend):
    w = random_similarity(np.random.default_rng(0), 6)
    res = optimal_subset(from_array(w), 0.0, backend=backend)
    assert res.keep == tuple(range(6))
    assert res.objective == pytest.approx((w.sum() - np.trace(w)) / 2, abs=1e-12)
    assert res.subsets_examined == 1


def test_three_filters(backend):
    W = from_array([[1.0, 0.9, 0.1], [0.9, 1.0, 0.2], [0.1, 0.2, 1.0]])
    res = optimal_subset(W, 1 / 3, backend=backend)
    assert res.keep == (0, 2)
    assert res.objective == pytest.approx(0.1, abs=1e-15)
    assert res.subsets_examined == 3


def test_hub_filter_dropped(backend):
    w = np.full((4, 4), 0.1)
    w[3, :] = w[:, 3] = 0.95
    np.fill_diagonal(w, 1.0)
    res = optimal_subset(from_array(w), 0.25, backend=backend)
    assert res.keep == (0, 1, 2)
    assert res.subsets_examined == 4


def test_ties_lexicographic(backend):
    w = np.full((5, 5), 0.3)
    np.fill_diagonal(w, 1.0)
    assert optimal_subset(from_array(w), 0.4, backend=backend).keep == (0, 1, 2)


def test_keep_none(backend):
    res = optimal_subset(from_array([[1.0, 0.2], [0.2, 1.0]]), 1.0, backend=backend)
    assert res.keep == () and res.objective == 0.0 and res.subsets_examined == 1


def test_too_large():
    with pytest.raises(TooLarge):
        optimal_subset(from_array(np.eye(21)), 0.5)
    optimal_subset(from_array(np.eye(21)), 0.0, limit=21)


def test_invalid_ratio():
    with pytest.raises(InvalidRatio):
        optimal_subset(from_array(np.eye(3)), -1)


def test_matches_bitmask_enumeration(backend):
    rng = np.random.default_rng(1)
    for _ in range(30):
        n = int(rng.integers(1, 10))
        w = random_similarity(rng, n)
        p = float(rng.choice([0.25, 0.5, 0.75]))
        res = optimal_subset(from_array(w), p, backend=backend)
        k = len(res.keep)
        allsets = enumerate_subsets_bitmask(w, k)
        assert res.subsets_examined == math.comb(n, k) == len(allsets)
        best = min(obj for _, obj in allsets)
        assert res.objective <= best + 1e-12
        assert abs(res.objective - retained_similarity(w, res.keep)) <= 1e-12


def test_c20_10_runs():
    w = random_similarity(np.random.default_rng(2), 20)
    res = optimal_subset(from_array(w), 0.5)
    assert res.subsets_examined == 184756
