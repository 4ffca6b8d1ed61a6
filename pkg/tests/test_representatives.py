import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra import numpy as hnp

from centrality_pruning.errors import ZeroMatrix
from centrality_pruning.representatives import (
    flatten_filter, layer_representatives, leading_singular_triplet, representative,
)
from oracles import jacobi_svd, oracle_rank1_residual, rank1_residual


def f32(a):
    """Round to float32 and back, so that scaling by 10 stays exact in float64."""
    return np.asarray(a, dtype=np.float32).astype(np.float64)


class TestFlatten:
    def test_1x1(self):
        F = np.arange(5.0).reshape(1, 1, 5)
        np.testing.assert_array_equal(flatten_filter(F), [[0, 1, 2, 3, 4]])

    def test_2x2x1(self):
        a, b, d, e = 1.0, 2.0, 3.0, 4.0
        F = np.zeros((2, 2, 1))
        F[0, 0, 0], F[0, 1, 0], F[1, 0, 0], F[1, 1, 0] = a, b, d, e
        np.testing.assert_array_equal(flatten_filter(F)[:, 0], [a, b, d, e])

    def test_index_formula_exhaustive(self):
        rng = np.random.default_rng(7)
        w, h, c = 3, 3, 4
        F = rng.standard_normal((w, h, c))
        flat = flatten_filter(F)
        assert flat.shape == (w * h, c)
        # 1-based formula: row (i-1)h + j holds F_{i,j,k}
        for i, j, k in itertools.product(range(1, w + 1), range(1, h + 1), range(1, c + 1)):
            assert flat[(i - 1) * h + j - 1, k - 1] == F[i - 1, j - 1, k - 1]

    def test_non_square_kernel(self):
        F = np.arange(24.0).reshape(2, 3, 4)
        flat = flatten_filter(F)
        for i, j in itertools.product(range(2), range(3)):
            np.testing.assert_array_equal(flat[i * 3 + j], F[i, j])


class TestLeadingTriplet:
    def test_outer_product(self):
        u = np.array([0.5, -2.0, 1.0])
        v = np.array([3.0, 4.0])
        M = np.outer(u, v)
        s, l, r = leading_singular_triplet(M)
        assert s == pytest.approx(np.linalg.norm(u) * np.linalg.norm(v), rel=1e-12)
        np.testing.assert_allclose(l, -u / np.linalg.norm(u), atol=1e-9)  # -2.0 is largest magnitude
        assert rank1_residual(M, s, l, r) <= 1e-8

    def test_diagonal(self):
        s, l, r = leading_singular_triplet(np.diag([3.0, 1.0]))
        assert s == pytest.approx(3.0, abs=1e-12)
        np.testing.assert_allclose(l, [1.0, 0.0], atol=1e-9)
        np.testing.assert_allclose(r, [1.0, 0.0], atol=1e-9)

    def test_matches_jacobi_6x3(self):
        M = np.random.default_rng(0).standard_normal((6, 3))
        s, l, r = leading_singular_triplet(M)
        U, sv, V = jacobi_svd(M)
        assert s == pytest.approx(sv[0], abs=1e-8)
        sign = np.sign(U[np.argmax(np.abs(U[:, 0])), 0])
        np.testing.assert_allclose(l, sign * U[:, 0], atol=1e-6)
        np.testing.assert_allclose(r, sign * V[:, 0], atol=1e-6)

    def test_start_vector_orthogonal_to_top_direction(self):
        # leading left vector (1, -1)/sqrt2 is orthogonal to the all-ones start
        M = np.array([[2.0, 0.0], [-2.0, 0.0]]) + np.array([[0.0, 0.1], [0.0, 0.1]])
        s, l, r = leading_singular_triplet(M)
        assert s == pytest.approx(jacobi_svd(M)[1][0], abs=1e-10)
        assert rank1_residual(M, s, l, r) <= oracle_rank1_residual(M) + 1e-8

    def test_ones_in_null_space(self):
        M = np.outer([1.0, -1.0], [2.0, 1.0, 0.5])
        s, l, r = leading_singular_triplet(M)
        assert rank1_residual(M, s, l, r) <= 1e-8

    def test_zero_matrix(self):
        with pytest.raises(ZeroMatrix):
            leading_singular_triplet(np.zeros((3, 2)))

    def test_unit_vectors_and_sign(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            M = rng.standard_normal(rng.integers(1, 10, size=2))
            s, l, r = leading_singular_triplet(M)
            assert s >= 0
            assert abs(np.linalg.norm(l) - 1) <= 1e-9
            assert abs(np.linalg.norm(r) - 1) <= 1e-9
            assert l[np.argmax(np.abs(l))] > 0

    @settings(max_examples=100, deadline=None)
    @given(hnp.arrays(np.float64, hnp.array_shapes(min_dims=2, max_dims=2, min_side=1, max_side=8),
                      elements=st.floats(-1e3, 1e3, allow_subnormal=False)))
    def test_optimality_property(self, M):
        if not np.any(M):
            return
        s, l, r = leading_singular_triplet(M)
        scale = max(1.0, np.linalg.norm(M))
        assert rank1_residual(M, s, l, r) <= oracle_rank1_residual(M) + 1e-8 * scale


class TestRepresentative:
    def test_identical_columns(self):
        v = np.array([0.1, -0.4, 0.2, 0.0, 0.3, -0.1, 0.05, 0.0, 0.2])
        F = np.repeat(v[:, None], 4, axis=1).reshape(3, 3, 4)
        rep = representative(F)
        np.testing.assert_allclose(rep.vector, -v / np.linalg.norm(v), atol=1e-12)

    @pytest.mark.parametrize("c", [-2.0, 0.5, 10.0, -3.0, 1e-3])
    def test_scale_invariance_bit_exact(self, c):
        F = f32(np.random.default_rng(3).standard_normal((3, 3, 8)))
        scaled = c * F
        if c in (-2.0, 0.5, 10.0):
            assert representative(scaled) == representative(F)
        else:
            np.testing.assert_allclose(representative(scaled).vector, representative(F).vector, atol=1e-12)

    def test_matches_dense_column(self):
        F = np.random.default_rng(4).standard_normal((3, 3, 8))
        M = flatten_filter(F)
        U, s, V = jacobi_svd(M)
        col = (s[0] * np.outer(U[:, 0], V[:, 0]))[:, 0]
        col = col / np.linalg.norm(col)
        col = col if col[np.argmax(np.abs(col))] > 0 else -col
        np.testing.assert_allclose(representative(F).vector, col, atol=1e-9)

    def test_zero_filter(self):
        rep = representative(np.zeros((3, 3, 2)))
        assert rep.is_zero
        assert not rep.vector.any()
        assert rep.vector.shape == (9,)

    def test_determinism(self):
        F = np.random.default_rng(5).standard_normal((5, 3, 3, 16))
        a = [r.vector.tobytes() for r in layer_representatives(F)]
        b = [r.vector.tobytes() for r in layer_representatives(F.copy())]
        assert a == b

    def test_normalization(self):
        F = np.random.default_rng(6).standard_normal((40, 3, 3, 6))
        for rep in layer_representatives(F):
            assert abs(np.linalg.norm(rep.vector) - 1.0) <= 1e-9
