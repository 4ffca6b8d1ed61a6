"""Rank-1 filter representatives.

Each (w, h, c) filter is flattened to a (w*h, c) matrix whose leading left
singular vector, sign-fixed, stands in for the whole filter.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NoConvergence, ZeroMatrix

REL_TOL = 1e-12
VEC_TOL = 1e-9
MAX_ITER = 10_000


@dataclass(frozen=True)
class Representative:
    vector: np.ndarray = field(compare=False)
    is_zero: bool = False

    def __eq__(self, other):
        if not isinstance(other, Representative):
            return NotImplemented
        return self.is_zero == other.is_zero and np.array_equal(self.vector, other.vector)

    def __hash__(self):
        return hash((self.is_zero, self.vector.tobytes()))


def flatten_filter(F: np.ndarray) -> np.ndarray:
    """(w, h, c) -> (w*h, c) with row (i*h + j) holding F[i, j, :]."""
    F = np.asarray(F)
    if F.ndim != 3:
        raise ValueError(f"expected a 3-D filter, got shape {F.shape}")
    w, h, c = F.shape
    return np.ascontiguousarray(F.reshape(w * h, c))


def _gram(M: np.ndarray) -> np.ndarray:
    # Row-by-row dot products; avoids BLAS so results never depend on threading.
    k = M.shape[0]
    G = np.empty((k, k))
    for i in range(k):
        for j in range(i, k):
            G[i, j] = G[j, i] = np.sum(M[i] * M[j])
    return G


def _fix_sign(v: np.ndarray) -> np.ndarray:
    # argmax returns the lowest index among equal magnitudes
    return -v if v[np.argmax(np.abs(v))] < 0 else v


def _power_iterate(G: np.ndarray, v: np.ndarray) -> tuple[float, np.ndarray, bool]:
    # Stops once both the eigenvalue and the vector settle. If only the
    # eigenvalue settles (near-equal top pair) the cap is hit and the result is
    # still accepted; ``ok`` is False only when the eigenvalue never settled.
    lam = 0.0
    settled = False
    for _ in range(MAX_ITER):
        u = np.sum(G * v, axis=1)
        norm = np.sqrt(np.sum(u * u))
        if norm == 0.0:
            return 0.0, v, True
        u = u / norm
        settled = abs(norm - lam) <= REL_TOL * norm
        done = settled and np.max(np.abs(u - v)) <= VEC_TOL
        lam, v = norm, u
        if done:
            break
    return lam, v, settled


def leading_singular_triplet(M: np.ndarray) -> tuple[float, np.ndarray, np.ndarray]:
    """Largest singular value and its unit singular vectors (l1, r1).

    Power iteration on the smaller Gram matrix, started from the normalized
    all-ones vector. ``l1`` is sign-fixed so that its largest-magnitude entry
    is positive.
    """
    M = np.asarray(M, dtype=np.float64)
    if M.ndim != 2:
        raise ValueError(f"expected a matrix, got shape {M.shape}")
    scale = np.max(np.abs(M)) if M.size else 0.0
    if scale == 0.0:
        raise ZeroMatrix("matrix is all zeros")
    # Division by an entry of M keeps the iteration exactly scale-free
    # whenever c*M is exactly representable.
    A = M / scale
    p, q = A.shape
    left = p <= q
    G = _gram(A) if left else _gram(np.ascontiguousarray(A.T))
    k = G.shape[0]

    lam, v, ok = _power_iterate(G, np.full(k, 1.0 / np.sqrt(k)))
    # Any eigenvalue below the largest diagonal entry cannot be the top one:
    # the all-ones start was (numerically) orthogonal to the leading vector.
    top_diag = int(np.argmax(np.diag(G)))
    if lam < G[top_diag, top_diag] * (1.0 - 1e-12):
        start = np.zeros(k)
        start[top_diag] = 1.0
        lam, v, ok = _power_iterate(G, start)
    if not ok:
        raise NoConvergence(f"power iteration did not converge in {MAX_ITER} iterations")

    if left:
        l1 = _fix_sign(v)
        r = np.sum(A * l1[:, None], axis=0)
    else:
        r = v
        l = np.sum(A * r[None, :], axis=1)
        l1 = _fix_sign(l / np.sqrt(np.sum(l * l)))
        r = np.sum(A * l1[:, None], axis=0)
    s = np.sqrt(np.sum(r * r))
    r1 = r / s
    return float(s * scale), l1, r1


def representative(F: np.ndarray) -> Representative:
    M = flatten_filter(np.asarray(F, dtype=np.float64))
    if not np.any(M):
        return Representative(np.zeros(M.shape[0]), is_zero=True)
    _, l1, _ = leading_singular_triplet(M)
    return Representative(l1, is_zero=False)


def layer_representatives(filters: np.ndarray) -> list[Representative]:
    """Representatives for every filter of an (n, w, h, c) layer tensor."""
    filters = np.asarray(filters, dtype=np.float64)
    if filters.ndim != 4:
        raise ValueError(f"expected an (n, w, h, c) tensor, got shape {filters.shape}")
    return [representative(F) for F in filters]
