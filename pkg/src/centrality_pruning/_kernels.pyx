# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops. Operation order mirrors ``_fallback.py`` exactly so both
backends return bit-identical results."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs, INFINITY
from libc.stdlib cimport malloc, calloc, free

cnp.import_array()


def abscos_matrix(const double[:, ::1] R, const unsigned char[::1] zero):
    cdef Py_ssize_t n = R.shape[0], d = R.shape[1]
    cdef Py_ssize_t i, j, k
    cdef double acc, a
    out = np.zeros((n, n), dtype=np.float64)
    cdef double[:, ::1] W = out
    cdef double *norms = <double *> malloc(max(n, 1) * sizeof(double))
    if norms == NULL:
        raise MemoryError()
    with nogil:
        for i in range(n):
            acc = 0.0
            for k in range(d):
                acc = acc + R[i, k] * R[i, k]
            norms[i] = sqrt(acc)
        for i in range(n):
            if zero[i]:
                continue
            W[i, i] = 1.0
            for j in range(i + 1, n):
                if zero[j]:
                    continue
                acc = 0.0
                for k in range(d):
                    acc = acc + R[i, k] * R[j, k]
                a = fabs(acc / (norms[i] * norms[j]))
                if a > 1.0:
                    a = 1.0
                W[i, j] = a
                W[j, i] = a
    free(norms)
    return out


def brandes(const double[:, ::1] D, double tol):
    """Unnormalized betweenness over unordered pairs on a dense weighted graph."""
    cdef Py_ssize_t n = D.shape[0]
    cdef Py_ssize_t s, step, idx, i, v, w
    cdef double best, alt, coeff
    out = np.zeros(n, dtype=np.float64)
    cdef double[::1] C = out
    cdef double *dist = <double *> malloc(max(n, 1) * sizeof(double))
    cdef double *sigma = <double *> malloc(max(n, 1) * sizeof(double))
    cdef double *delta = <double *> malloc(max(n, 1) * sizeof(double))
    cdef Py_ssize_t *order = <Py_ssize_t *> malloc(max(n, 1) * sizeof(Py_ssize_t))
    cdef unsigned char *settled = <unsigned char *> malloc(max(n, 1))
    cdef unsigned char *pred = <unsigned char *> malloc(max(n * n, 1))
    if dist == NULL or sigma == NULL or delta == NULL or order == NULL or settled == NULL or pred == NULL:
        free(dist); free(sigma); free(delta); free(order); free(settled); free(pred)
        raise MemoryError()
    with nogil:
        for s in range(n):
            for i in range(n):
                dist[i] = INFINITY
                sigma[i] = 0.0
                delta[i] = 0.0
                settled[i] = 0
            dist[s] = 0.0
            # settle order by Dijkstra on the dense matrix
            for step in range(n):
                v = -1
                best = INFINITY
                for i in range(n):
                    if not settled[i] and (v < 0 or dist[i] < best):
                        v = i
                        best = dist[i]
                settled[v] = 1
                order[step] = v
                for w in range(n):
                    if not settled[w]:
                        alt = dist[v] + D[v, w]
                        if alt < dist[w]:
                            dist[w] = alt
            # path counts from the final distances
            sigma[s] = 1.0
            for idx in range(1, n):
                w = order[idx]
                for i in range(n):
                    pred[w * n + i] = 0
                for i in range(idx):
                    v = order[i]
                    if (dist[v] + D[v, w]) - dist[w] <= tol * dist[w]:
                        pred[w * n + v] = 1
                        sigma[w] = sigma[w] + sigma[v]
            # dependency accumulation in reverse settle order
            for idx in range(n - 1, 0, -1):
                w = order[idx]
                coeff = (1.0 + delta[w]) / sigma[w]
                for v in range(n):
                    if pred[w * n + v]:
                        delta[v] = delta[v] + sigma[v] * coeff
            for w in range(n):
                if w != s:
                    C[w] = C[w] + delta[w]
        for w in range(n):
            C[w] = C[w] / 2.0
    free(dist); free(sigma); free(delta); free(order); free(settled); free(pred)
    return out


def subset_search(const double[:, ::1] W, Py_ssize_t k, double tol):
    """Lexicographic enumeration of size-k subsets minimizing the sum of
    pairwise weights. Returns (best index tuple, subsets examined)."""
    cdef Py_ssize_t n = W.shape[0]
    cdef Py_ssize_t depth, j, t, count = 0
    cdef double best = INFINITY
    if k == 0:
        return (), 1
    cdef double *contrib = <double *> calloc((k + 1) * n, sizeof(double))
    cdef double *obj = <double *> calloc(k + 1, sizeof(double))
    cdef Py_ssize_t *c = <Py_ssize_t *> calloc(k, sizeof(Py_ssize_t))
    cdef Py_ssize_t *bestc = <Py_ssize_t *> calloc(k, sizeof(Py_ssize_t))
    if contrib == NULL or obj == NULL or c == NULL or bestc == NULL:
        free(contrib); free(obj); free(c); free(bestc)
        raise MemoryError()
    with nogil:
        depth = 0
        c[0] = 0
        while True:
            if c[depth] > n - (k - depth):
                if depth == 0:
                    break
                depth -= 1
                c[depth] += 1
                continue
            j = c[depth]
            obj[depth + 1] = obj[depth] + contrib[depth * n + j]
            if depth + 1 == k:
                count += 1
                if obj[k] < best - tol:
                    best = obj[k]
                    for t in range(k):
                        bestc[t] = c[t]
                c[depth] += 1
                continue
            for t in range(j + 1, n):
                contrib[(depth + 1) * n + t] = contrib[depth * n + t] + W[j, t]
            depth += 1
            c[depth] = j + 1
    result = tuple(int(bestc[t]) for t in range(k))
    free(contrib); free(obj); free(c); free(bestc)
    return result, count
