"""numpy implementations of the compiled kernels.

Every floating-point reduction is written out in the same order as the
Cython loops in ``_kernels.pyx`` (no pairwise ``np.sum`` on non-integer
data), which keeps the two backends bit-identical.
"""

import numpy as np


def abscos_matrix(R, zero):
    R = np.ascontiguousarray(R, dtype=np.float64)
    zero = np.asarray(zero, dtype=bool)
    n, d = R.shape
    W = np.zeros((n, n))
    norms = np.zeros(n)
    for k in range(d):
        norms = norms + R[:, k] * R[:, k]
    norms = np.sqrt(norms)
    for i in range(n):
        if zero[i]:
            continue
        W[i, i] = 1.0
        js = np.arange(i + 1, n)[~zero[i + 1:]]
        if js.size == 0:
            continue
        acc = np.zeros(js.size)
        for k in range(d):
            acc = acc + R[i, k] * R[js, k]
        a = np.minimum(np.abs(acc / (norms[i] * norms[js])), 1.0)
        W[i, js] = a
        W[js, i] = a
    return W


def brandes(D, tol):
    D = np.ascontiguousarray(D, dtype=np.float64)
    n = D.shape[0]
    C = np.zeros(n)
    for s in range(n):
        dist = np.full(n, np.inf)
        dist[s] = 0.0
        settled = np.zeros(n, dtype=bool)
        order = np.empty(n, dtype=np.intp)
        for step in range(n):
            open_ = np.flatnonzero(~settled)
            v = open_[np.argmin(dist[open_])]
            settled[v] = True
            order[step] = v
            alt = dist[v] + D[v]
            upd = ~settled & (alt < dist)
            dist[upd] = alt[upd]

        sigma = np.zeros(n)
        sigma[s] = 1.0
        preds = [None] * n
        for idx in range(1, n):
            w = order[idx]
            prev = order[:idx]
            mask = (dist[prev] + D[prev, w]) - dist[w] <= tol * dist[w]
            p = np.sort(prev[mask])
            preds[w] = p
            # path counts are integers held exactly in doubles; order is irrelevant
            sigma[w] = sigma[p].sum()

        delta = np.zeros(n)
        for idx in range(n - 1, 0, -1):
            w = order[idx]
            coeff = (1.0 + delta[w]) / sigma[w]
            p = preds[w]
            delta[p] = delta[p] + sigma[p] * coeff
        delta[s] = 0.0
        C = C + delta
    return C / 2.0


def subset_search(W, k, tol):
    W = np.ascontiguousarray(W, dtype=np.float64)
    n = W.shape[0]
    if k == 0:
        return (), 1
    contrib = np.zeros((k + 1, n))
    obj = [0.0] * (k + 1)
    c = [0] * k
    best = np.inf
    bestc = None
    count = 0
    depth = 0
    while True:
        if c[depth] > n - (k - depth):
            if depth == 0:
                break
            depth -= 1
            c[depth] += 1
            continue
        j = c[depth]
        obj[depth + 1] = obj[depth] + float(contrib[depth, j])
        if depth + 1 == k:
            count += 1
            if obj[k] < best - tol:
                best = obj[k]
                bestc = tuple(c)
            c[depth] += 1
            continue
        contrib[depth + 1, j + 1:] = contrib[depth, j + 1:] + W[j, j + 1:]
        depth += 1
        c[depth] = j + 1
    return bestc, count
