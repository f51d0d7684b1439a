"""Numeric kernels with two interchangeable implementations.

Every kernel exists twice: a loop version compiled with numba's ``@njit``
and a vectorized pure-numpy version. The public names (``lcs_length``,
``similarity_from_csr``, ``pagerank_scores``, ``best_split``,
``forest_predict``) point at the numba build when numba imports cleanly,
and at the numpy build otherwise or when ``NEWSUM_NO_NUMBA=1`` is set.

Both builds are always importable under ``*_numpy`` / ``*_numba`` names so
tests and ``benchmarks/bench_kernels.py`` can compare them directly.

The tree-split kernels are written so that both paths produce bit-identical
results (sequential accumulation order, stable sorts); the floating-point
kernels (cosine matrix, PageRank) agree to rounding error only.
"""

from __future__ import annotations

import os

import numpy as np

NUMBA_ENV_FLAG = "NEWSUM_NO_NUMBA"


def _numba_disabled_by_env() -> bool:
    return os.environ.get(NUMBA_ENV_FLAG, "").strip().lower() in {"1", "true", "yes", "on"}


try:
    from numba import njit as _njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - sandbox always has numba
    _njit = None
    NUMBA_AVAILABLE = False

NUMBA_ENABLED = NUMBA_AVAILABLE and not _numba_disabled_by_env()


# ---------------------------------------------------------------------------
# Longest common subsequence (token codes as integer arrays)
# ---------------------------------------------------------------------------

def _lcs_length_loop(a, b):
    na = a.shape[0]
    nb = b.shape[0]
    if na == 0 or nb == 0:
        return 0
    prev = np.zeros(nb + 1, dtype=np.int64)
    curr = np.zeros(nb + 1, dtype=np.int64)
    for i in range(na):
        ai = a[i]
        for j in range(1, nb + 1):
            if b[j - 1] == ai:
                v = prev[j - 1] + 1
            else:
                v = prev[j]
                if curr[j - 1] > v:
                    v = curr[j - 1]
            curr[j] = v
        tmp = prev
        prev = curr
        curr = tmp
    return prev[nb]


def lcs_length_numpy(a, b):
    """Row-vectorized LCS: dp row is a prefix-maximum of match candidates."""
    na = a.shape[0]
    nb = b.shape[0]
    if na == 0 or nb == 0:
        return 0
    prev = np.zeros(nb + 1, dtype=np.int64)
    for x in a:
        cand = np.maximum(prev[1:], prev[:-1] + (b == x))
        prev[1:] = np.maximum.accumulate(cand)
    return int(prev[nb])


# ---------------------------------------------------------------------------
# Pairwise cosine similarity matrix over CSR sentence vectors
# ---------------------------------------------------------------------------

def _similarity_from_csr_loop(indptr, indices, data, n_rows, n_cols):
    out = np.zeros((n_rows, n_rows))
    norms = np.zeros(n_rows)
    for i in range(n_rows):
        s = 0.0
        for k in range(indptr[i], indptr[i + 1]):
            s += data[k] * data[k]
        norms[i] = np.sqrt(s)
    for i in range(n_rows):
        if norms[i] == 0.0:
            continue
        for j in range(i + 1, n_rows):
            if norms[j] == 0.0:
                continue
            p = indptr[i]
            q = indptr[j]
            pe = indptr[i + 1]
            qe = indptr[j + 1]
            dot = 0.0
            while p < pe and q < qe:
                ci = indices[p]
                cj = indices[q]
                if ci == cj:
                    dot += data[p] * data[q]
                    p += 1
                    q += 1
                elif ci < cj:
                    p += 1
                else:
                    q += 1
            if dot != 0.0:
                v = dot / (norms[i] * norms[j])
                if v > 1.0:
                    v = 1.0
                elif v < 0.0:
                    v = 0.0
                out[i, j] = v
                out[j, i] = v
    return out


def similarity_from_csr_numpy(indptr, indices, data, n_rows, n_cols):
    dense = np.zeros((n_rows, n_cols))
    if data.shape[0]:
        rows = np.repeat(np.arange(n_rows), np.diff(indptr))
        dense[rows, indices] = data
    norms = np.sqrt((dense * dense).sum(axis=1))
    gram = dense @ dense.T
    denom = np.outer(norms, norms)
    out = np.divide(gram, denom, out=np.zeros_like(gram), where=denom > 0.0)
    np.clip(out, 0.0, 1.0, out=out)
    # mirror the upper triangle so symmetry is exact, drop self-similarity
    out = np.triu(out, 1)
    return out + out.T


# ---------------------------------------------------------------------------
# PageRank power iteration over a dense weighted adjacency matrix
# ---------------------------------------------------------------------------

def _pagerank_loop(weights, damping, tol, max_iters):
    n = weights.shape[0]
    p = np.full(n, 1.0 / n)
    rowsum = np.zeros(n)
    for i in range(n):
        s = 0.0
        for j in range(n):
            s += weights[i, j]
        rowsum[i] = s
    tele = (1.0 - damping) / n
    new = np.empty(n)
    for _ in range(max_iters):
        dangling_mass = 0.0
        for i in range(n):
            if rowsum[i] == 0.0:
                dangling_mass += p[i]
        base = tele + damping * dangling_mass / n
        for j in range(n):
            new[j] = base
        for i in range(n):
            if rowsum[i] == 0.0:
                continue
            scale = damping * p[i] / rowsum[i]
            for j in range(n):
                new[j] += scale * weights[i, j]
        err = 0.0
        for j in range(n):
            err += abs(new[j] - p[j])
            p[j] = new[j]
        if err < tol:
            break
    return p.copy()


def pagerank_numpy(weights, damping, tol, max_iters):
    n = weights.shape[0]
    rowsum = weights.sum(axis=1)
    dangling = rowsum == 0.0
    W = np.zeros_like(weights)
    if (~dangling).any():
        W[~dangling] = weights[~dangling] / rowsum[~dangling, None]
    p = np.full(n, 1.0 / n)
    tele = (1.0 - damping) / n
    for _ in range(max_iters):
        new = tele + damping * (W.T @ p + p[dangling].sum() / n)
        err = np.abs(new - p).sum()
        p = new
        if err < tol:
            break
    return p


# ---------------------------------------------------------------------------
# Regression-tree split search (variance reduction over CSC features)
# ---------------------------------------------------------------------------

def _best_split_loop(sample_idx, y_node, feat_ids, csc_indptr, csc_rows, csc_vals, min_leaf):
    m = sample_idx.shape[0]
    best_gain = 0.0
    best_feat = np.int64(-1)
    best_thresh = 0.0
    total = 0.0
    for k in range(m):
        total += y_node[k]
    base = total * total / m
    x = np.empty(m)
    for fpos in range(feat_ids.shape[0]):
        f = feat_ids[fpos]
        start = csc_indptr[f]
        end = csc_indptr[f + 1]
        if end == start:
            continue
        nonzero = 0
        p = start
        for k in range(m):
            x[k] = 0.0
            r = sample_idx[k]
            while p < end and csc_rows[p] < r:
                p += 1
            if p < end and csc_rows[p] == r:
                x[k] = csc_vals[p]
                nonzero += 1
        if nonzero == 0:
            continue
        order = np.argsort(x, kind="mergesort")
        cum = 0.0
        for i in range(1, m):
            cum += y_node[order[i - 1]]
            if i < min_leaf or m - i < min_leaf:
                continue
            xa = x[order[i - 1]]
            xb = x[order[i]]
            if xb <= xa:
                continue
            right = total - cum
            gain = cum * cum / i + right * right / (m - i) - base
            if gain > best_gain:
                best_gain = gain
                best_feat = f
                best_thresh = 0.5 * (xa + xb)
    return best_feat, best_thresh, best_gain


def best_split_numpy(sample_idx, y_node, feat_ids, csc_indptr, csc_rows, csc_vals, min_leaf):
    m = sample_idx.shape[0]
    best_gain = 0.0
    best_feat = np.int64(-1)
    best_thresh = 0.0
    # cumsum keeps the sequential accumulation order of the jit path
    total = float(np.cumsum(y_node)[-1])
    base = total * total / m
    split_at = np.arange(1, m)
    for f in feat_ids:
        start, end = csc_indptr[f], csc_indptr[f + 1]
        if end == start:
            continue
        col_rows = csc_rows[start:end]
        pos = np.searchsorted(col_rows, sample_idx)
        pos[pos == col_rows.shape[0]] = 0
        hit = col_rows[pos] == sample_idx
        if not hit.any():
            continue
        x = np.zeros(m)
        x[hit] = csc_vals[start:end][pos[hit]]
        order = np.argsort(x, kind="mergesort")
        xs = x[order]
        valid = (split_at >= min_leaf) & (m - split_at >= min_leaf) & (xs[1:] > xs[:-1])
        if not valid.any():
            continue
        left = np.cumsum(y_node[order])[:-1]
        right = total - left
        gains = np.where(valid, left * left / split_at + right * right / (m - split_at) - base, -np.inf)
        i = int(np.argmax(gains))
        if gains[i] > best_gain:
            best_gain = float(gains[i])
            best_feat = np.int64(f)
            best_thresh = 0.5 * (xs[i] + xs[i + 1])
    return best_feat, best_thresh, best_gain


# ---------------------------------------------------------------------------
# Forest prediction over CSR feature rows and stacked tree arrays
# ---------------------------------------------------------------------------

def _forest_predict_loop(indptr, indices, data, feat, thresh, left, right, value, offsets):
    n_samples = indptr.shape[0] - 1
    n_trees = offsets.shape[0] - 1
    out = np.zeros(n_samples)
    for s in range(n_samples):
        lo = indptr[s]
        hi = indptr[s + 1]
        acc = 0.0
        for t in range(n_trees):
            node = offsets[t]
            while feat[node] >= 0:
                f = feat[node]
                xv = 0.0
                a = lo
                b = hi
                while a < b:
                    mid = (a + b) // 2
                    if indices[mid] < f:
                        a = mid + 1
                    else:
                        b = mid
                if a < hi and indices[a] == f:
                    xv = data[a]
                if xv <= thresh[node]:
                    node = left[node]
                else:
                    node = right[node]
            acc += value[node]
        out[s] = acc / n_trees
    return out


def forest_predict_numpy(indptr, indices, data, feat, thresh, left, right, value, offsets):
    n_samples = indptr.shape[0] - 1
    n_trees = offsets.shape[0] - 1
    n_cols = int(feat.max()) + 1 if feat.size and feat.max() >= 0 else 1
    dense = np.zeros((n_samples, n_cols))
    if data.shape[0]:
        rows = np.repeat(np.arange(n_samples), np.diff(indptr))
        keep = indices < n_cols
        dense[rows[keep], indices[keep]] = data[keep]
    out = np.zeros(n_samples)
    sample_ids = np.arange(n_samples)
    for t in range(n_trees):
        node = np.full(n_samples, offsets[t])
        active = feat[node] >= 0
        while active.any():
            idx = sample_ids[active]
            nd = node[active]
            xv = dense[idx, feat[nd]]
            go_left = xv <= thresh[nd]
            node[idx] = np.where(go_left, left[nd], right[nd])
            active = feat[node] >= 0
        out += value[node]
    return out / n_trees


# ---------------------------------------------------------------------------
# Path selection
# ---------------------------------------------------------------------------

if NUMBA_AVAILABLE:
    lcs_length_numba = _njit(cache=True)(_lcs_length_loop)
    similarity_from_csr_numba = _njit(cache=True)(_similarity_from_csr_loop)
    pagerank_numba = _njit(cache=True)(_pagerank_loop)
    best_split_numba = _njit(cache=True)(_best_split_loop)
    forest_predict_numba = _njit(cache=True)(_forest_predict_loop)
else:  # pragma: no cover
    lcs_length_numba = None
    similarity_from_csr_numba = None
    pagerank_numba = None
    best_split_numba = None
    forest_predict_numba = None

if NUMBA_ENABLED:
    lcs_length = lcs_length_numba
    similarity_from_csr = similarity_from_csr_numba
    pagerank_scores = pagerank_numba
    best_split = best_split_numba
    forest_predict = forest_predict_numba
else:
    lcs_length = lcs_length_numpy
    similarity_from_csr = similarity_from_csr_numpy
    pagerank_scores = pagerank_numpy
    best_split = best_split_numpy
    forest_predict = forest_predict_numpy

ACTIVE_PATH = "numba" if NUMBA_ENABLED else "numpy"


def warmup() -> None:
    """Trigger JIT compilation on tiny inputs so timed runs exclude it."""
    a = np.array([1, 2, 3], dtype=np.int64)
    lcs_length(a, a)
    indptr = np.array([0, 1, 2], dtype=np.int64)
    indices = np.array([0, 0], dtype=np.int64)
    data = np.array([1.0, 1.0])
    similarity_from_csr(indptr, indices, data, 2, 1)
    pagerank_scores(np.ones((2, 2)) - np.eye(2), 0.85, 1e-6, 10)
    best_split(
        np.array([0, 1], dtype=np.int64),
        np.array([0.0, 1.0]),
        np.array([0], dtype=np.int64),
        np.array([0, 1], dtype=np.int64),
        np.array([1], dtype=np.int64),
        np.array([1.0]),
        1,
    )
    forest_predict(
        indptr,
        indices,
        data,
        np.array([-1], dtype=np.int64),
        np.array([0.0]),
        np.array([-1], dtype=np.int64),
        np.array([-1], dtype=np.int64),
        np.array([0.5]),
        np.array([0, 1], dtype=np.int64),
    )
