"""Random-forest regressor built from scratch on sparse feature rows.

Trees split by variance reduction over a random subset of ceil(sqrt(V))
features per node, each tree on a bootstrap sample. Every RNG draw comes
from a per-tree numpy PCG64 stream seeded with ``seed + tree_index``, so
training is bit-reproducible and trees could train in parallel without
changing the result.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import kernels


@dataclass(frozen=True)
class ForestConfig:
    trees: int = 50
    max_depth: int = 12
    min_samples_leaf: int = 2

    def __post_init__(self):
        if self.trees < 1 or self.max_depth < 0 or self.min_samples_leaf < 1:
            raise ValueError(f"invalid forest config: {self}")


@dataclass
class RegressionTree:
    feature: np.ndarray  # int64, -1 marks a leaf
    threshold: np.ndarray
    left: np.ndarray
    right: np.ndarray
    value: np.ndarray  # leaf mean; internal nodes carry their node mean too

    @property
    def n_nodes(self) -> int:
        return self.feature.shape[0]


@dataclass
class RegressionForest:
    trees: list[RegressionTree]
    n_features: int
    cfg: ForestConfig
    seed: int
    degenerate_targets: bool = False

    def predict_csr(self, indptr: np.ndarray, indices: np.ndarray, data: np.ndarray) -> np.ndarray:
        feat, thresh, left, right, value, offsets = _stack_trees(self.trees)
        return kernels.forest_predict(indptr, indices, data, feat, thresh, left, right, value, offsets)

    def predict(self, rows) -> np.ndarray:
        """Predict for an iterable of sparse {feature_index: value} rows."""
        indptr, indices, data = rows_to_csr(rows)
        return self.predict_csr(indptr, indices, data)


def rows_to_csr(rows) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    rows = list(rows)
    indptr = np.zeros(len(rows) + 1, dtype=np.int64)
    cols: list[int] = []
    vals: list[float] = []
    for i, row in enumerate(rows):
        for k in sorted(row):
            cols.append(k)
            vals.append(row[k])
        indptr[i + 1] = len(cols)
    return indptr, np.asarray(cols, dtype=np.int64), np.asarray(vals, dtype=np.float64)


def _csr_to_csc(indptr, indices, data, n_rows, n_cols):
    order = np.argsort(indices, kind="mergesort")
    csc_rows = np.repeat(np.arange(n_rows, dtype=np.int64), np.diff(indptr))[order]
    csc_vals = data[order]
    counts = np.bincount(indices, minlength=n_cols)
    csc_indptr = np.zeros(n_cols + 1, dtype=np.int64)
    np.cumsum(counts, out=csc_indptr[1:])
    return csc_indptr, csc_rows, csc_vals


def _node_mean(y: np.ndarray, sample_idx: np.ndarray) -> float:
    # sequential accumulation keeps both kernel paths bit-identical
    return float(np.cumsum(y[sample_idx])[-1]) / sample_idx.shape[0]


def _gather_column(csc_indptr, csc_rows, csc_vals, f, sample_idx):
    start, end = csc_indptr[f], csc_indptr[f + 1]
    col_rows = csc_rows[start:end]
    x = np.zeros(sample_idx.shape[0])
    if col_rows.shape[0]:
        pos = np.searchsorted(col_rows, sample_idx)
        pos[pos == col_rows.shape[0]] = 0
        hit = col_rows[pos] == sample_idx
        x[hit] = csc_vals[start:end][pos[hit]]
    return x


def _grow_tree(csc_indptr, csc_rows, csc_vals, y, sample_idx, cfg, n_features, rng):
    k_feats = max(1, math.ceil(math.sqrt(n_features))) if n_features else 0
    feature: list[int] = []
    threshold: list[float] = []
    left: list[int] = []
    right: list[int] = []
    value: list[float] = []

    def new_node(mean: float) -> int:
        feature.append(-1)
        threshold.append(0.0)
        left.append(-1)
        right.append(-1)
        value.append(mean)
        return len(feature) - 1

    root = new_node(_node_mean(y, sample_idx))
    stack = [(root, sample_idx, 0)]
    while stack:
        node, idx, depth = stack.pop()
        m = idx.shape[0]
        if depth >= cfg.max_depth or m < 2 * cfg.min_samples_leaf or k_feats == 0:
            continue
        feat_ids = rng.choice(n_features, size=min(k_feats, n_features), replace=False).astype(np.int64)
        best_feat, best_thresh, best_gain = kernels.best_split(
            idx, y[idx].astype(np.float64), feat_ids, csc_indptr, csc_rows, csc_vals, cfg.min_samples_leaf
        )
        if best_feat < 0 or best_gain <= 0.0:
            continue
        x = _gather_column(csc_indptr, csc_rows, csc_vals, int(best_feat), idx)
        go_left = x <= best_thresh
        left_idx = idx[go_left]
        right_idx = idx[~go_left]
        if left_idx.shape[0] < cfg.min_samples_leaf or right_idx.shape[0] < cfg.min_samples_leaf:
            continue
        feature[node] = int(best_feat)
        threshold[node] = float(best_thresh)
        left_id = new_node(_node_mean(y, left_idx))
        right_id = new_node(_node_mean(y, right_idx))
        left[node] = left_id
        right[node] = right_id
        # push right first so the left child is processed (and numbered) first
        stack.append((right_id, right_idx, depth + 1))
        stack.append((left_id, left_idx, depth + 1))
    return RegressionTree(
        feature=np.asarray(feature, dtype=np.int64),
        threshold=np.asarray(threshold, dtype=np.float64),
        left=np.asarray(left, dtype=np.int64),
        right=np.asarray(right, dtype=np.int64),
        value=np.asarray(value, dtype=np.float64),
    )


def fit_forest(indptr, indices, data, y, n_features: int, cfg: ForestConfig, seed: int) -> RegressionForest:
    n_samples = indptr.shape[0] - 1
    if n_samples == 0:
        raise ValueError("cannot fit a forest on zero samples")
    y = np.asarray(y, dtype=np.float64)
    csc_indptr, csc_rows, csc_vals = _csr_to_csc(indptr, indices, data, n_samples, n_features)
    trees = []
    for t in range(cfg.trees):
        rng = np.random.Generator(np.random.PCG64(seed + t))
        bootstrap = np.sort(rng.integers(0, n_samples, size=n_samples)).astype(np.int64)
        trees.append(_grow_tree(csc_indptr, csc_rows, csc_vals, y, bootstrap, cfg, n_features, rng))
    degenerate = bool(np.all(y == y[0]))
    return RegressionForest(trees=trees, n_features=n_features, cfg=cfg, seed=seed, degenerate_targets=degenerate)


def _stack_trees(trees: list[RegressionTree]):
    offsets = np.zeros(len(trees) + 1, dtype=np.int64)
    for t, tree in enumerate(trees):
        offsets[t + 1] = offsets[t] + tree.n_nodes
    feat = np.concatenate([t.feature for t in trees])
    thresh = np.concatenate([t.threshold for t in trees])
    value = np.concatenate([t.value for t in trees])
    left = np.concatenate([t.left + off for t, off in zip(trees, offsets[:-1])])
    right = np.concatenate([t.right + off for t, off in zip(trees, offsets[:-1])])
    # keep -1 leaf markers intact after the offset shift
    left[feat < 0] = -1
    right[feat < 0] = -1
    return feat, thresh, left, right, value, offsets


FOREST_SCHEMA_VERSION = 1


def forest_to_dict(forest: RegressionForest) -> dict:
    trees_json = []
    for tree in forest.trees:
        nodes = []
        for i in range(tree.n_nodes):
            if tree.feature[i] < 0:
                nodes.append({"leaf_mean": float(tree.value[i])})
            else:
                nodes.append(
                    {
                        "feat": int(tree.feature[i]),
                        "thresh": float(tree.threshold[i]),
                        "left": int(tree.left[i]),
                        "right": int(tree.right[i]),
                    }
                )
        trees_json.append({"nodes": nodes})
    return {
        "version": FOREST_SCHEMA_VERSION,
        "n_features": forest.n_features,
        "seed": forest.seed,
        "cfg": {
            "trees": forest.cfg.trees,
            "max_depth": forest.cfg.max_depth,
            "min_samples_leaf": forest.cfg.min_samples_leaf,
        },
        "trees": trees_json,
    }


def forest_from_dict(doc: dict) -> RegressionForest:
    if doc.get("version") != FOREST_SCHEMA_VERSION:
        raise ValueError(f"unsupported forest schema version: {doc.get('version')!r}")
    cfg = ForestConfig(**doc["cfg"])
    trees = []
    for tree_doc in doc["trees"]:
        nodes = tree_doc["nodes"]
        n = len(nodes)
        feature = np.full(n, -1, dtype=np.int64)
        threshold = np.zeros(n, dtype=np.float64)
        left = np.full(n, -1, dtype=np.int64)
        right = np.full(n, -1, dtype=np.int64)
        value = np.zeros(n, dtype=np.float64)
        for i, nd in enumerate(nodes):
            if "leaf_mean" in nd:
                value[i] = nd["leaf_mean"]
            else:
                feature[i] = nd["feat"]
                threshold[i] = nd["thresh"]
                left[i] = nd["left"]
                right[i] = nd["right"]
        trees.append(RegressionTree(feature, threshold, left, right, value))
    return RegressionForest(trees=trees, n_features=doc["n_features"], cfg=cfg, seed=doc["seed"])


def save_forest(forest: RegressionForest, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(forest_to_dict(forest), fh)
        fh.write("\n")


def load_forest(path: str | Path) -> RegressionForest:
    with open(path, encoding="utf-8") as fh:
        return forest_from_dict(json.load(fh))
