"""Model bundle files: the forest plus the feature space it was trained on.

The forest sub-document follows the standalone forest schema exactly; the
bundle wraps it together with the vocabulary/IDF table hybrid inference
needs, so one file is enough to serve the hybrid method.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .forest import RegressionForest, forest_from_dict, forest_to_dict
from .ranker import HybridFeatureSpace
from .vectorizer import Vocabulary

BUNDLE_SCHEMA_VERSION = 1


def bundle_to_dict(forest: RegressionForest, space: HybridFeatureSpace) -> dict:
    return {
        "version": BUNDLE_SCHEMA_VERSION,
        "forest": forest_to_dict(forest),
        "feature_space": {
            "terms": list(space.global_vocab.terms),
            "idf": [float(v) for v in space.idf],
            "n_sentences": space.n_sentences,
        },
    }


def bundle_from_dict(doc: dict) -> tuple[RegressionForest, HybridFeatureSpace]:
    if doc.get("version") != BUNDLE_SCHEMA_VERSION:
        raise ValueError(f"unsupported model bundle version: {doc.get('version')!r}")
    forest = forest_from_dict(doc["forest"])
    fs = doc["feature_space"]
    space = HybridFeatureSpace(
        global_vocab=Vocabulary.from_terms(fs["terms"]),
        idf=np.asarray(fs["idf"], dtype=np.float64),
        n_sentences=fs["n_sentences"],
    )
    return forest, space


def save_model(path: str | Path, forest: RegressionForest, space: HybridFeatureSpace) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(bundle_to_dict(forest, space), fh)
        fh.write("\n")


def load_model(path: str | Path) -> tuple[RegressionForest, HybridFeatureSpace]:
    with open(path, encoding="utf-8") as fh:
        return bundle_from_dict(json.load(fh))
