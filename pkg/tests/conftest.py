import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from synthcorpus import make_records  # noqa: E402

from newsum import kernels  # noqa: E402
from newsum.corpus import ArticleRecord, CorpusSplit  # noqa: E402
from newsum.forest import ForestConfig  # noqa: E402
from newsum.ranker import build_feature_space, train_forest  # noqa: E402
from newsum.summarizer import SummarizerDeps  # noqa: E402

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # compile the jit kernels once so timed tests measure the algorithm
    kernels.warmup()


@pytest.fixture(scope="session")
def deps():
    return SummarizerDeps.default()


@pytest.fixture(scope="session")
def zoo_text():
    return (DATA_DIR / "zoo_article.txt").read_text(encoding="utf-8")


def records_to_split(records, name):
    return CorpusSplit(
        name=name,
        records=tuple(ArticleRecord(r["article"], r["highlights"], r["id"]) for r in records),
    )


@pytest.fixture(scope="session")
def tiny_train_split():
    return records_to_split(make_records(30, seed=11, split="train"), "train")


@pytest.fixture(scope="session")
def tiny_model(tiny_train_split):
    """Small forest + feature space, enough for hybrid plumbing tests."""
    space = build_feature_space(tiny_train_split, V=400)
    forest = train_forest(tiny_train_split, space, ForestConfig(trees=8, max_depth=8), seed=3)
    return forest, space


@pytest.fixture(scope="session")
def hybrid_deps(tiny_model):
    forest, space = tiny_model
    return SummarizerDeps.default(forest=forest, feature_space=space)
