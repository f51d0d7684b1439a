import json

import pytest

from newsum.corpus import ArticleRecord, load_corpus, take_first
from newsum.errors import MalformedRowError, MissingColumnError


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


def test_csv_two_valid_rows(tmp_path):
    p = write(tmp_path, "train.csv", "id,article,highlights\nabc,Body one.,Sum one.\n,Body two.,Sum two.\n")
    split = load_corpus(p, "csv")
    assert split.name == "train"
    assert len(split) == 2
    assert split.skipped == 0
    assert split.records[0].article == "Body one."


def test_csv_empty_article_skipped(tmp_path):
    p = write(tmp_path, "x.csv", "id,article,highlights\n,   ,Sum.\n,Body.,Sum.\n")
    split = load_corpus(p, "csv")
    assert len(split) == 1
    assert split.skipped == 1


def test_jsonl_100_lines_3_missing_highlights(tmp_path):
    lines = []
    for i in range(100):
        obj = {"id": None, "article": f"article {i}."}
        if i not in (7, 42, 99):
            obj["highlights"] = f"summary {i}."
        lines.append(json.dumps(obj))
    p = write(tmp_path, "val.jsonl", "\n".join(lines) + "\n")
    split = load_corpus(p, "jsonl")
    assert split.name == "validation"
    assert len(split) == 97
    assert split.skipped == 3


def test_csv_missing_column(tmp_path):
    p = write(tmp_path, "x.csv", "id,article\n1,Body.\n")
    with pytest.raises(MissingColumnError):
        load_corpus(p, "csv")


def test_missing_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_corpus(tmp_path / "nope.csv", "csv")


def test_jsonl_mostly_garbage_raises(tmp_path):
    p = write(tmp_path, "x.jsonl", "not json\nalso not json\n" + json.dumps({"article": "a.", "highlights": "b."}) + "\n")
    with pytest.raises(MalformedRowError):
        load_corpus(p, "jsonl")


def test_csv_quoted_multiline_field(tmp_path):
    body = "First line, with comma.\nSecond line."
    p = write(tmp_path, "x.csv", 'id,article,highlights\n,"%s",Sum.\n' % body)
    split = load_corpus(p, "csv")
    assert split.records[0].article == body


def test_id_validation(tmp_path):
    good = "a" * 40
    p = write(
        tmp_path,
        "x.csv",
        f"id,article,highlights\n{good},Body.,Sum.\nnot-a-sha,Body.,Sum.\n,Body.,Sum.\n",
    )
    split = load_corpus(p, "csv")
    assert [r.id for r in split.records] == [good, None, None]
    assert len(split) == 3


def test_unknown_format(tmp_path):
    p = write(tmp_path, "x.csv", "id,article,highlights\n")
    with pytest.raises(ValueError):
        load_corpus(p, "parquet")


def test_load_is_deterministic(tmp_path):
    p = write(tmp_path, "x.csv", "id,article,highlights\n,A.,B.\n,C.,D.\n")
    assert load_corpus(p, "csv") == load_corpus(p, "csv")


def make_split(n):
    recs = tuple(ArticleRecord(f"a{i}.", f"h{i}.") for i in range(n))
    from newsum.corpus import CorpusSplit

    return CorpusSplit("train", recs)


def test_take_first_prefix_order():
    split = make_split(5)
    out = take_first(split, 3)
    assert out.records == split.records[:3]


def test_take_first_zero_and_clamp():
    split = make_split(5)
    assert len(take_first(split, 0)) == 0
    assert take_first(split, 10).records == split.records


def test_take_first_negative():
    with pytest.raises(ValueError):
        take_first(make_split(2), -1)


@pytest.mark.parametrize("a,b", [(0, 0), (1, 3), (3, 1), (5, 5), (7, 2)])
def test_take_first_composes(a, b):
    split = make_split(5)
    assert take_first(take_first(split, a), b) == take_first(split, min(a, b))
