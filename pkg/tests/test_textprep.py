import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from newsum.corpus import ArticleRecord
from newsum.textprep import STEP_NAMES, URL_RE, ContractionTable, clean, clean_record

TABLE = ContractionTable.default()

ALPHABET_RE = re.compile(r"^[a-z0-9 .!?,]*$")


@pytest.mark.parametrize(
    "raw,expected",
    [
        ("Don't stop", "do not stop"),
        ("see <a href='u'>this</a> now", "see this now"),
        ("read http://x.com/a?b=1 now", "read now"),
        ("", ""),
        ("I'm fine... AREN'T you?", "i am fine... are not you?"),
        ("a  b\t\nc", "a b c"),
        ("state-of-the-art tech", "state of the art tech"),
        ("shares (up 5%) fell; he said #winning @dawn", "shares up 5 fell he said winning dawn"),
        ("they mustn't go", "they must not go"),
        ("visit www.example.com today", "visit today"),
    ],
)
def test_clean_examples(raw, expected):
    assert clean(raw, TABLE).text == expected


def test_clean_records_steps():
    assert clean("x", TABLE).steps_applied == STEP_NAMES


def test_clean_record_applies_same_settings():
    rec = ArticleRecord(article="It's FINE.", highlights="It's fine.")
    art, high = clean_record(rec, TABLE)
    assert art.text == "it is fine."
    assert high.text == "it is fine."


def test_url_only_article_cleans_to_empty():
    rec = ArticleRecord(article="http://only.a.link/here", highlights="Ok.")
    art, _ = clean_record(rec, TABLE)
    assert art.text == ""


def test_plain_text_only_lowercased():
    assert clean("The Cat Sat, Twice.", TABLE).text == "the cat sat, twice."


def test_required_minimum_entries():
    m = TABLE.mapping
    assert m["don't"] == "do not"
    assert m["i'm"] == "i am"
    assert m["can't"] == "cannot"
    assert m["won't"] == "will not"
    assert m["it's"] == "it is"
    assert clean("he couldn't come", TABLE).text == "he could not come"


def test_longest_key_wins():
    # "can't've" must not be eaten by the shorter "can't"
    assert clean("can't've seen it", TABLE).text == "cannot have seen it"


def test_nt_fallback_for_unlisted_words():
    table = ContractionTable({"don't": "do not"})
    assert clean("she daren't look", table).text == "she dare not look"


def test_tag_exposed_url_still_stripped():
    assert clean("<b>www.x.com</b>", TABLE).text == ""
    assert URL_RE.search(clean("say <i>www.x.com/path</i> now", TABLE).text) is None


def test_quote_spliced_url_still_stripped():
    out = clean("www'.x.com", TABLE).text
    assert URL_RE.search(out) is None


def test_duplicate_table_key_rejected():
    with pytest.raises(ValueError):
        ContractionTable({"It's": "it is", "it's": "it has"})


def test_table_file_roundtrip(tmp_path):
    p = tmp_path / "table.tsv"
    p.write_text("# comment\ndon't\tdo not\nI'm\ti am\n", encoding="utf-8")
    table = ContractionTable.from_file(p)
    assert table.mapping == {"don't": "do not", "i'm": "i am"}


def test_table_file_bad_line(tmp_path):
    p = tmp_path / "bad.tsv"
    p.write_text("no-tab-here\n", encoding="utf-8")
    with pytest.raises(ValueError):
        ContractionTable.from_file(p)


# token soup rich in the characters and fragments the pipeline cares about
_fuzz_text = st.lists(
    st.sampled_from(
        list("abcdefgXYZ0123456789 .!?,;:'\"<>()[]*&#@~`^|\\/-_\n\t")
        + ["don't", "www.", "http://", "<a>", "n't", "x.com", "I'm"]
    ),
    max_size=60,
).map("".join)


@settings(max_examples=300, deadline=None)
@given(_fuzz_text)
def test_clean_idempotent(raw):
    once = clean(raw, TABLE).text
    assert clean(once, TABLE).text == once


@settings(max_examples=300, deadline=None)
@given(_fuzz_text)
def test_clean_output_alphabet(raw):
    out = clean(raw, TABLE).text
    assert ALPHABET_RE.fullmatch(out), out
    assert "  " not in out
    assert out == out.strip()
    assert URL_RE.search(out) is None


@settings(max_examples=300, deadline=None)
@given(_fuzz_text)
def test_clean_never_adds_terminals(raw):
    out = clean(raw, TABLE).text
    for ch in ".!?":
        assert out.count(ch) <= raw.lower().count(ch)


def test_clean_deterministic():
    raw = "Mixed BAG: don't visit http://x.y <b>soon</b>, it's 'fine'!"
    assert clean(raw, TABLE) == clean(raw, TABLE)
