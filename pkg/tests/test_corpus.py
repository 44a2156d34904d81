"""Tests for corpus loading, training-row extraction, and split files."""

import json

import pytest

from posterforge.corpus import (
    annotated_panels,
    load_corpus_dir,
    load_split,
    panel_rows,
    position_rows,
    size_rows,
)
from posterforge.errors import ValidationError


def _doc(sections):
    return {
        "title": "Doc",
        "authors": "Nobody",
        "page_aspect": 0.707,
        "sections": sections,
    }


def _section(title, sentences, *, panel=None, elements=()):
    sec = {
        "title": title,
        "sentences": list(sentences),
        "extraction_ratio": 1.0,
        "elements": list(elements),
    }
    if panel is not None:
        sec["panel"] = {"width": panel[0], "height": panel[1]}
    return sec


def _write(directory, name, doc):
    path = directory / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return path


def _two_section_doc():
    # Text lengths 30 and 10 chars give text ratios 0.75 / 0.25; only the
    # first section has an element, so graphics ratios are 1 and 0.
    el = {
        "id": "fig-a",
        "source_width": 0.5,
        "source_height": 0.4,
        "display_width": 0.6,
        "position": "center",
    }
    return _doc(
        [
            _section("One", ["x" * 28 + "a."], panel=(0.8, 0.4), elements=[el]),
            _section("Two", ["y" * 8 + "b."], panel=(0.3, 0.6)),
        ]
    )


def test_load_corpus_dir_sorts_by_filename(tmp_path):
    for name in ("b.json", "a.json", "c.json"):
        _write(tmp_path, name, _two_section_doc())
    (tmp_path / "notes.txt").write_text("ignored", encoding="utf-8")
    docs = load_corpus_dir(str(tmp_path))
    assert [d.doc_id for d in docs] == ["a", "b", "c"]


def test_load_corpus_dir_rejects_missing_or_empty_directory(tmp_path):
    with pytest.raises(ValidationError):
        load_corpus_dir(str(tmp_path / "nope"))
    empty = tmp_path / "empty"
    empty.mkdir()
    with pytest.raises(ValidationError):
        load_corpus_dir(str(empty))


def test_load_corpus_dir_error_names_the_file(tmp_path):
    bad = _two_section_doc()
    del bad["sections"][0]["title"]
    _write(tmp_path, "broken.json", bad)
    with pytest.raises(ValidationError) as err:
        load_corpus_dir(str(tmp_path))
    assert "broken.json" in str(err.value)
    assert "sections[0]" in str(err.value)


def test_annotated_panels_rows(tmp_path):
    _write(tmp_path, "d0.json", _two_section_doc())
    docs = load_corpus_dir(str(tmp_path))
    rows = annotated_panels(docs)
    assert len(rows) == 2
    doc_id, index, t, g, s, r = rows[0]
    assert (doc_id, index) == ("d0", 0)
    assert abs(t - 0.75) < 1e-12
    assert g == 1.0
    assert abs(s - 0.8 * 0.4) < 1e-12
    assert abs(r - 0.8 / 0.4) < 1e-12
    doc_id, index, t, g, s, r = rows[1]
    assert (doc_id, index) == ("d0", 1)
    assert abs(t - 0.25) < 1e-12
    assert g == 0.0
    assert abs(s - 0.3 * 0.6) < 1e-12
    assert abs(r - 0.3 / 0.6) < 1e-12

    plain = panel_rows(docs)
    assert plain == [(t0, g0, s0, r0) for _, _, t0, g0, s0, r0 in rows]


def test_annotated_panels_requires_every_panel_annotation(tmp_path):
    doc = _two_section_doc()
    del doc["sections"][1]["panel"]
    _write(tmp_path, "d0.json", doc)
    docs = load_corpus_dir(str(tmp_path))
    with pytest.raises(ValidationError) as err:
        annotated_panels(docs)
    assert "panel.width / panel.height" in str(err.value)
    assert "sections[1]" in str(err.value)


def test_size_rows_uses_annotated_display_width(tmp_path):
    _write(tmp_path, "d0.json", _two_section_doc())
    docs = load_corpus_dir(str(tmp_path))
    rows = size_rows(docs)
    assert len(rows) == 1
    area, text_length, element_area, width = rows[0]
    assert abs(area - 0.8 * 0.4) < 1e-12
    assert text_length == 30.0
    assert abs(element_area - 0.5 * 0.4) < 1e-12
    assert width == 0.6


def test_size_rows_skips_unannotated_elements(tmp_path):
    doc = _two_section_doc()
    del doc["sections"][0]["elements"][0]["display_width"]
    _write(tmp_path, "d0.json", doc)
    docs = load_corpus_dir(str(tmp_path))
    assert size_rows(docs) == []


def test_position_rows(tmp_path):
    _write(tmp_path, "d0.json", _two_section_doc())
    docs = load_corpus_dir(str(tmp_path))
    rows = position_rows(docs)
    assert len(rows) == 1
    aspect, element_area, element_aspect, position = rows[0]
    assert abs(aspect - 2.0) < 1e-12
    assert abs(element_area - 0.2) < 1e-12
    assert abs(element_aspect - 1.25) < 1e-12
    assert position == "center"


def _corpus_of(tmp_path, n):
    for i in range(n):
        _write(tmp_path, f"doc{i}.json", _two_section_doc())
    return load_corpus_dir(str(tmp_path))


def _split_file(tmp_path, payload):
    path = tmp_path / "split.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


def test_load_split_defaults_train_to_complement(tmp_path):
    docs = _corpus_of(tmp_path, 4)
    path = _split_file(tmp_path, {"test": ["doc2", "doc0"]})
    train, test = load_split(path, docs)
    # Order follows the corpus, not the split file.
    assert [d.doc_id for d in train] == ["doc1", "doc3"]
    assert [d.doc_id for d in test] == ["doc0", "doc2"]


def test_load_split_accepts_explicit_partition(tmp_path):
    docs = _corpus_of(tmp_path, 3)
    path = _split_file(tmp_path, {"train": ["doc0", "doc2"], "test": ["doc1"]})
    train, test = load_split(path, docs)
    assert [d.doc_id for d in train] == ["doc0", "doc2"]
    assert [d.doc_id for d in test] == ["doc1"]


@pytest.mark.parametrize(
    "payload,needle",
    [
        ({}, "test"),
        ({"test": []}, "empty"),
        ({"test": ["ghost"]}, "ghost"),
        ({"test": ["doc0"], "train": ["doc0", "doc1", "doc2"]}, "overlap"),
        ({"test": ["doc0"], "train": ["doc1"]}, "missing from the split"),
        ({"test": ["doc0", "doc1", "doc2"]}, "train side"),
        ({"test": "doc0"}, "array of strings"),
        ({"test": [0]}, "array of strings"),
    ],
)
def test_load_split_rejects_bad_partitions(tmp_path, payload, needle):
    docs = _corpus_of(tmp_path, 3)
    path = _split_file(tmp_path, payload)
    with pytest.raises(ValidationError) as err:
        load_split(path, docs)
    assert needle in str(err.value)


def test_load_split_rejects_malformed_file(tmp_path):
    docs = _corpus_of(tmp_path, 2)
    path = tmp_path / "split.json"
    path.write_text("not json", encoding="utf-8")
    with pytest.raises(ValidationError):
        load_split(str(path), docs)
    path.write_text("[1, 2]", encoding="utf-8")
    with pytest.raises(ValidationError):
        load_split(str(path), docs)
    with pytest.raises(ValidationError):
        load_split(str(tmp_path / "absent.json"), docs)
