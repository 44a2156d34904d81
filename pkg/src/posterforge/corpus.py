"""Training corpus loading and training-row extraction.

A corpus is a directory of document JSON files carrying layout annotations:
each section declares its realized ``panel.width``/``panel.height`` and each
element its ``display_width``/``position``. Rows for the fitted models are
derived here so training and evaluation share one extraction path.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

from .content import (
    DEFAULT_EXTRACTION_RATIO,
    DocumentContent,
    PanelContent,
    build_panel_contents,
    load_document,
)
from .errors import ValidationError
from .summarize import extract_summary


@dataclass(frozen=True)
class CorpusDocument:
    doc_id: str
    content: DocumentContent


def load_corpus_dir(
    path: str, *, default_extraction_ratio: float = DEFAULT_EXTRACTION_RATIO
) -> tuple[CorpusDocument, ...]:
    """Load every ``*.json`` file in a directory, sorted by filename."""
    if not os.path.isdir(path):
        raise ValidationError(path, "not a directory")
    names = sorted(n for n in os.listdir(path) if n.endswith(".json"))
    if not names:
        raise ValidationError(path, "no .json documents found")
    docs = []
    for name in names:
        full = os.path.join(path, name)
        with open(full, "rb") as fh:
            raw = fh.read()
        try:
            content = load_document(
                raw, default_extraction_ratio=default_extraction_ratio
            )
        except ValidationError as exc:
            raise ValidationError(f"{full} {exc.path}", exc.message) from None
        docs.append(CorpusDocument(doc_id=name[: -len(".json")], content=content))
    return tuple(docs)


def document_panels(
    content: DocumentContent, *, stopwords: frozenset[str] = frozenset()
) -> list[PanelContent]:
    """Summarize every section and assemble the per-panel content features."""
    summaries = [
        extract_summary(sec, stopwords=stopwords) if sec.sentences else []
        for sec in content.sections
    ]
    return build_panel_contents(content, summaries)


def annotated_panels(
    docs: tuple[CorpusDocument, ...] | list[CorpusDocument],
    *,
    stopwords: frozenset[str] = frozenset(),
) -> list[tuple[str, int, float, float, float, float]]:
    """Per-panel training tuples carrying their provenance.

    Returns (doc_id, panel_index, text_ratio, graphics_ratio, area, aspect)
    for every panel. Every section of every document must carry a panel
    annotation; layouts with holes would silently bias the fit.
    """
    rows = []
    for doc in docs:
        panels = document_panels(doc.content, stopwords=stopwords)
        for panel, section in zip(panels, doc.content.sections):
            if section.panel_width is None or section.panel_height is None:
                raise ValidationError(
                    f"{doc.doc_id} $.sections[{panel.section_index}]",
                    "missing panel annotation (panel.width / panel.height)",
                )
            rows.append(
                (
                    doc.doc_id,
                    panel.section_index,
                    panel.text_ratio,
                    panel.graphics_ratio,
                    section.panel_width * section.panel_height,
                    section.panel_width / section.panel_height,
                )
            )
    return rows


def panel_rows(
    docs: tuple[CorpusDocument, ...] | list[CorpusDocument],
    *,
    stopwords: frozenset[str] = frozenset(),
) -> list[tuple[float, float, float, float]]:
    """(text_ratio, graphics_ratio, area, aspect) rows from annotated panels."""
    rows = annotated_panels(docs, stopwords=stopwords)
    return [(t, g, s, r) for _, _, t, g, s, r in rows]


def size_rows(
    docs: tuple[CorpusDocument, ...] | list[CorpusDocument],
    *,
    stopwords: frozenset[str] = frozenset(),
) -> list[tuple[float, float, float, float]]:
    """(panel_area, text_length, element_area, display_width) rows per element."""
    rows = []
    for doc in docs:
        panels = document_panels(doc.content, stopwords=stopwords)
        for panel, section in zip(panels, doc.content.sections):
            if section.panel_width is None or section.panel_height is None:
                continue
            area = section.panel_width * section.panel_height
            for el in panel.elements:
                if el.display_width is None:
                    continue
                rows.append((area, float(panel.text_length), el.area, el.display_width))
    return rows


def position_rows(
    docs: tuple[CorpusDocument, ...] | list[CorpusDocument],
) -> list[tuple[float, float, float, str]]:
    """(panel_aspect, element_area, element_aspect, position) rows per element."""
    rows = []
    for doc in docs:
        for section in doc.content.sections:
            if section.panel_width is None or section.panel_height is None:
                continue
            aspect = section.panel_width / section.panel_height
            for el in section.elements:
                if el.position is None:
                    continue
                rows.append((aspect, el.area, el.aspect, el.position))
    return rows


def load_split(
    path: str, docs: tuple[CorpusDocument, ...]
) -> tuple[tuple[CorpusDocument, ...], tuple[CorpusDocument, ...]]:
    """Read a train/test split file and resolve it against the corpus.

    The file is a JSON object with a ``test`` array of document ids and an
    optional ``train`` array. When ``train`` is omitted it defaults to every
    other document. When present, the two lists must be disjoint and together
    cover the corpus. Document order follows the corpus (filename order).
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ValidationError(path, f"cannot read split file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ValidationError(path, f"split file is not valid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise ValidationError(path, "split file must be a JSON object")

    known = {d.doc_id for d in docs}

    def id_list(key: str) -> list[str] | None:
        if key not in raw:
            return None
        value = raw[key]
        if not isinstance(value, list) or any(not isinstance(v, str) for v in value):
            raise ValidationError(f"{path} $.{key}", "must be an array of strings")
        for doc_id in value:
            if doc_id not in known:
                raise ValidationError(f"{path} $.{key}", f"unknown document id {doc_id!r}")
        return value

    test_ids = id_list("test")
    if test_ids is None:
        raise ValidationError(path, "split file needs a 'test' array")
    if not test_ids:
        raise ValidationError(f"{path} $.test", "test side must not be empty")
    test_set = set(test_ids)

    train_ids = id_list("train")
    if train_ids is None:
        train_set = known - test_set
    else:
        train_set = set(train_ids)
        overlap = sorted(train_set & test_set)
        if overlap:
            raise ValidationError(
                path, f"train and test overlap: {', '.join(overlap)}"
            )
        uncovered = sorted(known - train_set - test_set)
        if uncovered:
            raise ValidationError(
                path, f"documents missing from the split: {', '.join(uncovered)}"
            )
    if not train_set:
        raise ValidationError(path, "train side must not be empty")

    train = tuple(d for d in docs if d.doc_id in train_set)
    test = tuple(d for d in docs if d.doc_id in test_set)
    return train, test
