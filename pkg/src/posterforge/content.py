"""Document data model: input parsing, validation, per-panel content features.

The input file is a UTF-8 JSON document (see ``docs/document.schema.json``).
Training corpora use the same structure plus per-section panel annotations
(``panel.width``/``panel.height``) and per-element display annotations
(``display_width``/``position``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .errors import ParseError, ValidationError

DEFAULT_EXTRACTION_RATIO = 0.2

#: Horizontal anchor values, in class order used by the position model.
POSITIONS = ("left", "center", "right")


@dataclass(frozen=True)
class GraphicalElement:
    """A figure or table declared with its size on the source page."""

    id: str
    source_width: float  # fraction of the source page width, in (0, 1]
    source_height: float  # fraction of the source page height, in (0, 1]
    section_index: int
    path: str | None = None  # image file, copied by reference at render time
    display_width: float | None = None  # annotated width / panel width (training)
    position: str | None = None  # annotated anchor: left | center | right (training)

    @property
    def area(self) -> float:
        """Source-page area fraction (width times height)."""
        return self.source_width * self.source_height

    @property
    def aspect(self) -> float:
        """Width divided by height."""
        return self.source_width / self.source_height


@dataclass(frozen=True)
class Section:
    """One document section: sentences plus declared graphical elements."""

    title: str
    sentences: tuple[str, ...]
    extraction_ratio: float
    elements: tuple[GraphicalElement, ...]
    panel_width: float | None = None  # annotated, fraction of poster width
    panel_height: float | None = None  # annotated, fraction of poster height


@dataclass(frozen=True)
class DocumentContent:
    """A fully validated input document."""

    title: str
    authors: str
    page_aspect: float  # poster physical width divided by height
    sections: tuple[Section, ...]


@dataclass(frozen=True)
class PanelContent:
    """Content assigned to one panel plus its extracted feature triple."""

    section_index: int
    text_items: tuple[str, ...]
    elements: tuple[GraphicalElement, ...]
    text_length: int  # total characters over text_items
    text_ratio: float  # this panel's share of all selected text
    graphics_ratio: float  # this panel's share of total source figure area


def load_document(
    data: bytes | str,
    *,
    default_extraction_ratio: float = DEFAULT_EXTRACTION_RATIO,
) -> DocumentContent:
    """Parse and validate a document file.

    Raises ParseError on malformed JSON and ValidationError (with the field
    path) on any invariant violation.
    """
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not valid UTF-8: {exc}") from None
    try:
        raw = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(f"input is not valid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise ValidationError("$", "top level must be an object")

    title = _string(raw, "title", "$", required=True)
    authors = _string(raw, "authors", "$", required=False, default="")
    page_aspect = _number(raw, "page_aspect", "$", required=True)
    if page_aspect <= 0:
        raise ValidationError("$.page_aspect", "must be > 0")

    raw_sections = raw.get("sections")
    if not isinstance(raw_sections, list) or not raw_sections:
        raise ValidationError("$.sections", "must be a non-empty array")

    sections = tuple(
        _section(sec, idx, default_extraction_ratio)
        for idx, sec in enumerate(raw_sections)
    )
    return DocumentContent(
        title=title, authors=authors, page_aspect=page_aspect, sections=sections
    )


def _section(raw, index: int, default_ratio: float) -> Section:
    path = f"$.sections[{index}]"
    if not isinstance(raw, dict):
        raise ValidationError(path, "must be an object")
    title = _string(raw, "title", path, required=True)

    sentences = raw.get("sentences", [])
    if not isinstance(sentences, list) or any(not isinstance(s, str) for s in sentences):
        raise ValidationError(f"{path}.sentences", "must be an array of strings")

    ratio = raw.get("extraction_ratio", default_ratio)
    if not isinstance(ratio, (int, float)) or isinstance(ratio, bool):
        raise ValidationError(f"{path}.extraction_ratio", "must be a number")
    if not 0 < ratio <= 1:
        raise ValidationError(f"{path}.extraction_ratio", "must be in (0, 1]")

    raw_elements = raw.get("elements", [])
    if not isinstance(raw_elements, list):
        raise ValidationError(f"{path}.elements", "must be an array")
    elements = tuple(
        _element(el, index, f"{path}.elements[{j}]") for j, el in enumerate(raw_elements)
    )

    if not sentences and not elements:
        raise ValidationError(path, "section needs at least one sentence or element")

    panel_width = panel_height = None
    if "panel" in raw:
        ppath = f"{path}.panel"
        if not isinstance(raw["panel"], dict):
            raise ValidationError(ppath, "must be an object")
        panel_width = _number(raw["panel"], "width", ppath, required=True)
        panel_height = _number(raw["panel"], "height", ppath, required=True)
        if not 0 < panel_width <= 1:
            raise ValidationError(f"{ppath}.width", "must be in (0, 1]")
        if not 0 < panel_height <= 1:
            raise ValidationError(f"{ppath}.height", "must be in (0, 1]")

    return Section(
        title=title,
        sentences=tuple(sentences),
        extraction_ratio=float(ratio),
        elements=elements,
        panel_width=panel_width,
        panel_height=panel_height,
    )


def _element(raw, section_index: int, path: str) -> GraphicalElement:
    if not isinstance(raw, dict):
        raise ValidationError(path, "must be an object")
    el_id = _string(raw, "id", path, required=True)
    width = _number(raw, "source_width", path, required=True)
    height = _number(raw, "source_height", path, required=True)
    if not 0 < width <= 1:
        raise ValidationError(f"{path}.source_width", "must be in (0, 1]")
    if not 0 < height <= 1:
        raise ValidationError(f"{path}.source_height", "must be in (0, 1]")

    img_path = raw.get("path")
    if img_path is not None and not isinstance(img_path, str):
        raise ValidationError(f"{path}.path", "must be a string")

    display_width = raw.get("display_width")
    if display_width is not None:
        if not isinstance(display_width, (int, float)) or isinstance(display_width, bool):
            raise ValidationError(f"{path}.display_width", "must be a number")
        if not 0 < display_width <= 1:
            raise ValidationError(f"{path}.display_width", "must be in (0, 1]")

    position = raw.get("position")
    if position is not None and position not in POSITIONS:
        raise ValidationError(f"{path}.position", f"must be one of {POSITIONS}")

    return GraphicalElement(
        id=el_id,
        source_width=float(width),
        source_height=float(height),
        section_index=section_index,
        path=img_path,
        display_width=None if display_width is None else float(display_width),
        position=position,
    )


def _string(raw: dict, key: str, path: str, *, required: bool, default: str = "") -> str:
    if key not in raw:
        if required:
            raise ValidationError(f"{path}.{key}", "missing required field")
        return default
    value = raw[key]
    if not isinstance(value, str):
        raise ValidationError(f"{path}.{key}", "must be a string")
    return value


def _number(raw: dict, key: str, path: str, *, required: bool) -> float:
    if key not in raw:
        if required:
            raise ValidationError(f"{path}.{key}", "missing required field")
        return 0.0
    value = raw[key]
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ValidationError(f"{path}.{key}", "must be a number")
    return float(value)


def build_panel_contents(
    doc: DocumentContent, summaries: Sequence[Sequence[str]]
) -> list[PanelContent]:
    """Assemble one panel per section and compute its feature triple.

    ``summaries`` holds the selected sentences for each section, in section
    order. Text ratios are shares of total selected characters; graphics
    ratios are shares of total source figure area. Panels without elements get
    a graphics ratio of 0.
    """
    if len(summaries) != len(doc.sections):
        raise ValueError(
            f"expected {len(doc.sections)} summaries, got {len(summaries)}"
        )
    lengths = [sum(len(item) for item in summary) for summary in summaries]
    areas = [sum(el.area for el in sec.elements) for sec in doc.sections]
    total_text = sum(lengths)
    total_area = sum(areas)
    if total_text == 0 and total_area == 0:
        raise ValidationError("$", "document has no text and no elements")

    panels = []
    for idx, section in enumerate(doc.sections):
        panels.append(
            PanelContent(
                section_index=idx,
                text_items=tuple(summaries[idx]),
                elements=section.elements,
                text_length=lengths[idx],
                text_ratio=lengths[idx] / total_text if total_text else 0.0,
                graphics_ratio=areas[idx] / total_area if total_area else 0.0,
            )
        )
    return panels
