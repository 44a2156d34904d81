"""Tests for the SVG and beamerposter emitters."""

import math
import xml.etree.ElementTree as ET

import pytest

from posterforge.compose import ElementPlacement, PanelComposition
from posterforge.content import GraphicalElement
from posterforge.layout import Rect
from posterforge.render import (
    Poster,
    PosterPanel,
    render_beamerposter,
    render_svg,
    tex_escape,
)

SVG_NS = "{http://www.w3.org/2000/svg}"


def _element(el_id, w=0.5, h=0.4, path=None):
    return GraphicalElement(
        id=el_id, source_width=w, source_height=h, section_index=0, path=path
    )


def _panel(title, rect, *, blocks=(), elements=(), index=0):
    comp = PanelComposition(
        panel_index=index, blocks=tuple(blocks), content_height=0.2
    )
    return PosterPanel(
        title=title, rect=rect, composition=comp, elements=tuple(elements)
    )


def _poster(panels, *, header_height=0.1):
    return Poster(
        page_width_mm=841.0,
        page_height_mm=1189.0,
        title="Sample poster",
        authors="A. Author and B. Author",
        panels=tuple(panels),
        header_height=header_height,
    )


def _two_panel_poster():
    left = _panel(
        "Left panel",
        Rect(0.0, 0.0, 0.5, 1.0),
        blocks=("A first text item.", "A second text item."),
        index=0,
    )
    el = _element("fig-1")
    right = _panel(
        "Right panel",
        Rect(0.5, 0.0, 0.5, 1.0),
        blocks=("Some text.", ElementPlacement("fig-1", 0.6, "center")),
        elements=(el,),
        index=1,
    )
    return _poster([left, right])


def test_svg_is_well_formed_xml():
    data = render_svg(_two_panel_poster())
    root = ET.fromstring(data)
    assert root.tag == f"{SVG_NS}svg"
    assert root.get("width") == "841.000000"
    assert root.get("height") == "1189.000000"


def test_svg_is_byte_deterministic():
    poster = _two_panel_poster()
    assert render_svg(poster) == render_svg(poster)


def _panel_outline(root, index):
    group = root.find(f"{SVG_NS}g[@id='panel-{index}']")
    assert group is not None
    return group.find(f"{SVG_NS}rect")


def test_svg_maps_rects_into_region_below_header():
    rects = [
        Rect(0.0, 0.0, 0.5, 0.4),
        Rect(0.0, 0.4, 0.5, 0.6),
        Rect(0.5, 0.0, 0.5, 1.0),
    ]
    poster = _poster(
        [_panel(f"P{i}", r, index=i) for i, r in enumerate(rects)],
        header_height=0.1,
    )
    root = ET.fromstring(render_svg(poster))
    width, height = 841.0, 1189.0
    region_y = 0.1 * height
    region_h = height - region_y
    for i, r in enumerate(rects):
        outline = _panel_outline(root, i)
        assert abs(float(outline.get("x")) - r.x * width) < 1e-6
        assert abs(float(outline.get("y")) - (region_y + r.y * region_h)) < 1e-6
        assert abs(float(outline.get("width")) - r.w * width) < 1e-6
        assert abs(float(outline.get("height")) - r.h * region_h) < 1e-6


def test_svg_without_header_uses_full_page():
    poster = _poster([_panel("Only", Rect(0, 0, 1, 1))], header_height=0.0)
    root = ET.fromstring(render_svg(poster))
    assert root.find(f"{SVG_NS}g[@id='header']") is None
    outline = _panel_outline(root, 0)
    assert abs(float(outline.get("y"))) < 1e-6
    assert abs(float(outline.get("height")) - 1189.0) < 1e-6


def test_svg_header_contains_title_and_authors():
    root = ET.fromstring(render_svg(_two_panel_poster()))
    header = root.find(f"{SVG_NS}g[@id='header']")
    texts = [t.text for t in header.findall(f"{SVG_NS}text")]
    assert "Sample poster" in texts
    assert "A. Author and B. Author" in texts


def test_svg_centers_elements_inside_padded_width():
    poster = _two_panel_poster()
    root = ET.fromstring(render_svg(poster))
    group = root.find(f"{SVG_NS}g[@id='panel-1']")
    placeholder = [
        r for r in group.findall(f"{SVG_NS}rect") if r.get("stroke-dasharray")
    ]
    assert len(placeholder) == 1
    box = placeholder[0]

    width = 841.0
    r = poster.panels[1].rect
    px, pw = r.x * width, r.w * width
    pad_x = 0.02 * pw
    inner_x, inner_w = px + pad_x, pw - 2 * pad_x
    ew = 0.6 * r.w * width  # under the inner width, so no capping
    assert ew < inner_w
    assert abs(float(box.get("width")) - ew) < 1e-6
    # Centered: symmetric gaps inside the padded area, so the element center
    # coincides with the panel center.
    ex = float(box.get("x"))
    assert abs((ex - inner_x) - (inner_x + inner_w - (ex + ew))) < 1e-6
    assert abs((ex + ew / 2) - (px + pw / 2)) < 1e-6
    # Height follows the element's aspect ratio.
    el = poster.panels[1].elements[0]
    assert abs(float(box.get("height")) - ew / el.aspect) < 1e-6


@pytest.mark.parametrize("position,edge", [("left", "near"), ("right", "far")])
def test_svg_left_right_anchors_touch_inner_edges(position, edge):
    el = _element("fig-1")
    panel = _panel(
        "Panel",
        Rect(0.0, 0.0, 0.5, 1.0),
        blocks=(ElementPlacement("fig-1", 0.5, position),),
        elements=(el,),
    )
    poster = _poster([panel])
    root = ET.fromstring(render_svg(poster))
    group = root.find(f"{SVG_NS}g[@id='panel-0']")
    box = [r for r in group.findall(f"{SVG_NS}rect") if r.get("stroke-dasharray")][0]
    width = 841.0
    pw = 0.5 * width
    pad_x = 0.02 * pw
    inner_x, inner_w = pad_x, pw - 2 * pad_x
    ew = float(box.get("width"))
    if edge == "near":
        assert abs(float(box.get("x")) - inner_x) < 1e-6
    else:
        assert abs(float(box.get("x")) - (inner_x + inner_w - ew)) < 1e-6


def test_svg_caps_element_width_at_inner_width():
    el = _element("wide", 0.9, 0.3)
    panel = _panel(
        "Panel",
        Rect(0.0, 0.0, 0.5, 1.0),
        blocks=(ElementPlacement("wide", 1.0, "center"),),
        elements=(el,),
    )
    root = ET.fromstring(render_svg(_poster([panel])))
    group = root.find(f"{SVG_NS}g[@id='panel-0']")
    box = [r for r in group.findall(f"{SVG_NS}rect") if r.get("stroke-dasharray")][0]
    pw = 0.5 * 841.0
    inner_w = pw - 2 * 0.02 * pw
    assert abs(float(box.get("width")) - inner_w) < 1e-6


def test_svg_uses_image_tag_when_path_exists(tmp_path):
    img = tmp_path / "figure.png"
    img.write_bytes(b"\x89PNG\r\n\x1a\n")
    el = _element("fig-1", path=str(img))
    panel = _panel(
        "Panel",
        Rect(0.0, 0.0, 1.0, 1.0),
        blocks=(ElementPlacement("fig-1", 0.4, "center"),),
        elements=(el,),
    )
    root = ET.fromstring(render_svg(_poster([panel])))
    images = root.iter(f"{SVG_NS}image")
    hrefs = [i.get("href") for i in images]
    assert hrefs == [str(img)]


def test_svg_escapes_markup_in_text():
    panel = _panel(
        "Ties & <knots>",
        Rect(0.0, 0.0, 1.0, 1.0),
        blocks=("Use a < b & c.",),
    )
    data = render_svg(_poster([panel]))
    assert b"Ties &amp; &lt;knots&gt;" in data
    ET.fromstring(data)  # still well formed


def test_tex_escape_covers_special_characters():
    raw = "50% of $x_i & #1 {set} ~mid^ \\end"
    escaped = tex_escape(raw)
    assert "\\%" in escaped
    assert "\\$" in escaped
    assert "\\_" in escaped
    assert "\\&" in escaped
    assert "\\#" in escaped
    assert "\\{" in escaped and "\\}" in escaped
    assert "\\textasciitilde{}" in escaped
    assert "\\textasciicircum{}" in escaped
    assert "\\textbackslash{}" in escaped
    assert "%" not in escaped.replace("\\%", "")


def test_tex_one_block_per_panel():
    tex = render_beamerposter(_two_panel_poster())
    assert tex.count(r"\begin{block}") == 2
    assert tex.count(r"\end{block}") == 2
    assert tex.count(r"\begin{frame}") == 1
    assert r"\begin{block}{Left panel}" in tex
    assert r"\begin{block}{Right panel}" in tex


def test_tex_positions_blocks_in_region_below_header():
    rect = Rect(0.25, 0.5, 0.5, 0.5)
    poster = _poster([_panel("Panel", rect)])
    tex = render_beamerposter(poster)
    w_cm = 84.1
    h_cm = 118.9
    region_y = 0.1 * h_cm
    region_h = h_cm - region_y
    x = rect.x * w_cm
    y = region_y + rect.y * region_h
    w = rect.w * w_cm
    assert f"\\begin{{textblock}}{{{w:.4f}}}({x:.4f},{y:.4f})" in tex


def test_tex_text_items_become_itemize_entries():
    tex = render_beamerposter(_two_panel_poster())
    assert tex.count(r"\item ") == 3
    assert r"\item A first text item." in tex


def test_tex_placeholder_and_image_paths(tmp_path):
    img = tmp_path / "plot.png"
    img.write_bytes(b"\x89PNG\r\n\x1a\n")
    present = _element("have", path=str(img))
    absent = _element("miss", path=str(tmp_path / "nope.png"))
    panel = _panel(
        "Panel",
        Rect(0.0, 0.0, 1.0, 1.0),
        blocks=(
            ElementPlacement("have", 0.7, "left"),
            ElementPlacement("miss", 0.3, "right"),
        ),
        elements=(present, absent),
    )
    tex = render_beamerposter(_poster([panel]))
    assert rf"\includegraphics[width=0.7000\linewidth]{{{img}}}" in tex
    assert r"\framebox[0.3000\linewidth]" in tex
    assert r"\begin{flushleft}" in tex
    assert r"\begin{flushright}" in tex


def test_tex_escapes_title_and_authors():
    poster = Poster(
        page_width_mm=841.0,
        page_height_mm=1189.0,
        title="Results: 95% & beyond",
        authors="Smith_Jones",
        panels=(_panel("P", Rect(0, 0, 1, 1)),),
    )
    tex = render_beamerposter(poster)
    assert r"Results: 95\% \& beyond" in tex
    assert r"Smith\_Jones" in tex


def test_custom_page_size_flows_into_both_formats():
    poster = Poster(
        page_width_mm=1000.0,
        page_height_mm=500.0,
        title="Wide",
        authors="",
        panels=(_panel("P", Rect(0, 0, 1, 1)),),
        header_height=0.0,
    )
    root = ET.fromstring(render_svg(poster))
    assert root.get("viewBox") == "0 0 1000.000000 500.000000"
    tex = render_beamerposter(poster)
    assert "width=100.00,height=50.00" in tex
