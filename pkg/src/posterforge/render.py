"""Poster serialization to standalone SVG and beamerposter LaTeX source.

Both emitters format floats with a fixed precision so identical posters yield
byte-identical output.
"""

from __future__ import annotations

import os
import textwrap
from dataclasses import dataclass
from xml.sax.saxutils import escape, quoteattr

from .compose import ElementPlacement, PanelComposition
from .content import GraphicalElement
from .layout import Rect

CHAR_WIDTH = 0.006
CHAR_HEIGHT = 0.012
PANEL_PADDING = 0.02  # each side, relative to the panel's own width/height
DEFAULT_HEADER_HEIGHT = 0.10

PANEL_FILL = "#ffffff"
PANEL_STROKE = "#2c3e50"
HEADER_FILL = "#2c3e50"
TEXT_COLOR = "#1a1a1a"
PLACEHOLDER_STROKE = "#888888"


@dataclass(frozen=True)
class PosterPanel:
    title: str
    rect: Rect
    composition: PanelComposition
    elements: tuple[GraphicalElement, ...]

    def element_by_id(self, element_id: str) -> GraphicalElement:
        for el in self.elements:
            if el.id == element_id:
                return el
        raise KeyError(element_id)


@dataclass(frozen=True)
class Poster:
    """Fully resolved poster: physical page, header, panels in read order."""

    page_width_mm: float
    page_height_mm: float
    title: str
    authors: str
    panels: tuple[PosterPanel, ...]
    header_height: float = DEFAULT_HEADER_HEIGHT


def _f(value: float) -> str:
    return f"{value:.6f}"


def render_svg(
    poster: Poster,
    *,
    char_width: float = CHAR_WIDTH,
    char_height: float = CHAR_HEIGHT,
    padding: float = PANEL_PADDING,
) -> bytes:
    """Emit the poster as a standalone SVG 1.1 document (one group per panel).

    Layout rects tile the unit square; they are mapped onto the page region
    below the header strip, so panel y and height scale by (1 - header_height).
    """
    width = poster.page_width_mm
    height = poster.page_height_mm
    region_y = poster.header_height * height
    region_h = height - region_y
    line_h = char_height * region_h
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_f(width)}" height="{_f(height)}" '
        f'viewBox="0 0 {_f(width)} {_f(height)}">',
        f'<rect x="0" y="0" width="{_f(width)}" height="{_f(height)}" '
        f'fill="{PANEL_FILL}"/>',
    ]

    if poster.header_height > 0:
        out.append('<g id="header">')
        out.append(
            f'<rect x="0" y="0" width="{_f(width)}" height="{_f(region_y)}" '
            f'fill="{HEADER_FILL}"/>'
        )
        out.append(
            f'<text x="{_f(width / 2)}" y="{_f(region_y * 0.45)}" '
            f'text-anchor="middle" fill="#ffffff" '
            f'font-family="sans-serif" font-size="{_f(line_h * 2.2)}">'
            f"{escape(poster.title)}</text>"
        )
        if poster.authors:
            out.append(
                f'<text x="{_f(width / 2)}" y="{_f(region_y * 0.78)}" '
                f'text-anchor="middle" fill="#dddddd" '
                f'font-family="sans-serif" font-size="{_f(line_h * 1.2)}">'
                f"{escape(poster.authors)}</text>"
            )
        out.append("</g>")

    for index, panel in enumerate(poster.panels):
        out.extend(
            _panel_svg(
                panel, index, width, region_y, region_h,
                char_width, char_height, padding,
            )
        )
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")


def _panel_svg(
    panel: PosterPanel, index, width, region_y, region_h,
    char_width, char_height, padding,
):
    r = panel.rect
    px, py = r.x * width, region_y + r.y * region_h
    pw, ph = r.w * width, r.h * region_h
    pad_x = padding * pw
    pad_y = padding * ph
    inner_x = px + pad_x
    inner_w = pw - 2 * pad_x
    line_h = char_height * region_h
    chars_per_line = max(1, int((r.w - 2 * padding * r.w) / char_width))

    lines = [f'<g id="panel-{index}">']
    lines.append(
        f'<rect x="{_f(px)}" y="{_f(py)}" width="{_f(pw)}" height="{_f(ph)}" '
        f'fill="{PANEL_FILL}" stroke="{PANEL_STROKE}" stroke-width="1.5"/>'
    )
    cursor = py + pad_y + 1.4 * line_h
    lines.append(
        f'<text x="{_f(inner_x)}" y="{_f(cursor)}" fill="{PANEL_STROKE}" '
        f'font-family="sans-serif" font-weight="bold" '
        f'font-size="{_f(line_h * 1.3)}">{escape(panel.title)}</text>'
    )
    cursor += 0.6 * line_h

    for block in panel.composition.blocks:
        if isinstance(block, ElementPlacement):
            cursor = _element_svg(
                lines, panel, block, inner_x, inner_w, cursor, width, line_h
            )
        else:
            for wrapped in textwrap.wrap(block, width=chars_per_line) or [""]:
                cursor += line_h
                lines.append(
                    f'<text x="{_f(inner_x)}" y="{_f(cursor)}" '
                    f'fill="{TEXT_COLOR}" font-family="sans-serif" '
                    f'font-size="{_f(line_h * 0.85)}">{escape(wrapped)}</text>'
                )
            cursor += 0.4 * line_h
    lines.append("</g>")
    return lines


def _element_svg(lines, panel, placement, inner_x, inner_w, cursor, width, line_h):
    el = panel.element_by_id(placement.element_id)
    r = panel.rect
    # Display width is a fraction of the full panel width, capped at the
    # padded inner width so elements never touch the border. Height follows
    # the element's own aspect ratio.
    ew = min(placement.width_ratio * r.w * width, inner_w)
    eh = ew / el.aspect
    if placement.position == "left":
        ex = inner_x
    elif placement.position == "right":
        ex = inner_x + inner_w - ew
    else:
        ex = inner_x + (inner_w - ew) / 2
    cursor += 0.3 * line_h
    if el.path and os.path.exists(el.path):
        lines.append(
            f'<image x="{_f(ex)}" y="{_f(cursor)}" width="{_f(ew)}" '
            f'height="{_f(eh)}" href={quoteattr(el.path)} '
            f'preserveAspectRatio="none"/>'
        )
    else:
        lines.append(
            f'<rect x="{_f(ex)}" y="{_f(cursor)}" width="{_f(ew)}" '
            f'height="{_f(eh)}" fill="none" stroke="{PLACEHOLDER_STROKE}" '
            f'stroke-dasharray="6,4" stroke-width="1"/>'
        )
        lines.append(
            f'<text x="{_f(ex + ew / 2)}" y="{_f(cursor + eh / 2)}" '
            f'text-anchor="middle" fill="{PLACEHOLDER_STROKE}" '
            f'font-family="monospace" font-size="{_f(line_h * 0.8)}">'
            f"{escape(el.id)}</text>"
        )
    return cursor + eh + 0.3 * line_h


_TEX_SPECIALS = {
    "\\": r"\textbackslash{}",
    "&": r"\&",
    "%": r"\%",
    "$": r"\$",
    "#": r"\#",
    "_": r"\_",
    "{": r"\{",
    "}": r"\}",
    "~": r"\textasciitilde{}",
    "^": r"\textasciicircum{}",
}


def tex_escape(text: str) -> str:
    return "".join(_TEX_SPECIALS.get(ch, ch) for ch in text)


def render_beamerposter(poster: Poster) -> str:
    """Emit beamerposter LaTeX with one absolutely positioned block per panel."""
    w_cm = poster.page_width_mm / 10.0
    h_cm = poster.page_height_mm / 10.0
    lines = [
        r"\documentclass[final]{beamer}",
        rf"\usepackage[size=custom,width={w_cm:.2f},height={h_cm:.2f},scale=1.2]{{beamerposter}}",
        r"\usepackage[absolute,overlay]{textpos}",
        r"\usepackage{graphicx}",
        r"\setlength{\TPHorizModule}{1cm}",
        r"\setlength{\TPVertModule}{1cm}",
        r"\setbeamertemplate{navigation symbols}{}",
        r"\usetheme{default}",
        "",
        r"\begin{document}",
        r"\begin{frame}[t]{}",
    ]
    region_y = poster.header_height * h_cm
    region_h = h_cm - region_y
    if poster.header_height > 0:
        lines += [
            rf"\begin{{textblock}}{{{w_cm:.4f}}}(0.0000,0.0000)",
            r"\centering",
            rf"{{\huge \textbf{{{tex_escape(poster.title)}}}}}\\[0.6cm]",
            rf"{{\large {tex_escape(poster.authors)}}}",
            rf"\vspace{{{region_y * 0.2:.4f}cm}}",
            r"\end{textblock}",
        ]
    for panel in poster.panels:
        lines += _panel_tex(panel, w_cm, region_y, region_h)
    lines += [r"\end{frame}", r"\end{document}"]
    return "\n".join(lines) + "\n"


def _panel_tex(panel: PosterPanel, w_cm: float, region_y: float, region_h: float) -> list[str]:
    r = panel.rect
    x = r.x * w_cm
    y = region_y + r.y * region_h
    w = r.w * w_cm
    lines = [
        "",
        rf"\begin{{textblock}}{{{w:.4f}}}({x:.4f},{y:.4f})",
        rf"\begin{{block}}{{{tex_escape(panel.title)}}}",
    ]
    texts = [b for b in panel.composition.blocks if isinstance(b, str)]
    if texts:
        lines.append(r"\begin{itemize}")
        for item in texts:
            lines.append(rf"\item {tex_escape(item)}")
        lines.append(r"\end{itemize}")
    for block in panel.composition.blocks:
        if isinstance(block, ElementPlacement):
            lines += _element_tex(panel, block)
    lines += [r"\end{block}", r"\end{textblock}"]
    return lines


_TEX_ALIGN = {"left": "flushleft", "center": "center", "right": "flushright"}


def _element_tex(panel: PosterPanel, placement: ElementPlacement) -> list[str]:
    el = panel.element_by_id(placement.element_id)
    env = _TEX_ALIGN[placement.position]
    width = f"{placement.width_ratio:.4f}\\linewidth"
    if el.path and os.path.exists(el.path):
        body = rf"\includegraphics[width={width}]{{{el.path}}}"
    else:
        body = rf"\framebox[{width}]{{\texttt{{{tex_escape(el.id)}}}\vphantom{{Ag}}}}"
    return [rf"\begin{{{env}}}", body, rf"\end{{{env}}}"]
