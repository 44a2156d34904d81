"""End-to-end generation: document in, fully resolved poster out.

Stages: per-section summarization, panel attribute inference, layout search,
per-panel composition. Each stage is timed; timing goes to the result (the
CLI prints it to stderr) so content-bearing outputs stay byte-stable.
"""

from __future__ import annotations

from dataclasses import dataclass
from time import perf_counter

from .compose import (
    CompositionModel,
    PanelComposition,
    compose_panel,
    fit_position_model,
    fit_size_model,
)
from .config import Config
from .content import DocumentContent
from .corpus import (
    CorpusDocument,
    document_panels,
    panel_rows,
    position_rows,
    size_rows,
)
from .layout import LayoutTree, generate_layout, tree_rects
from .model_io import TrainedModel
from .panel_model import PanelAttributes, fit_panel_model, infer_panel_attributes
from .render import Poster, PosterPanel


@dataclass(frozen=True)
class TrainingDiagnostics:
    """Fit statistics surfaced by the train command."""

    n_panel_rows: int
    n_size_rows: int
    n_position_rows: int
    size_sigma: float
    aspect_sigma: float
    width_sigma: float
    position_log_likelihood: float
    position_iterations: int
    position_warning: str | None


def train_model(
    docs: tuple[CorpusDocument, ...] | list[CorpusDocument],
    *,
    stopwords: frozenset[str] = frozenset(),
) -> tuple[TrainedModel, TrainingDiagnostics]:
    """Fit the panel and composition models from an annotated corpus."""
    p_rows = panel_rows(docs, stopwords=stopwords)
    s_rows = size_rows(docs, stopwords=stopwords)
    h_rows = position_rows(docs)
    panel = fit_panel_model(p_rows)
    width_weights, width_sigma = fit_size_model(s_rows)
    position = fit_position_model(h_rows)
    model = TrainedModel(
        panel=panel,
        composition=CompositionModel(
            width_weights=width_weights,
            width_sigma=width_sigma,
            position_weights=position.weights,
        ),
    )
    diagnostics = TrainingDiagnostics(
        n_panel_rows=len(p_rows),
        n_size_rows=len(s_rows),
        n_position_rows=len(h_rows),
        size_sigma=panel.size_sigma,
        aspect_sigma=panel.aspect_sigma,
        width_sigma=width_sigma,
        position_log_likelihood=position.log_likelihood,
        position_iterations=position.iterations,
        position_warning=position.warning,
    )
    return model, diagnostics


@dataclass(frozen=True)
class GenerationResult:
    poster: Poster
    tree: LayoutTree
    loss: float
    attributes: tuple[PanelAttributes, ...]
    compositions: tuple[PanelComposition, ...]
    warnings: tuple[str, ...]
    timings: tuple[tuple[str, float], ...]


def generate_poster(
    model: TrainedModel,
    doc: DocumentContent,
    *,
    config: Config = Config(),
    seed: int = 0,
) -> GenerationResult:
    """Run the full pipeline deterministically for (model, doc, config, seed).

    Panel n uses the derived seed ``seed + n`` so panels are independent and
    the whole run replays exactly. Infeasible compositions fall back and are
    reported as warnings, not errors.
    """
    timings = []

    t0 = perf_counter()
    panels = document_panels(doc, stopwords=frozenset(config.stopwords))
    timings.append(("summarize", perf_counter() - t0))

    t0 = perf_counter()
    attributes = tuple(
        infer_panel_attributes(model.panel, p.text_ratio, p.graphics_ratio)
        for p in panels
    )
    timings.append(("panel-inference", perf_counter() - t0))

    t0 = perf_counter()
    tree, loss = generate_layout(attributes, k_max=config.k_max)
    rects = tree_rects(tree)
    timings.append(("layout", perf_counter() - t0))

    # Layout rects tile the unit square mapped onto the page region below the
    # header, so the aspect the composer sees is the region's, not the page's.
    region_aspect = doc.page_aspect / (1.0 - config.header_height)

    t0 = perf_counter()
    compositions = []
    warnings = []
    for i, (content, rect) in enumerate(zip(panels, rects)):
        comp = compose_panel(
            model.composition,
            content,
            rect,
            page_aspect=region_aspect,
            char_width=config.char_width,
            char_height=config.char_height,
            n_samples=config.n_samples,
            seed=seed + i,
        )
        if comp.fallback:
            warnings.append(
                f"panel {i} ({doc.sections[i].title!r}): no feasible composition "
                "found, deterministic fallback applied"
            )
        compositions.append(comp)
    timings.append(("compose", perf_counter() - t0))

    poster = Poster(
        page_width_mm=config.page_width_mm,
        page_height_mm=config.page_width_mm / doc.page_aspect,
        title=doc.title,
        authors=doc.authors,
        panels=tuple(
            PosterPanel(
                title=doc.sections[i].title,
                rect=rects[i],
                composition=compositions[i],
                elements=panels[i].elements,
            )
            for i in range(len(panels))
        ),
        header_height=config.header_height,
    )
    return GenerationResult(
        poster=poster,
        tree=tree,
        loss=loss,
        attributes=attributes,
        compositions=tuple(compositions),
        warnings=tuple(warnings),
        timings=tuple(timings),
    )
