"""posterforge: learn poster design patterns and generate poster layouts.

Public API: document loading, model training and persistence, layout search,
composition, rendering, and evaluation. The command line front end lives in
``posterforge.cli``.
"""

__version__ = "0.1.0"

from .compose import CompositionModel, ElementPlacement, PanelComposition, compose_panel
from .config import Config, load_config
from .content import (
    DocumentContent,
    GraphicalElement,
    PanelContent,
    Section,
    build_panel_contents,
    load_document,
)
from .corpus import CorpusDocument, load_corpus_dir, load_split
from .errors import (
    FitError,
    LayoutError,
    ParseError,
    PosterforgeError,
    ValidationError,
)
from .evaluation import EvalReport, evaluate, fit_linear_baseline, mse
from .layout import Leaf, Rect, Split, generate_layout, layout_loss, tree_rects
from .model_io import TrainedModel, load_model, save_model
from .panel_model import PanelAttributes, PanelModel, fit_panel_model, infer_panel_attributes
from .pipeline import GenerationResult, generate_poster, train_model
from .render import Poster, PosterPanel, render_beamerposter, render_svg
from .summarize import extract_summary

__all__ = [
    "__version__",
    "CompositionModel",
    "Config",
    "CorpusDocument",
    "DocumentContent",
    "ElementPlacement",
    "EvalReport",
    "FitError",
    "GenerationResult",
    "GraphicalElement",
    "LayoutError",
    "Leaf",
    "PanelAttributes",
    "PanelComposition",
    "PanelContent",
    "PanelModel",
    "ParseError",
    "Poster",
    "PosterPanel",
    "PosterforgeError",
    "Rect",
    "Section",
    "Split",
    "TrainedModel",
    "ValidationError",
    "build_panel_contents",
    "compose_panel",
    "evaluate",
    "extract_summary",
    "fit_linear_baseline",
    "fit_panel_model",
    "generate_layout",
    "generate_poster",
    "infer_panel_attributes",
    "layout_loss",
    "load_config",
    "load_corpus_dir",
    "load_document",
    "load_model",
    "load_split",
    "mse",
    "render_beamerposter",
    "render_svg",
    "save_model",
    "train_model",
    "tree_rects",
]
