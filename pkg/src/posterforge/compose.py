"""Within-panel composition: element display width, anchor, and feasibility.

Display width is a linear Gaussian in [panel_area, text_length, element_area, 1];
the horizontal anchor is a three-class softmax over [panel_aspect, element_area,
element_aspect, 1] with the center row pinned to zero for identifiability.
A composition is selected by drawing joint samples from both conditionals,
rejecting any sample whose content would overflow the panel, and keeping the
feasible sample with the highest joint log-likelihood.

Sampling protocol (relied on by replay tests): a single generator seeded with
``seed`` first draws all width samples via ``rng.normal`` with shape
(n_samples, n_elements), then all anchor samples via ``rng.random`` with the
same shape, mapped through each element's class-probability CDF with
``searchsorted``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .content import POSITIONS, PanelContent
from .errors import FitError
from .layout import Rect

SIGMA_FLOOR = 1e-6
CHAR_WIDTH = 0.006  # single-character width, fraction of page width
CHAR_HEIGHT = 0.012  # single-character height, fraction of page height
N_SAMPLES = 1000
WIDTH_RATIO_MIN = 1e-6  # widths are clamped into (0, 1]
FALLBACK_SCALE_MIN = 0.1

SOFTMAX_LEARNING_RATE = 0.1
SOFTMAX_ITERATIONS = 500
SOFTMAX_L2 = 1e-4
_PINNED_CLASS = POSITIONS.index("center")

_LOG_2PI = math.log(2.0 * math.pi)


@dataclass(frozen=True)
class CompositionModel:
    """Fitted width conditional plus anchor softmax weights (3 rows of 4)."""

    width_weights: tuple[float, float, float, float]
    width_sigma: float
    position_weights: tuple[tuple[float, float, float, float], ...]

    def __post_init__(self):
        if len(self.position_weights) != len(POSITIONS):
            raise ValueError("position_weights needs one row per anchor class")


@dataclass(frozen=True)
class ElementPlacement:
    """Resolved display width (fraction of panel width) and anchor."""

    element_id: str
    width_ratio: float
    position: str

    def __post_init__(self):
        if not 0 < self.width_ratio <= 1:
            raise ValueError(f"width_ratio must be in (0, 1], got {self.width_ratio}")
        if self.position not in POSITIONS:
            raise ValueError(f"unknown position {self.position!r}")


Block = Union[str, ElementPlacement]


@dataclass(frozen=True)
class PanelComposition:
    """Ordered blocks of a panel plus its computed content height."""

    panel_index: int
    blocks: tuple[Block, ...]
    content_height: float  # fraction of page height
    fallback: bool = False

    @property
    def placements(self) -> tuple[ElementPlacement, ...]:
        return tuple(b for b in self.blocks if isinstance(b, ElementPlacement))

    @property
    def text_items(self) -> tuple[str, ...]:
        return tuple(b for b in self.blocks if isinstance(b, str))


@dataclass(frozen=True)
class PositionFit:
    """Result of fitting the anchor softmax."""

    weights: tuple[tuple[float, float, float, float], ...]
    log_likelihood: float
    iterations: int
    warning: str | None = None


def fit_size_model(
    rows: Sequence[tuple[float, float, float, float]],
    *,
    sigma_floor: float = SIGMA_FLOOR,
) -> tuple[tuple[float, float, float, float], float]:
    """Least-squares fit of display width on (panel_area, text_length, element_area).

    Rows are (panel_area, text_length, element_area, width_ratio).
    """
    if len(rows) < 5:
        raise FitError(f"too few rows to fit size model: {len(rows)} < 5")
    data = np.asarray(rows, dtype=float)
    if data.ndim != 2 or data.shape[1] != 4:
        raise FitError(
            "size rows must be (panel_area, text_length, element_area, width_ratio)"
        )
    features = np.column_stack([data[:, 0], data[:, 1], data[:, 2], np.ones(len(rows))])
    if np.linalg.matrix_rank(features) < 4:
        raise FitError("rank-deficient design matrix (collinear features)")
    weights, _, _, _ = np.linalg.lstsq(features, data[:, 3], rcond=None)
    residual = data[:, 3] - features @ weights
    sigma = max(sigma_floor, math.sqrt(float(np.mean(residual**2))))
    return tuple(float(v) for v in weights), sigma


def position_probabilities(
    weights: Sequence[Sequence[float]], panel_aspect: float, element_area: float,
    element_aspect: float,
) -> np.ndarray:
    """Softmax class probabilities over (left, center, right)."""
    w = np.asarray(weights, dtype=float)
    logits = w @ np.array([panel_aspect, element_area, element_aspect, 1.0])
    shifted = np.exp(logits - np.max(logits))
    return shifted / shifted.sum()


def fit_position_model(
    rows: Sequence[tuple[float, float, float, str]],
    *,
    learning_rate: float = SOFTMAX_LEARNING_RATE,
    iterations: int = SOFTMAX_ITERATIONS,
    l2: float = SOFTMAX_L2,
) -> PositionFit:
    """Maximize the multinomial log-likelihood by backtracking gradient ascent.

    Rows are (panel_aspect, element_area, element_aspect, position). The center
    row stays pinned at zero. The step size starts at ``learning_rate``, is
    halved whenever a step would decrease the penalized objective, and may
    recover after accepted steps, so the objective never decreases. Data with
    a single class present short-circuits to a pinned model with a large logit
    for that class and a warning status.
    """
    if len(rows) < 6:
        raise FitError(f"too few rows to fit position model: {len(rows)} < 6")
    labels = []
    for row in rows:
        if row[3] not in POSITIONS:
            raise FitError(f"unknown position label {row[3]!r}")
        labels.append(POSITIONS.index(row[3]))
    y = np.asarray(labels)
    classes = sorted(set(labels))
    if len(classes) == 1:
        weights = np.zeros((len(POSITIONS), 4))
        only = classes[0]
        if only == _PINNED_CLASS:
            for c in range(len(POSITIONS)):
                if c != _PINNED_CLASS:
                    weights[c, 3] = -10.0
        else:
            weights[only, 3] = 10.0
        ll = _position_objective(weights, _design(rows), y, 0.0)
        return PositionFit(
            weights=_as_rows(weights),
            log_likelihood=ll,
            iterations=0,
            warning=f"single-class training data (all {POSITIONS[only]})",
        )

    x = _design(rows)
    n = len(rows)
    onehot = np.zeros((n, len(POSITIONS)))
    onehot[np.arange(n), y] = 1.0
    free = [c for c in range(len(POSITIONS)) if c != _PINNED_CLASS]

    weights = np.zeros((len(POSITIONS), 4))
    objective = _position_objective(weights, x, y, l2)
    step = learning_rate
    steps_taken = 0
    for _ in range(iterations):
        probs = _softmax_rows(x @ weights.T)
        grad = (onehot - probs).T @ x
        grad[_PINNED_CLASS] = 0.0
        grad[free] -= l2 * weights[free]
        accepted = False
        while step >= 1e-12:
            candidate = weights + step * grad
            cand_obj = _position_objective(candidate, x, y, l2)
            if cand_obj >= objective:
                weights = candidate
                objective = cand_obj
                accepted = True
                break
            step /= 2.0
        if not accepted:
            break
        steps_taken += 1
        step = min(step * 2.0, learning_rate)

    ll = _position_objective(weights, x, y, 0.0)
    return PositionFit(
        weights=_as_rows(weights),
        log_likelihood=ll,
        iterations=steps_taken,
        warning=None,
    )


def _design(rows) -> np.ndarray:
    data = np.asarray([[r[0], r[1], r[2]] for r in rows], dtype=float)
    return np.column_stack([data, np.ones(len(rows))])


def _softmax_rows(logits: np.ndarray) -> np.ndarray:
    shifted = np.exp(logits - logits.max(axis=1, keepdims=True))
    return shifted / shifted.sum(axis=1, keepdims=True)


def _position_objective(weights, x, y, l2) -> float:
    probs = _softmax_rows(x @ weights.T)
    ll = float(np.sum(np.log(probs[np.arange(len(y)), y])))
    free = [c for c in range(len(POSITIONS)) if c != _PINNED_CLASS]
    return ll - 0.5 * l2 * float(np.sum(np.asarray(weights)[free] ** 2))


def _as_rows(weights: np.ndarray) -> tuple[tuple[float, float, float, float], ...]:
    return tuple(tuple(float(v) for v in row) for row in weights)


def content_height(
    text_length: int,
    items: Sequence[tuple[float, float]],
    panel_width: float,
    *,
    char_width: float = CHAR_WIDTH,
    char_height: float = CHAR_HEIGHT,
    page_aspect: float = 1.0,
) -> float:
    """Total content height as a fraction of page height.

    ``items`` holds (width_ratio, aspect) per placed element. Element height is
    width_ratio * panel_width * page_aspect / aspect; text occupies whole lines
    of ``char_height`` each, with ceil(char_width * text_length / panel_width)
    lines.
    """
    element_part = sum(
        width_ratio * panel_width * page_aspect / aspect for width_ratio, aspect in items
    )
    text_part = char_height * math.ceil(char_width * text_length / panel_width)
    return element_part + text_part


def compose_panel(
    model: CompositionModel,
    content: PanelContent,
    rect: Rect,
    *,
    page_aspect: float,
    char_width: float = CHAR_WIDTH,
    char_height: float = CHAR_HEIGHT,
    n_samples: int = N_SAMPLES,
    seed: int = 0,
) -> PanelComposition:
    """Pick the best feasible joint assignment of element widths and anchors.

    Draws ``n_samples`` joint samples per the module-level sampling protocol,
    keeps those with content height strictly below the panel height, and
    returns the feasible sample with the highest joint log-likelihood. When no
    sample is feasible (or the text alone overflows), a deterministic fallback
    centers every element and scales the mean widths by the largest feasible
    factor, floored at 0.1, and the composition is flagged.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    panel_area = rect.w * rect.h
    panel_aspect = rect.w / rect.h
    text_part = char_height * math.ceil(char_width * content.text_length / rect.w)
    elements = content.elements

    if not elements:
        return PanelComposition(
            panel_index=content.section_index,
            blocks=tuple(content.text_items),
            content_height=text_part,
            fallback=not text_part < rect.h,
        )

    m = len(elements)
    wu = np.asarray(model.width_weights)
    means = np.array(
        [
            wu[0] * panel_area + wu[1] * content.text_length + wu[2] * el.area + wu[3]
            for el in elements
        ]
    )
    probs = np.vstack(
        [
            position_probabilities(model.position_weights, panel_aspect, el.area, el.aspect)
            for el in elements
        ]
    )
    height_factor = np.array([rect.w * page_aspect / el.aspect for el in elements])

    rng = np.random.default_rng(seed)
    widths = rng.normal(loc=means, scale=model.width_sigma, size=(n_samples, m))
    widths = np.clip(widths, WIDTH_RATIO_MIN, 1.0)
    anchor_draws = rng.random((n_samples, m))
    anchors = np.empty((n_samples, m), dtype=int)
    for e in range(m):
        cdf = np.cumsum(probs[e])
        anchors[:, e] = np.minimum(
            np.searchsorted(cdf, anchor_draws[:, e], side="right"), len(POSITIONS) - 1
        )

    heights = widths @ height_factor + text_part
    feasible = heights < rect.h

    if np.any(feasible):
        z = (widths - means) / model.width_sigma
        gauss = -0.5 * z**2 - math.log(model.width_sigma) - 0.5 * _LOG_2PI
        cat = np.log(probs[np.arange(m)[None, :], anchors])
        loglik = gauss.sum(axis=1) + cat.sum(axis=1)
        loglik = np.where(feasible, loglik, -np.inf)
        pick = int(np.argmax(loglik))
        chosen_widths = widths[pick]
        chosen_anchors = [POSITIONS[a] for a in anchors[pick]]
        fallback = False
    else:
        base = np.clip(means, WIDTH_RATIO_MIN, 1.0)
        element_part = float(base @ height_factor)
        room = rect.h - text_part
        if element_part > 0 and room > 0:
            factor = min(1.0, (room / element_part) * (1.0 - 1e-9))
        else:
            factor = FALLBACK_SCALE_MIN
        factor = max(FALLBACK_SCALE_MIN, factor)
        chosen_widths = np.clip(base * factor, WIDTH_RATIO_MIN, 1.0)
        chosen_anchors = ["center"] * m
        fallback = True

    placements = tuple(
        ElementPlacement(
            element_id=el.id,
            width_ratio=float(chosen_widths[e]),
            position=chosen_anchors[e],
        )
        for e, el in enumerate(elements)
    )
    height = content_height(
        content.text_length,
        [(p.width_ratio, el.aspect) for p, el in zip(placements, elements)],
        rect.w,
        char_width=char_width,
        char_height=char_height,
        page_aspect=page_aspect,
    )
    return PanelComposition(
        panel_index=content.section_index,
        blocks=tuple(content.text_items) + placements,
        content_height=height,
        fallback=fallback,
    )
