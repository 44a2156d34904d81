"""Linear-Gaussian model of panel area and aspect ratio given content shares.

Both targets are modeled as Gaussians whose mean is linear in the feature
vector [text_ratio, graphics_ratio, 1]; maximum likelihood therefore reduces
to least squares for the weights and to the residual RMS for the sigmas.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import log, pi, sqrt
from typing import Sequence

import numpy as np

from .errors import FitError

SIGMA_FLOOR = 1e-6
AREA_MIN = 0.01
ASPECT_MIN = 0.2
ASPECT_MAX = 5.0

_LOG_2PI = log(2.0 * pi)


@dataclass(frozen=True)
class PanelModel:
    """Fitted weights and residual sigmas for panel area and aspect."""

    size_weights: tuple[float, float, float]
    size_sigma: float
    aspect_weights: tuple[float, float, float]
    aspect_sigma: float


@dataclass(frozen=True)
class PanelAttributes:
    """Inferred panel area fraction and aspect ratio (width / height)."""

    area: float
    aspect: float

    def __post_init__(self):
        if not 0 < self.area <= 1:
            raise ValueError(f"area must be in (0, 1], got {self.area}")
        if self.aspect <= 0:
            raise ValueError(f"aspect must be > 0, got {self.aspect}")


def _fit_linear_gaussian(
    features: np.ndarray, target: np.ndarray, sigma_floor: float
) -> tuple[np.ndarray, float]:
    """Least-squares weights plus residual RMS clamped to sigma_floor."""
    if np.linalg.matrix_rank(features) < features.shape[1]:
        raise FitError("rank-deficient design matrix (collinear features)")
    weights, _, _, _ = np.linalg.lstsq(features, target, rcond=None)
    residual = target - features @ weights
    sigma = max(sigma_floor, sqrt(float(np.mean(residual**2))))
    return weights, sigma


def fit_panel_model(
    rows: Sequence[tuple[float, float, float, float]],
    *,
    sigma_floor: float = SIGMA_FLOOR,
) -> PanelModel:
    """Fit both conditionals from (text_ratio, graphics_ratio, area, aspect) rows."""
    if len(rows) < 4:
        raise FitError(f"too few rows to fit panel model: {len(rows)} < 4")
    data = np.asarray(rows, dtype=float)
    if data.ndim != 2 or data.shape[1] != 4:
        raise FitError("panel rows must be (text_ratio, graphics_ratio, area, aspect)")
    features = np.column_stack([data[:, 0], data[:, 1], np.ones(len(rows))])
    size_w, size_sigma = _fit_linear_gaussian(features, data[:, 2], sigma_floor)
    aspect_w, aspect_sigma = _fit_linear_gaussian(features, data[:, 3], sigma_floor)
    return PanelModel(
        size_weights=tuple(float(v) for v in size_w),
        size_sigma=size_sigma,
        aspect_weights=tuple(float(v) for v in aspect_w),
        aspect_sigma=aspect_sigma,
    )


def infer_panel_attributes(
    model: PanelModel,
    text_ratio: float,
    graphics_ratio: float,
    *,
    area_min: float = AREA_MIN,
    aspect_min: float = ASPECT_MIN,
    aspect_max: float = ASPECT_MAX,
) -> PanelAttributes:
    """Conditional means for (area, aspect), clamped into usable ranges.

    Returning the mean keeps inference deterministic; the sigmas stay
    available for the likelihood API.
    """
    ws = model.size_weights
    wr = model.aspect_weights
    area = ws[0] * text_ratio + ws[1] * graphics_ratio + ws[2]
    aspect = wr[0] * text_ratio + wr[1] * graphics_ratio + wr[2]
    area = min(1.0, max(area_min, area))
    aspect = min(aspect_max, max(aspect_min, aspect))
    return PanelAttributes(area=area, aspect=aspect)


def _gaussian_log_density(x: float, mean: float, sigma: float) -> float:
    z = (x - mean) / sigma
    return -0.5 * z * z - log(sigma) - 0.5 * _LOG_2PI


def panel_log_likelihood(
    model: PanelModel, rows: Sequence[tuple[float, float, float, float]]
) -> float:
    """Sum of Gaussian log-densities of (area, aspect) over the given panels."""
    total = 0.0
    for text_ratio, graphics_ratio, area, aspect in rows:
        mean_s = (
            model.size_weights[0] * text_ratio
            + model.size_weights[1] * graphics_ratio
            + model.size_weights[2]
        )
        mean_r = (
            model.aspect_weights[0] * text_ratio
            + model.aspect_weights[1] * graphics_ratio
            + model.aspect_weights[2]
        )
        total += _gaussian_log_density(area, mean_s, model.size_sigma)
        total += _gaussian_log_density(aspect, mean_r, model.aspect_sigma)
    return total
