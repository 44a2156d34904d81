"""Held-out evaluation of panel attribute inference against a ridge baseline.

The fitted model and a plain ridge regressor are trained on the same panels;
both predict (area, aspect) for the test panels and are scored by mean
squared error. Predictions are persisted as CSV so reported numbers can be
recomputed independently.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .corpus import CorpusDocument, annotated_panels
from .errors import FitError
from .panel_model import fit_panel_model, infer_panel_attributes

BASELINE_RIDGE = 1e-3

CSV_COLUMNS = ("document_id", "panel_index", "s_pred", "s_true", "r_pred", "r_true")


@dataclass(frozen=True)
class PredictionRow:
    document_id: str
    panel_index: int
    s_pred: float
    s_true: float
    r_pred: float
    r_true: float


@dataclass(frozen=True)
class BaselineModel:
    """Ridge-regression weights for area and aspect on [t, g, 1] features."""

    size_weights: tuple[float, float, float]
    aspect_weights: tuple[float, float, float]


@dataclass(frozen=True)
class EvalReport:
    mse_size_model: float
    mse_aspect_model: float
    mse_size_baseline: float
    mse_aspect_baseline: float
    n_train: int
    n_test: int
    model_rows: tuple[PredictionRow, ...]
    baseline_rows: tuple[PredictionRow, ...]


def mse(pred: Sequence[float], truth: Sequence[float]) -> float:
    """Mean of squared differences; rejects empty or mismatched inputs."""
    if len(pred) != len(truth):
        raise ValueError(f"length mismatch: {len(pred)} vs {len(truth)}")
    if not pred:
        raise ValueError("mse of empty sequences")
    p = np.asarray(pred, dtype=float)
    t = np.asarray(truth, dtype=float)
    return float(np.mean((p - t) ** 2))


def fit_linear_baseline(
    rows: Sequence[tuple[float, float, float, float]],
    *,
    ridge: float = BASELINE_RIDGE,
) -> BaselineModel:
    """Closed-form ridge fit: solve (X'X + lambda*I) w = X'y for both targets.

    Rows are (text_ratio, graphics_ratio, area, aspect). The penalty applies
    to every coefficient, intercept included, so any lambda > 0 is solvable
    even on degenerate data.
    """
    if not rows:
        raise FitError("no rows to fit baseline")
    if ridge < 0:
        raise FitError(f"ridge penalty must be >= 0, got {ridge}")
    data = np.asarray(rows, dtype=float)
    if data.ndim != 2 or data.shape[1] != 4:
        raise FitError("baseline rows must be (text_ratio, graphics_ratio, area, aspect)")
    x = np.column_stack([data[:, 0], data[:, 1], np.ones(len(rows))])
    gram = x.T @ x + ridge * np.eye(3)
    try:
        size_w = np.linalg.solve(gram, x.T @ data[:, 2])
        aspect_w = np.linalg.solve(gram, x.T @ data[:, 3])
    except np.linalg.LinAlgError:
        raise FitError("singular design matrix; use a positive ridge penalty") from None
    return BaselineModel(
        size_weights=tuple(float(v) for v in size_w),
        aspect_weights=tuple(float(v) for v in aspect_w),
    )


def predict_baseline(
    model: BaselineModel, text_ratio: float, graphics_ratio: float
) -> tuple[float, float]:
    """Raw linear predictions (area, aspect); deliberately unclamped."""
    ws, wr = model.size_weights, model.aspect_weights
    s = ws[0] * text_ratio + ws[1] * graphics_ratio + ws[2]
    r = wr[0] * text_ratio + wr[1] * graphics_ratio + wr[2]
    return s, r


def evaluate(
    train_docs: tuple[CorpusDocument, ...],
    test_docs: tuple[CorpusDocument, ...],
    *,
    ridge: float = BASELINE_RIDGE,
    seed: int = 0,
    stopwords: frozenset[str] = frozenset(),
) -> EvalReport:
    """Train both regressors on the train side, score both on the test side.

    ``seed`` is accepted for interface stability; nothing here draws random
    numbers (both predictors are deterministic), so it is unused.
    """
    del seed
    if not train_docs:
        raise FitError("empty train split")
    if not test_docs:
        raise FitError("empty test split")
    train_annotated = annotated_panels(train_docs, stopwords=stopwords)
    train = [(t, g, s, r) for _, _, t, g, s, r in train_annotated]
    test = annotated_panels(test_docs, stopwords=stopwords)
    if not test:
        raise FitError("no annotated panels in the test split")

    model = fit_panel_model(train)
    baseline = fit_linear_baseline(train, ridge=ridge)

    model_rows = []
    baseline_rows = []
    for doc_id, idx, t, g, s_true, r_true in test:
        attrs = infer_panel_attributes(model, t, g)
        model_rows.append(
            PredictionRow(doc_id, idx, attrs.area, s_true, attrs.aspect, r_true)
        )
        s_hat, r_hat = predict_baseline(baseline, t, g)
        baseline_rows.append(PredictionRow(doc_id, idx, s_hat, s_true, r_hat, r_true))

    return EvalReport(
        mse_size_model=mse([r.s_pred for r in model_rows], [r.s_true for r in model_rows]),
        mse_aspect_model=mse([r.r_pred for r in model_rows], [r.r_true for r in model_rows]),
        mse_size_baseline=mse(
            [r.s_pred for r in baseline_rows], [r.s_true for r in baseline_rows]
        ),
        mse_aspect_baseline=mse(
            [r.r_pred for r in baseline_rows], [r.r_true for r in baseline_rows]
        ),
        n_train=len(train),
        n_test=len(test),
        model_rows=tuple(model_rows),
        baseline_rows=tuple(baseline_rows),
    )


def write_predictions_csv(path: str, rows: Sequence[PredictionRow]) -> None:
    """Dump prediction rows; floats use repr() so recomputation is exact."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow(
                [
                    row.document_id,
                    row.panel_index,
                    repr(row.s_pred),
                    repr(row.s_true),
                    repr(row.r_pred),
                    repr(row.r_true),
                ]
            )


def read_predictions_csv(path: str) -> list[PredictionRow]:
    with open(path, "r", newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != CSV_COLUMNS:
            raise ValueError(f"unexpected CSV header: {header}")
        return [
            PredictionRow(
                document_id=doc_id,
                panel_index=int(idx),
                s_pred=float(s_pred),
                s_true=float(s_true),
                r_pred=float(r_pred),
                r_true=float(r_true),
            )
            for doc_id, idx, s_pred, s_true, r_pred, r_true in reader
        ]


def format_report(report: EvalReport) -> str:
    """Human-readable summary block, also written next to the CSVs."""
    lines = [
        "evaluation report",
        f"train panels: {report.n_train}",
        f"test panels: {report.n_test}",
        f"mse_size_model: {report.mse_size_model!r}",
        f"mse_aspect_model: {report.mse_aspect_model!r}",
        f"mse_size_baseline: {report.mse_size_baseline!r}",
        f"mse_aspect_baseline: {report.mse_aspect_baseline!r}",
    ]
    return "\n".join(lines) + "\n"


def write_metrics_csv(path: str, report: EvalReport) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(("metric", "model", "baseline"))
        writer.writerow(
            ("size_mse", repr(report.mse_size_model), repr(report.mse_size_baseline))
        )
        writer.writerow(
            ("aspect_mse", repr(report.mse_aspect_model), repr(report.mse_aspect_baseline))
        )
