"""Flat-text persistence for the trained panel and composition models.

The format is line oriented: a version header, then `key: v1 v2 ...` lines
with repr() floats, so a round trip through disk is bit-exact.
"""

from __future__ import annotations

from dataclasses import dataclass

from .compose import CompositionModel
from .errors import ParseError, ValidationError
from .panel_model import PanelModel

FORMAT_HEADER = "posterforge-model-version: 1"

_KEYS = (
    "size_weights",
    "size_sigma",
    "aspect_weights",
    "aspect_sigma",
    "width_weights",
    "width_sigma",
    "position_weights_left",
    "position_weights_center",
    "position_weights_right",
)
_LENGTHS = {
    "size_weights": 3,
    "size_sigma": 1,
    "aspect_weights": 3,
    "aspect_sigma": 1,
    "width_weights": 4,
    "width_sigma": 1,
    "position_weights_left": 4,
    "position_weights_center": 4,
    "position_weights_right": 4,
}


@dataclass(frozen=True)
class TrainedModel:
    panel: PanelModel
    composition: CompositionModel


def dumps_model(model: TrainedModel) -> str:
    rows = {
        "size_weights": model.panel.size_weights,
        "size_sigma": (model.panel.size_sigma,),
        "aspect_weights": model.panel.aspect_weights,
        "aspect_sigma": (model.panel.aspect_sigma,),
        "width_weights": model.composition.width_weights,
        "width_sigma": (model.composition.width_sigma,),
        "position_weights_left": model.composition.position_weights[0],
        "position_weights_center": model.composition.position_weights[1],
        "position_weights_right": model.composition.position_weights[2],
    }
    lines = [FORMAT_HEADER]
    for key in _KEYS:
        values = " ".join(repr(float(v)) for v in rows[key])
        lines.append(f"{key}: {values}")
    return "\n".join(lines) + "\n"


def loads_model(text: str, *, source: str = "<model>") -> TrainedModel:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != FORMAT_HEADER:
        raise ParseError(f"{source}: missing or unsupported model header")
    seen: dict[str, tuple[float, ...]] = {}
    for ln in lines[1:]:
        if ":" not in ln:
            raise ParseError(f"{source}: malformed line {ln!r}")
        key, _, raw = ln.partition(":")
        key = key.strip()
        if key not in _LENGTHS:
            raise ValidationError(source, f"unknown model key {key!r}")
        if key in seen:
            raise ValidationError(source, f"duplicate model key {key!r}")
        try:
            values = tuple(float(tok) for tok in raw.split())
        except ValueError as exc:
            raise ParseError(f"{source}: bad float in {key!r}: {exc}") from None
        if len(values) != _LENGTHS[key]:
            raise ValidationError(
                source,
                f"{key!r} expects {_LENGTHS[key]} values, got {len(values)}",
            )
        seen[key] = values
    missing = [k for k in _KEYS if k not in seen]
    if missing:
        raise ValidationError(source, f"missing model keys: {', '.join(missing)}")
    panel = PanelModel(
        size_weights=seen["size_weights"],
        size_sigma=seen["size_sigma"][0],
        aspect_weights=seen["aspect_weights"],
        aspect_sigma=seen["aspect_sigma"][0],
    )
    composition = CompositionModel(
        width_weights=seen["width_weights"],
        width_sigma=seen["width_sigma"][0],
        position_weights=(
            seen["position_weights_left"],
            seen["position_weights_center"],
            seen["position_weights_right"],
        ),
    )
    return TrainedModel(panel=panel, composition=composition)


def save_model(model: TrainedModel, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_model(model))


def load_model(path: str) -> TrainedModel:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_model(fh.read(), source=path)
