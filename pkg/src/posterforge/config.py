"""Runtime configuration with documented defaults and a JSON override file.

Every knob lives here so the CLI, pipeline, and tests agree on defaults. The
config file is optional; the CLI looks at --config first, then the
POSTERFORGE_CONFIG environment variable.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass

from .errors import ParseError, ValidationError


@dataclass(frozen=True)
class Config:
    extraction_ratio: float = 0.2  # default sentence-keep ratio per section
    damping: float = 0.85
    tolerance: float = 1e-6
    max_iterations: int = 100
    stopwords: tuple[str, ...] = ()
    k_max: int = 12  # layout search limit
    char_width: float = 0.006  # one character, fraction of page width
    char_height: float = 0.012  # one line, fraction of page height
    n_samples: int = 1000
    page_width_mm: float = 841.0  # A0 portrait width
    header_height: float = 0.10  # title strip, fraction of page height
    panel_padding: float = 0.02
    baseline_ridge: float = 1e-3


_RANGES = {
    "extraction_ratio": ("in (0, 1]", lambda v: 0 < v <= 1),
    "damping": ("in (0, 1)", lambda v: 0 < v < 1),
    "tolerance": ("> 0", lambda v: v > 0),
    "max_iterations": (">= 1", lambda v: v >= 1),
    "k_max": (">= 1", lambda v: v >= 1),
    "char_width": ("> 0", lambda v: v > 0),
    "char_height": ("> 0", lambda v: v > 0),
    "n_samples": (">= 1", lambda v: v >= 1),
    "page_width_mm": ("> 0", lambda v: v > 0),
    "header_height": ("in [0, 1)", lambda v: 0 <= v < 1),
    "panel_padding": ("in [0, 0.5)", lambda v: 0 <= v < 0.5),
    "baseline_ridge": (">= 0", lambda v: v >= 0),
}

_INT_FIELDS = {"max_iterations", "k_max", "n_samples"}


def load_config(path: str) -> Config:
    """Read a JSON config file; unknown keys and out-of-range values fail."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ValidationError(path, f"cannot read config: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: config is not valid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise ValidationError(path, "config must be a JSON object")

    known = {f.name for f in dataclasses.fields(Config)}
    values = {}
    for key, value in raw.items():
        if key not in known:
            raise ValidationError(f"{path} $.{key}", "unknown config key")
        if key == "stopwords":
            if not isinstance(value, list) or any(not isinstance(s, str) for s in value):
                raise ValidationError(f"{path} $.{key}", "must be an array of strings")
            values[key] = tuple(value)
            continue
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValidationError(f"{path} $.{key}", "must be a number")
        if key in _INT_FIELDS:
            if isinstance(value, float) and not value.is_integer():
                raise ValidationError(f"{path} $.{key}", "must be an integer")
            value = int(value)
        else:
            value = float(value)
        label, ok = _RANGES[key]
        if not ok(value):
            raise ValidationError(f"{path} $.{key}", f"must be {label}")
        values[key] = value
    return Config(**values)


def resolve_config(path_flag: str | None, env: dict[str, str]) -> Config:
    """Pick --config if given, else POSTERFORGE_CONFIG, else defaults."""
    path = path_flag or env.get("POSTERFORGE_CONFIG")
    if path:
        return load_config(path)
    return Config()
