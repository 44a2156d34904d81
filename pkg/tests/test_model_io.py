"""Tests for the flat-text model serialization format."""

import math
import random

import pytest

from posterforge.compose import CompositionModel
from posterforge.errors import ParseError, ValidationError
from posterforge.model_io import (
    FORMAT_HEADER,
    TrainedModel,
    dumps_model,
    load_model,
    loads_model,
    save_model,
)
from posterforge.panel_model import PanelModel


def _model(rng=None):
    if rng is None:
        rng = random.Random(0)
    f = rng.uniform
    return TrainedModel(
        panel=PanelModel(
            size_weights=(f(-1, 1), f(-1, 1), f(-1, 1)),
            size_sigma=f(1e-6, 0.3),
            aspect_weights=(f(-1, 1), f(-1, 1), f(-1, 1)),
            aspect_sigma=f(1e-6, 0.3),
        ),
        composition=CompositionModel(
            width_weights=(f(-1, 1), f(-1, 1), f(-1, 1), f(-1, 1)),
            width_sigma=f(1e-6, 0.3),
            position_weights=(
                (f(-2, 2), f(-2, 2), f(-2, 2), f(-2, 2)),
                (0.0, 0.0, 0.0, 0.0),
                (f(-2, 2), f(-2, 2), f(-2, 2), f(-2, 2)),
            ),
        ),
    )


def test_round_trip_is_bit_exact():
    rng = random.Random(42)
    for _ in range(25):
        model = _model(rng)
        assert loads_model(dumps_model(model)) == model


def test_round_trip_preserves_awkward_floats():
    model = TrainedModel(
        panel=PanelModel(
            size_weights=(0.1, 1e-300, -3.5e300),
            size_sigma=1e-6,
            aspect_weights=(math.pi, -0.0, 2.0**-52),
            aspect_sigma=123456.789,
        ),
        composition=CompositionModel(
            width_weights=(0.30000000000000004, 1.0, -1.0, 0.0),
            width_sigma=0.1,
            position_weights=(
                (1.0, 2.0, 3.0, 4.0),
                (0.0, 0.0, 0.0, 0.0),
                (-1.0, -2.0, -3.0, -4.0),
            ),
        ),
    )
    assert loads_model(dumps_model(model)) == model


def test_file_round_trip(tmp_path):
    model = _model()
    path = tmp_path / "model.txt"
    save_model(model, str(path))
    assert load_model(str(path)) == model
    # Saving again produces the identical file.
    text = path.read_text(encoding="utf-8")
    save_model(model, str(path))
    assert path.read_text(encoding="utf-8") == text


def test_dump_starts_with_version_header():
    text = dumps_model(_model())
    assert text.splitlines()[0] == FORMAT_HEADER


def test_loads_rejects_missing_header():
    text = dumps_model(_model())
    body = "\n".join(text.splitlines()[1:])
    with pytest.raises(ParseError):
        loads_model(body)
    with pytest.raises(ParseError):
        loads_model("posterforge-model-version: 2\n" + body)
    with pytest.raises(ParseError):
        loads_model("")


def test_loads_rejects_unknown_key():
    text = dumps_model(_model()) + "mystery_key: 1.0\n"
    with pytest.raises(ValidationError):
        loads_model(text)


def test_loads_rejects_duplicate_key():
    text = dumps_model(_model())
    line = [ln for ln in text.splitlines() if ln.startswith("size_sigma:")][0]
    with pytest.raises(ValidationError):
        loads_model(text + line + "\n")


def test_loads_rejects_missing_key():
    text = dumps_model(_model())
    kept = [ln for ln in text.splitlines() if not ln.startswith("aspect_weights:")]
    with pytest.raises(ValidationError) as err:
        loads_model("\n".join(kept) + "\n")
    assert "aspect_weights" in str(err.value)


def test_loads_rejects_wrong_arity():
    text = dumps_model(_model()).replace(
        "size_sigma: ", "size_sigma: 1.0 ", 1
    )
    with pytest.raises(ValidationError):
        loads_model(text)


def test_loads_rejects_bad_float():
    text = dumps_model(_model())
    lines = text.splitlines()
    lines[1] = "size_weights: 0.1 oops 0.3"
    with pytest.raises(ParseError):
        loads_model("\n".join(lines) + "\n")


def test_loads_reports_source_name():
    with pytest.raises(ParseError) as err:
        loads_model("garbage", source="models/m1.txt")
    assert "models/m1.txt" in str(err.value)


def test_loads_ignores_blank_lines():
    text = dumps_model(_model())
    padded = text.replace("\n", "\n\n")
    assert loads_model(padded) == loads_model(text)
