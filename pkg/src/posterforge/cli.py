"""Command line interface: train, generate, eval, inspect.

Exit codes: 0 success, 1 input error (bad files, bad flags, failed
validation), 2 internal error. Timings and warnings go to stderr so stdout
and written artifacts stay deterministic.
"""

from __future__ import annotations

import argparse
import os
import sys
from time import perf_counter

from . import __version__
from .config import resolve_config
from .content import load_document
from .corpus import document_panels, load_corpus_dir, load_split
from .errors import PosterforgeError
from .evaluation import (
    evaluate,
    format_report,
    write_metrics_csv,
    write_predictions_csv,
)
from .layout import dump_layout
from .model_io import load_model, save_model
from .pipeline import generate_poster, train_model
from .render import render_beamerposter, render_svg
from .summarize import summary_size


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors; we reserve 2 for internal bugs."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="posterforge", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    train = sub.add_parser("train", help="fit models from an annotated corpus")
    train.add_argument("--corpus", required=True, help="directory of annotated documents")
    train.add_argument("--out", required=True, help="model file to write")
    train.add_argument("--config", help="JSON config file")

    gen = sub.add_parser("generate", help="generate a poster for one document")
    gen.add_argument("--doc", required=True, help="input document JSON")
    gen.add_argument("--model", required=True, help="trained model file")
    gen.add_argument("--out", required=True, help="output directory")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--config", help="JSON config file")

    ev = sub.add_parser("eval", help="score the model against a ridge baseline")
    ev.add_argument("--corpus", required=True, help="directory of annotated documents")
    ev.add_argument("--split", required=True, help="train/test split JSON")
    ev.add_argument("--out", required=True, help="output directory")
    ev.add_argument("--seed", type=int, default=0)
    ev.add_argument("--config", help="JSON config file")

    ins = sub.add_parser("inspect", help="print a parsed model or document")
    ins.add_argument("--model", help="trained model file")
    ins.add_argument("--doc", help="input document JSON")
    ins.add_argument("--config", help="JSON config file")
    return parser


def cmd_train(args) -> int:
    config = resolve_config(args.config, dict(os.environ))
    docs = _load_corpus(args.corpus, config)
    model, diag = train_model(docs, stopwords=frozenset(config.stopwords))
    save_model(model, args.out)
    print(f"model written to {args.out}")
    print(f"panel rows: {diag.n_panel_rows}  size sigma: {diag.size_sigma:.6g}  "
          f"aspect sigma: {diag.aspect_sigma:.6g}")
    print(f"width rows: {diag.n_size_rows}  width sigma: {diag.width_sigma:.6g}")
    print(f"position rows: {diag.n_position_rows}  "
          f"log-likelihood: {diag.position_log_likelihood:.6g}  "
          f"iterations: {diag.position_iterations}")
    if diag.position_warning:
        print(f"warning: {diag.position_warning}", file=sys.stderr)
    return 0


def cmd_generate(args) -> int:
    config = resolve_config(args.config, dict(os.environ))
    with open(args.doc, "rb") as fh:
        doc = load_document(fh.read(), default_extraction_ratio=config.extraction_ratio)
    model = load_model(args.model)

    total0 = perf_counter()
    result = generate_poster(model, doc, config=config, seed=args.seed)

    os.makedirs(args.out, exist_ok=True)
    t0 = perf_counter()
    svg_path = os.path.join(args.out, "poster.svg")
    tex_path = os.path.join(args.out, "poster.tex")
    layout_path = os.path.join(args.out, "layout.txt")
    with open(svg_path, "wb") as fh:
        fh.write(
            render_svg(
                result.poster,
                char_width=config.char_width,
                char_height=config.char_height,
                padding=config.panel_padding,
            )
        )
    with open(tex_path, "w", encoding="utf-8") as fh:
        fh.write(render_beamerposter(result.poster))
    with open(layout_path, "w", encoding="utf-8") as fh:
        fh.write(dump_layout(result.tree, result.loss))
    render_seconds = perf_counter() - t0
    total_seconds = perf_counter() - total0

    for warning in result.warnings:
        print(f"warning: {warning}", file=sys.stderr)
    for stage, seconds in result.timings + (("render", render_seconds),):
        print(f"{stage}: {seconds:.3f}s", file=sys.stderr)
    print(f"total: {total_seconds:.3f}s", file=sys.stderr)
    print(svg_path)
    print(tex_path)
    print(layout_path)
    return 0


def cmd_eval(args) -> int:
    config = resolve_config(args.config, dict(os.environ))
    docs = _load_corpus(args.corpus, config)
    train_docs, test_docs = load_split(args.split, docs)
    report = evaluate(
        train_docs,
        test_docs,
        ridge=config.baseline_ridge,
        seed=args.seed,
        stopwords=frozenset(config.stopwords),
    )

    os.makedirs(args.out, exist_ok=True)
    write_predictions_csv(os.path.join(args.out, "predictions_model.csv"), report.model_rows)
    write_predictions_csv(
        os.path.join(args.out, "predictions_baseline.csv"), report.baseline_rows
    )
    write_metrics_csv(os.path.join(args.out, "metrics.csv"), report)
    with open(os.path.join(args.out, "report.txt"), "w", encoding="utf-8") as fh:
        fh.write(format_report(report))

    from .figures import save_mse_bars, save_prediction_scatter

    save_prediction_scatter(report, os.path.join(args.out, "eval_predictions.png"))
    save_mse_bars(report, os.path.join(args.out, "eval_mse.png"))

    print(format_report(report), end="")
    return 0


def cmd_inspect(args) -> int:
    if not args.model and not args.doc:
        raise PosterforgeError("inspect needs --model and/or --doc")
    if args.model:
        model = load_model(args.model)
        print(f"model file: {args.model}")
        print(f"size weights: {model.panel.size_weights}")
        print(f"size sigma: {model.panel.size_sigma!r}")
        print(f"aspect weights: {model.panel.aspect_weights}")
        print(f"aspect sigma: {model.panel.aspect_sigma!r}")
        print(f"width weights: {model.composition.width_weights}")
        print(f"width sigma: {model.composition.width_sigma!r}")
        for label, row in zip(("left", "center", "right"), model.composition.position_weights):
            print(f"position weights [{label}]: {row}")
    if args.doc:
        config = resolve_config(args.config, dict(os.environ))
        with open(args.doc, "rb") as fh:
            doc = load_document(
                fh.read(), default_extraction_ratio=config.extraction_ratio
            )
        panels = document_panels(doc, stopwords=frozenset(config.stopwords))
        print(f"document: {doc.title}")
        print(f"page aspect: {doc.page_aspect!r}")
        print(f"sections: {len(doc.sections)}")
        for panel, section in zip(panels, doc.sections):
            kept = summary_size(section.extraction_ratio, len(section.sentences)) \
                if section.sentences else 0
            print(
                f"  [{panel.section_index}] {section.title}: "
                f"{len(section.sentences)} sentences, {kept} kept, "
                f"{len(section.elements)} elements, "
                f"text_ratio={panel.text_ratio:.4f}, "
                f"graphics_ratio={panel.graphics_ratio:.4f}"
            )
    return 0


_COMMANDS = {
    "train": cmd_train,
    "generate": cmd_generate,
    "eval": cmd_eval,
    "inspect": cmd_inspect,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except PosterforgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # pragma: no cover - internal bug path
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def _load_corpus(path, config):
    return load_corpus_dir(path, default_extraction_ratio=config.extraction_ratio)


if __name__ == "__main__":
    sys.exit(main())
