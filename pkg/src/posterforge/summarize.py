"""Extractive summarization: graph-based sentence ranking per section.

Sentences are nodes of a weighted undirected graph; edge weights are the
overlap similarity |shared distinct tokens| / (log|a| + log|b|). Scores come
from the damped fixed point

    S(i) = (1 - d) + d * sum_j w[j][i] / rowsum(j) * S(j)

and the top sentences are re-emitted in original document order, so a summary
is always a subsequence of its section.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import numpy as np

from .content import Section

DAMPING = 0.85
TOLERANCE = 1e-6
MAX_ITERATIONS = 100

_TOKEN_SPLIT = re.compile(r"[^0-9a-zA-Z]+")


def tokenize(sentence: str, stopwords: frozenset[str] = frozenset()) -> list[str]:
    """Lowercase word tokens: split on non-alphanumerics, drop tokens < 2 chars."""
    tokens = [t for t in _TOKEN_SPLIT.split(sentence.lower()) if len(t) >= 2]
    if stopwords:
        tokens = [t for t in tokens if t not in stopwords]
    return tokens


def sentence_similarity(a: list[str], b: list[str]) -> float:
    """Overlap similarity between two token lists.

    Returns 0 when either sentence has fewer than two tokens (degenerate
    denominator) or when no token is shared.
    """
    if len(a) < 2 or len(b) < 2:
        return 0.0
    shared = len(set(a) & set(b))
    if shared == 0:
        return 0.0
    return shared / (math.log(len(a)) + math.log(len(b)))


@dataclass(frozen=True)
class SentenceGraph:
    """Symmetric nonnegative similarity matrix with zero diagonal."""

    weights: np.ndarray

    def __post_init__(self):
        w = self.weights
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ValueError("weights must be a square matrix")
        if np.any(w < 0):
            raise ValueError("weights must be nonnegative")
        if np.any(np.diag(w) != 0):
            raise ValueError("diagonal must be zero")
        if not np.array_equal(w, w.T):
            raise ValueError("weights must be symmetric")

    @property
    def n(self) -> int:
        return self.weights.shape[0]


def build_sentence_graph(token_lists: list[list[str]]) -> SentenceGraph:
    n = len(token_lists)
    weights = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            sim = sentence_similarity(token_lists[i], token_lists[j])
            weights[i, j] = weights[j, i] = sim
    return SentenceGraph(weights)


def rank_sentences(
    graph: SentenceGraph,
    damping: float = DAMPING,
    tol: float = TOLERANCE,
    max_iter: int = MAX_ITERATIONS,
) -> np.ndarray:
    """Iterate the damped fixed point until max |delta| < tol or max_iter.

    Isolated sentences (zero row sum) receive the score (1 - damping).
    """
    if not 0 < damping < 1:
        raise ValueError("damping must be in (0, 1)")
    if tol <= 0:
        raise ValueError("tol must be > 0")
    w = graph.weights
    n = graph.n
    row_sums = w.sum(axis=1)
    safe = np.where(row_sums > 0, row_sums, 1.0)
    norm = w / safe[:, None]  # row-stochastic except all-zero rows stay zero
    scores = np.ones(n)
    for _ in range(max_iter):
        updated = (1.0 - damping) + damping * (norm.T @ scores)
        delta = float(np.max(np.abs(updated - scores))) if n else 0.0
        scores = updated
        if delta < tol:
            break
    return scores


def summary_size(ratio: float, n_sentences: int) -> int:
    """Number of sentences kept: max(1, ceil(ratio * n))."""
    return max(1, math.ceil(ratio * n_sentences))


def extract_summary(
    section: Section,
    *,
    stopwords: frozenset[str] = frozenset(),
    damping: float = DAMPING,
    tol: float = TOLERANCE,
    max_iter: int = MAX_ITERATIONS,
) -> list[str]:
    """Select the top-ranked sentences of a section, in original order.

    Ties in score are broken toward the earlier sentence so repeated runs
    produce identical summaries.
    """
    sentences = section.sentences
    if not sentences:
        raise ValueError("section has no sentences")
    n = len(sentences)
    keep = summary_size(section.extraction_ratio, n)
    if keep >= n:
        return list(sentences)
    graph = build_sentence_graph([tokenize(s, stopwords) for s in sentences])
    scores = rank_sentences(graph, damping, tol, max_iter)
    ranked = sorted(range(n), key=lambda i: (-scores[i], i))[:keep]
    return [sentences[i] for i in sorted(ranked)]
