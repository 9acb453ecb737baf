"""ROUGE-N scoring: clipped n-gram overlap with corpus-level macro averages.

Scores are precision, recall and F1 over clipped n-gram match counts.
Tokenization for the metric is fixed: canonical Unicode composition,
lowercasing (a no-op for Indic scripts), punctuation replaced by
spaces, whitespace split.  No stemming, no stopword removal.
"""

import unicodedata
from collections import Counter
from dataclasses import dataclass

from . import segment
from ._kernels import KERNEL_BACKEND, clipped_ngram_stats
from .errors import EmptyCorpus, InvalidN

DEFAULT_ORDERS = (1, 2, 4)

__all__ = [
    "DEFAULT_ORDERS",
    "KERNEL_BACKEND",
    "RougeScore",
    "corpus_rouge",
    "ngrams",
    "overlap_stats",
    "rouge_n",
    "rouge_tokens",
]


@dataclass(frozen=True)
class RougeScore:
    n: int
    precision: float
    recall: float
    f1: float


def rouge_tokens(text: str) -> list[str]:
    """Tokenize ``text`` for metric computation."""
    text = unicodedata.normalize("NFC", text).lower()
    return segment.strip_punctuation(text).split()


def ngrams(tokens, n: int) -> Counter:
    """All contiguous n-token windows of ``tokens`` with multiplicity."""
    if n < 1:
        raise InvalidN(f"n-gram order must be >= 1, got {n}")
    tokens = list(tokens)
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def overlap_stats(cand_tokens, ref_tokens, n: int):
    """(clipped overlap, candidate window count, reference window count)."""
    if n < 1:
        raise InvalidN(f"n-gram order must be >= 1, got {n}")
    return clipped_ngram_stats(list(cand_tokens), list(ref_tokens), n)


def _score(overlap: int, cand_total: int, ref_total: int, n: int) -> RougeScore:
    precision = overlap / cand_total if cand_total else 0.0
    recall = overlap / ref_total if ref_total else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return RougeScore(n=n, precision=precision, recall=recall, f1=f1)


def rouge_n(candidate: str, reference: str, n: int) -> RougeScore:
    """ROUGE-N of ``candidate`` against ``reference``."""
    overlap, cand_total, ref_total = overlap_stats(
        rouge_tokens(candidate), rouge_tokens(reference), n
    )
    return _score(overlap, cand_total, ref_total, n)


def corpus_rouge(pairs, ns=DEFAULT_ORDERS) -> dict[int, RougeScore]:
    """Macro-averaged ROUGE-N over ``(candidate, reference)`` pairs.

    Precision, recall and F1 are each averaged arithmetically across
    records (per-record F1 first, then the mean — not F1 of the mean).
    """
    token_pairs = [(rouge_tokens(c), rouge_tokens(r)) for c, r in pairs]
    if not token_pairs:
        raise EmptyCorpus("corpus_rouge needs at least one pair")
    out = {}
    for n in ns:
        scores = [
            _score(*overlap_stats(c, r, n), n=n) for c, r in token_pairs
        ]
        count = len(scores)
        out[n] = RougeScore(
            n=n,
            precision=sum(s.precision for s in scores) / count,
            recall=sum(s.recall for s in scores) / count,
            f1=sum(s.f1 for s in scores) / count,
        )
    return out
