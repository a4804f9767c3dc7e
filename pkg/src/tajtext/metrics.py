"""Sequence evaluation metrics: Levenshtein, WER, BLEU, precision/recall/F1."""

from __future__ import annotations

import math
from collections import Counter
from typing import Sequence

from .core import TajTextError


def levenshtein(a: Sequence, b: Sequence) -> int:
    """Minimal insert/delete/substitute count, unit costs.

    Works on strings (Unicode scalar values) and on token sequences alike.
    """
    if a == b:
        return 0
    n, m = len(a), len(b)
    if n > m:
        a, b, n, m = b, a, m, n
    if n == 0:
        return m
    row = list(range(1, n + 1))
    for i, cb in enumerate(b, 1):
        prev = i - 1
        cur = i
        for j, ca in enumerate(a):
            val = prev if ca == cb else prev + 1
            x = row[j] + 1
            if x < val:
                val = x
            x = cur + 1
            if x < val:
                val = x
            prev = row[j]
            row[j] = val
            cur = val
    return row[-1]


def wer(reference: Sequence[str], hypothesis: Sequence[str]) -> float:
    """Token-level edit distance divided by reference length."""
    if len(reference) == 0:
        raise ValueError("reference must be nonempty")
    return levenshtein(list(reference), list(hypothesis)) / len(reference)


def precision_recall_f1(
    gold: Sequence[str], pred: Sequence[str], positive_class: str
) -> tuple[float, float, float]:
    """Standard P/R/F1 with the usual 0/0 conventions (0 when undefined)."""
    if len(gold) != len(pred):
        raise TajTextError(f"length mismatch: {len(gold)} gold vs {len(pred)} predicted")
    tp = sum(1 for g, p in zip(gold, pred) if g == positive_class and p == positive_class)
    pred_pos = sum(1 for p in pred if p == positive_class)
    gold_pos = sum(1 for g in gold if g == positive_class)
    precision = tp / pred_pos if pred_pos else 0.0
    recall = tp / gold_pos if gold_pos else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return precision, recall, f1


def _ngram_counts(tokens: Sequence[str], n: int) -> Counter:
    return Counter(tuple(tokens[i:i + n]) for i in range(len(tokens) - n + 1))


def corpus_bleu(
    pairs: Sequence[tuple[Sequence[Sequence[str]], Sequence[str]]],
    max_n: int = 4,
    smoothing: bool = False,
) -> float:
    """Corpus BLEU over (references, hypothesis) pairs.

    Clipped n-gram counts and lengths are aggregated over the corpus; the
    brevity penalty uses the closest reference length per segment. With no
    smoothing any zero n-gram precision yields 0; with ``smoothing`` add-one
    smoothing is applied to every precision.
    """
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    matched = [0] * max_n
    total = [0] * max_n
    hyp_len = 0
    ref_len = 0
    for references, hypothesis in pairs:
        if not references:
            raise ValueError("each pair needs at least one reference")
        hypothesis = list(hypothesis)
        references = [list(r) for r in references]
        hyp_len += len(hypothesis)
        ref_len += min((abs(len(r) - len(hypothesis)), len(r)) for r in references)[1]
        for n in range(1, max_n + 1):
            hyp_counts = _ngram_counts(hypothesis, n)
            if not hyp_counts:
                continue
            max_ref = Counter()
            for reference in references:
                for gram, count in _ngram_counts(reference, n).items():
                    if count > max_ref[gram]:
                        max_ref[gram] = count
            matched[n - 1] += sum(min(count, max_ref[gram])
                                  for gram, count in hyp_counts.items())
            total[n - 1] += sum(hyp_counts.values())
    if hyp_len == 0:
        return 0.0
    log_sum = 0.0
    for n in range(max_n):
        m, t = matched[n], total[n]
        if smoothing:
            m, t = m + 1, t + 1
        if m == 0 or t == 0:
            return 0.0
        log_sum += math.log(m / t)
    geo_mean = math.exp(log_sum / max_n)
    bp = 1.0 if hyp_len >= ref_len else math.exp(1 - ref_len / hyp_len)
    return bp * geo_mean


def bleu(
    references: Sequence[Sequence[str]],
    hypothesis: Sequence[str],
    max_n: int = 4,
    smoothing: bool = False,
) -> float:
    """Sentence BLEU: geometric mean of clipped n-gram precisions times the
    brevity penalty. An empty hypothesis scores 0."""
    if not references:
        raise ValueError("references must be nonempty")
    return corpus_bleu([(references, hypothesis)], max_n=max_n, smoothing=smoothing)
