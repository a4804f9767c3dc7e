"""Lexicon-based sentiment scoring with windowed negation and intensifiers.

Negation flips polarity and damps the magnitude by 0.8 (the transform is
exactly b -> -0.8*b); intensifiers multiply the magnitude first, so
negation damps the intensified value. Negation never crosses a sentence
boundary. Tajik shows negative concord (ҳаргиз намеписандам is a single
negation), so at most one flip is applied per sentiment word; the compound
на...не pattern therefore also counts once.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import Component, Document

NEGATION_DAMPING = 0.8
DEFAULT_WINDOW = 3


class SentimentLexicon:
    """Case-folded word/lemma -> signed intensity in [-1, 1]."""

    def __init__(self, entries: dict[str, float]):
        self._entries = {}
        for word, intensity in entries.items():
            if not -1.0 <= intensity <= 1.0:
                raise ValueError(f"{word!r}: intensity {intensity} outside [-1, 1]")
            if intensity == 0.0:
                raise ValueError(f"{word!r}: zero-intensity entries are disallowed")
            self._entries[word.lower()] = intensity

    def get(self, word: str) -> float | None:
        return self._entries.get(word.lower())

    def __contains__(self, word: str) -> bool:
        return word.lower() in self._entries

    def __len__(self) -> int:
        return len(self._entries)


def _split_expressions(expressions) -> tuple[tuple[str, ...], ...]:
    out = []
    for expression in expressions:
        parts = tuple(expression.strip().lower().split())
        if parts:
            out.append(parts)
    # Longest expressions first so greedy matching prefers them.
    return tuple(sorted(set(out), key=lambda e: (-len(e), e)))


@dataclass(frozen=True)
class NegatorSet:
    """Single- and multi-word negator expressions, matched case-folded."""

    expressions: tuple[tuple[str, ...], ...] = ()

    @classmethod
    def from_expressions(cls, expressions) -> "NegatorSet":
        return cls(_split_expressions(expressions))


@dataclass(frozen=True)
class IntensifierMap:
    """Expression -> multiplicative factor, factors within [1.2, 1.8]."""

    factors: dict[tuple[str, ...], float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for expression, factor in self.factors.items():
            if not 1.2 <= factor <= 1.8:
                raise ValueError(f"{' '.join(expression)!r}: factor {factor} "
                                 "outside [1.2, 1.8]")

    @classmethod
    def from_items(cls, items) -> "IntensifierMap":
        return cls({tuple(expr.strip().lower().split()): float(factor)
                    for expr, factor in items})

    def ordered_expressions(self) -> tuple[tuple[str, ...], ...]:
        return tuple(sorted(self.factors, key=lambda e: (-len(e), e)))


@dataclass(frozen=True)
class Contribution:
    """How one token entered the score."""

    token_index: int
    base_intensity: float
    factor: float
    negated: bool
    value: float


@dataclass(frozen=True)
class SentimentResult:
    label: str  # positive | negative | neutral
    score: float
    contributions: tuple[Contribution, ...] = ()


def _match_expressions(folded: list[str], expressions) -> dict[int, tuple[int, ...]]:
    """Greedy longest-first matching of expressions over the token sequence.

    Returns {last token index of a match: covered indices}.
    """
    matches: dict[int, tuple[int, ...]] = {}
    i = 0
    while i < len(folded):
        for expression in expressions:
            n = len(expression)
            if tuple(folded[i:i + n]) == expression:
                matches[i + n - 1] = tuple(range(i, i + n))
                i += n - 1
                break
        i += 1
    return matches


def analyze_sentiment(
    doc: Document,
    lexicon: SentimentLexicon,
    negators: NegatorSet = NegatorSet(),
    intensifiers: IntensifierMap = IntensifierMap(),
    window: int = DEFAULT_WINDOW,
) -> SentimentResult:
    """Score a document from lexicon hits on surfaces or lemmas.

    For every sentiment-bearing token, the nearest intensifier ending
    within ``window`` tokens to the left scales the magnitude, then a
    negator in the same window (or a stripped negation prefix recorded by
    the lemmatizer) flips and damps it. The score is the sum of the
    reported contributions; the label follows the score's sign.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    folded = [t.text.lower() for t in doc.tokens]
    sentence_of = {}
    for si, span in enumerate(doc.sents):
        for ti in range(span.start_token, span.end_token):
            sentence_of[ti] = si

    negator_matches = _match_expressions(folded, negators.expressions)
    intens_expressions = intensifiers.ordered_expressions()
    intens_matches = _match_expressions(folded, intens_expressions)
    intens_factor = {}
    for last, covered in intens_matches.items():
        expression = tuple(folded[covered[0]:covered[-1] + 1])
        intens_factor[last] = intensifiers.factors[expression]
    consumed = {i for covered in negator_matches.values() for i in covered}
    consumed |= {i for covered in intens_matches.values() for i in covered}

    def same_sentence(i: int, j: int) -> bool:
        if not sentence_of:
            return True
        return sentence_of.get(i) == sentence_of.get(j)

    contributions = []
    for i, token in enumerate(doc.tokens):
        if i in consumed:
            continue
        intensity = lexicon.get(folded[i])
        if intensity is None and token.lemma:
            intensity = lexicon.get(token.lemma)
        if intensity is None:
            continue
        factor = 1.0
        for j in range(i - 1, max(i - 1 - window, -1), -1):
            if j in intens_factor and same_sentence(i, j):
                factor = intens_factor[j]
                break
        negated = token.metadata.get("negation_stripped") == "true"
        if not negated:
            for j in range(i - 1, max(i - 1 - window, -1), -1):
                if j in negator_matches and same_sentence(i, j):
                    negated = True
                    break
        value = intensity * factor
        if negated:
            value = -NEGATION_DAMPING * value
        contributions.append(Contribution(i, intensity, factor, negated, value))

    score = sum(c.value for c in contributions)
    if not contributions or score == 0:
        label = "neutral"
    elif score > 0:
        label = "positive"
    else:
        label = "negative"
    return SentimentResult(label, score, tuple(contributions))


class SentimentAnalyzer(Component):
    """Pipeline component storing a :class:`SentimentResult` on the doc.

    Inflected-form matching needs lemmas; the "sentiment" preset runs the
    lemmatizer upstream for that reason, but the component itself works on
    bare tokens too (surface matches only).
    """

    name = "sentiment"
    requires = frozenset({"tokens"})
    assigns = frozenset({"sentiment"})

    def __init__(self, lexicon: SentimentLexicon, negators: NegatorSet = NegatorSet(),
                 intensifiers: IntensifierMap = IntensifierMap(),
                 window: int = DEFAULT_WINDOW):
        self.lexicon = lexicon
        self.negators = negators
        self.intensifiers = intensifiers
        self.window = window

    def __call__(self, doc: Document) -> Document:
        result = analyze_sentiment(doc, self.lexicon, self.negators,
                                   self.intensifiers, self.window)
        doc.sentiment = result
        doc.metadata["sentiment_label"] = result.label
        doc.metadata["sentiment_score"] = f"{result.score:.6f}"
        return doc
