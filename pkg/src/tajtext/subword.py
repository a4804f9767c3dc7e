"""Byte-pair-encoding subword segmentation: training, encoding, model IO.

Models are immutable after load; encoding is deterministic for a fixed
model, and the produced subwords always concatenate back to the input word
(end-of-word marker stripped).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .core import Component, Document, TajTextError, Token
from .tokenize import DEFAULT_TOKEN_PATTERN, TokenPattern, tokenize

END_OF_WORD = "</w>"


class UnknownSubwordError(TajTextError):
    """A produced subword is absent from the model's vocabulary."""


@dataclass(frozen=True)
class BpeModel:
    """Ordered merge list; earlier merges have higher priority.

    ``vocabulary``, when given, restricts the subwords :func:`bpe_encode`
    may produce (raw symbols, i.e. including the end-of-word marker).
    """

    merges: tuple[tuple[str, str], ...] = ()
    end_of_word_marker: str = END_OF_WORD
    vocabulary: frozenset[str] | None = None
    _priority: dict[tuple[str, str], int] = field(init=False, repr=False, compare=False,
                                                  default_factory=dict)

    def __post_init__(self) -> None:
        if len(set(self.merges)) != len(self.merges):
            raise ValueError("duplicate merge pairs")
        object.__setattr__(
            self, "_priority", {pair: i for i, pair in enumerate(self.merges)}
        )

    def priority(self, pair: tuple[str, str]) -> int | None:
        return self._priority.get(pair)


def _initial_symbols(word: str, marker: str) -> list[str]:
    symbols = list(word)
    symbols[-1] += marker
    return symbols


def bpe_encode(word: str, model: BpeModel) -> list[str]:
    """Segment one word into subwords by applying merges greedily.

    The word is split to characters with the end-of-word marker attached to
    the last one; at each step the applicable merge with the lowest index is
    applied everywhere. Returned subwords have the marker removed.
    """
    if not word:
        raise ValueError("word must be nonempty")
    marker = model.end_of_word_marker
    symbols = _initial_symbols(word, marker)
    while len(symbols) > 1:
        best_pair = None
        best_priority = None
        for pair in zip(symbols, symbols[1:]):
            priority = model.priority(pair)
            if priority is not None and (best_priority is None or priority < best_priority):
                best_pair, best_priority = pair, priority
        if best_pair is None:
            break
        merged = []
        i = 0
        while i < len(symbols):
            if i + 1 < len(symbols) and (symbols[i], symbols[i + 1]) == best_pair:
                merged.append(symbols[i] + symbols[i + 1])
                i += 2
            else:
                merged.append(symbols[i])
                i += 1
        symbols = merged
    if model.vocabulary is not None:
        for symbol in symbols:
            if symbol not in model.vocabulary:
                raise UnknownSubwordError(f"subword {symbol!r} not in vocabulary")
    out = []
    for symbol in symbols:
        if symbol.endswith(marker):
            symbol = symbol[: len(symbol) - len(marker)]
        if symbol:
            out.append(symbol)
    return out


def bpe_train(corpus: dict[str, int], num_merges: int,
              marker: str = END_OF_WORD) -> BpeModel:
    """Train a BPE model from word counts.

    Repeatedly merges the most frequent adjacent symbol pair; frequency
    ties break by lexicographic pair order, so training is deterministic.
    """
    if num_merges < 0:
        raise ValueError("num_merges must be >= 0")
    words = {word: (_initial_symbols(word, marker), count)
             for word, count in corpus.items() if word}
    merges: list[tuple[str, str]] = []
    for _ in range(num_merges):
        pair_counts: Counter = Counter()
        for symbols, count in words.values():
            for pair in zip(symbols, symbols[1:]):
                pair_counts[pair] += count
        if not pair_counts:
            break
        best = min(pair_counts.items(), key=lambda kv: (-kv[1], kv[0]))[0]
        merges.append(best)
        for word, (symbols, count) in words.items():
            merged = []
            i = 0
            while i < len(symbols):
                if i + 1 < len(symbols) and (symbols[i], symbols[i + 1]) == best:
                    merged.append(symbols[i] + symbols[i + 1])
                    i += 2
                else:
                    merged.append(symbols[i])
                    i += 1
            words[word] = (merged, count)
    return BpeModel(merges=tuple(merges), end_of_word_marker=marker)


def load_merges(path) -> BpeModel:
    """Read a merges file: one "left right" pair per line, priority = order.

    A leading '#'-prefixed line (version header or comment) is ignored.
    """
    merges = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            parts = line.split(" ")
            if len(parts) != 2:
                raise TajTextError(f"{path}:{lineno}: expected 'left right', got {line!r}")
            merges.append((parts[0], parts[1]))
    return BpeModel(merges=tuple(merges))


def save_merges(model: BpeModel, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("#version: tajtext fixture\n")
        for left, right in model.merges:
            fh.write(f"{left} {right}\n")


class SubwordTokenizer(Component):
    """Pipeline component producing offset-faithful subword tokens.

    Words are first located with the regular token pattern, then each word
    is split by BPE; since subwords are contiguous slices of the word their
    character offsets are exact. Non-word tokens pass through unchanged.
    """

    name = "subword_tokenizer"
    assigns = frozenset({"tokens"})

    def __init__(self, model: BpeModel, patterns: TokenPattern = DEFAULT_TOKEN_PATTERN):
        self.model = model
        self.patterns = patterns

    def __call__(self, doc: Document) -> Document:
        out: list[Token] = []
        for token in tokenize(doc.text, self.patterns):
            if token.metadata.get("kind") != "word":
                out.append(token)
                continue
            offset = token.start
            for i, piece in enumerate(bpe_encode(token.text, self.model)):
                out.append(
                    Token(text=piece, start=offset, end=offset + len(piece),
                          metadata={"kind": "subword", "word_continuation":
                                    "true" if i else "false"})
                )
                offset += len(piece)
        doc.tokens = out
        return doc
