"""Word tokenization with exact offsets, sentence splitting and morpheme
segmentation.

Tokenizers and rule sets are immutable after construction; the operations
are pure and safe for concurrent use.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .core import Component, Document, Span, Token, add_span_group

# A word is one or more letter cores (letters plus trailing combining
# marks), optionally joined by internal hyphens/apostrophes. Combining
# marks are matched explicitly because Python's \w excludes category Mn.
_MARK = "̀-ͯ҃-҉֑-ֽؐ-ًؚ-ٰٟ"
_CORE = rf"(?:[^\W\d_][{_MARK}]*)+"
WORD_PATTERN = rf"{_CORE}(?:['’ʼ-]{_CORE})*"
NUMBER_PATTERN = r"\d+(?:[.,]\d+)*"
URL_PATTERN = r"(?:[a-zA-Z][a-zA-Z0-9+.-]*://|www\.)[^\s<>\"»«]+"
EMAIL_PATTERN = r"[\w.+-]+@[\w-]+(?:\.[\w-]+)+"
PUNCT_PATTERN = r"\S"

DEFAULT_KINDS: tuple[tuple[str, str], ...] = (
    ("url", URL_PATTERN),
    ("email", EMAIL_PATTERN),
    ("word", WORD_PATTERN),
    ("number", NUMBER_PATTERN),
    ("punct", PUNCT_PATTERN),
)


class TokenPattern:
    """Ordered (kind, regex) pairs; earlier kinds win on overlap.

    Anything not matched by a listed kind falls through to single-character
    punctuation, so every non-whitespace character lands in some token.
    """

    def __init__(self, kinds: tuple[tuple[str, str], ...] = DEFAULT_KINDS):
        self.kinds = kinds
        alternation = "|".join(f"(?P<{kind}>{pattern})" for kind, pattern in kinds)
        self._regex = re.compile(alternation, re.UNICODE)

    def finditer(self, text: str):
        return self._regex.finditer(text)


DEFAULT_TOKEN_PATTERN = TokenPattern()


def tokenize(text: str, patterns: TokenPattern = DEFAULT_TOKEN_PATTERN) -> list[Token]:
    """Split text into offset-faithful tokens.

    Tokens are ordered and non-overlapping; joining their texts with the
    skipped inter-token characters reconstructs the input exactly.
    """
    tokens = []
    for match in patterns.finditer(text):
        kind = match.lastgroup or "punct"
        tokens.append(
            Token(text=match.group(0), start=match.start(), end=match.end(),
                  metadata={"kind": kind})
        )
    return tokens


class RegexTokenizer(Component):
    """Pipeline component assigning word/number/punct tokens."""

    name = "tokenizer"
    assigns = frozenset({"tokens"})

    def __init__(self, patterns: TokenPattern = DEFAULT_TOKEN_PATTERN):
        self.patterns = patterns

    def __call__(self, doc: Document) -> Document:
        doc.tokens = tokenize(doc.text, self.patterns)
        return doc


# --- sentence splitting -----------------------------------------------------

TERMINALS = frozenset(".!?…")
OPENING_QUOTES = frozenset("«\"„“‹‘(")


@dataclass(frozen=True)
class AbbreviationList:
    """Lowercase abbreviations stored without the trailing dot."""

    entries: frozenset[str] = frozenset()

    def __contains__(self, word: str) -> bool:
        return word.lower().rstrip(".") in self.entries

    @classmethod
    def from_words(cls, words) -> "AbbreviationList":
        return cls(frozenset(w.strip().lower().rstrip(".") for w in words if w.strip()))


def split_sentences(doc: Document, abbrevs: AbbreviationList = AbbreviationList()) -> Document:
    """Assign the "sents" span group.

    A boundary is placed after terminal punctuation (. ! ? …) that is not
    preceded by a known abbreviation and is followed either by end of text
    or by whitespace plus an uppercase letter or opening quote. Every token
    belongs to exactly one sentence.
    """
    tokens = doc.tokens
    spans = []
    start = 0
    for i, token in enumerate(tokens):
        if token.text not in TERMINALS:
            continue
        if i > start and tokens[i - 1].text in abbrevs and token.text == ".":
            continue
        if i + 1 < len(tokens):
            nxt = tokens[i + 1]
            gap = doc.text[token.end:nxt.start]
            first = nxt.text[0]
            if not gap:
                continue
            if not (first.isupper() or first in OPENING_QUOTES):
                continue
        spans.append(Span(start, i + 1, "sents"))
        start = i + 1
    if start < len(tokens):
        spans.append(Span(start, len(tokens), "sents"))
    return add_span_group(doc, "sents", spans)


class Sentencizer(Component):
    """Pipeline component marking sentence spans from token boundaries."""

    name = "sentencizer"
    requires = frozenset({"tokens"})
    assigns = frozenset({"sents"})

    def __init__(self, abbrevs: AbbreviationList = AbbreviationList()):
        self.abbrevs = abbrevs

    def __call__(self, doc: Document) -> Document:
        return split_sentences(doc, self.abbrevs)


# --- morpheme segmentation --------------------------------------------------


@dataclass(frozen=True)
class MorphemeRuleSet:
    """Prefix/suffix inventories for recursive morpheme splitting."""

    prefixes: tuple[str, ...] = ()
    suffixes: tuple[str, ...] = ()
    min_root_length: int = 2

    def __post_init__(self) -> None:
        if self.min_root_length < 2:
            raise ValueError("min_root_length must be >= 2")
        if any(not a for a in self.prefixes + self.suffixes):
            raise ValueError("affixes must be nonempty")

    def sorted_prefixes(self) -> list[str]:
        return sorted(self.prefixes, key=len, reverse=True)

    def sorted_suffixes(self) -> list[str]:
        return sorted(self.suffixes, key=len, reverse=True)


def segment_morphemes(word: str, rules: MorphemeRuleSet) -> list[str]:
    """Recursively split a word into prefixes, root and suffixes.

    Strips the longest matching prefix, then the longest matching suffix,
    and repeats until nothing matches or the residue would shrink below
    ``min_root_length``. The pieces concatenate back to the input; suffixes
    are emitted innermost-first reading left to right.
    """
    if not word:
        raise ValueError("word must be nonempty")
    folded = word.lower()
    prefixes: list[str] = []
    suffixes: list[str] = []  # in strip order, outermost first
    lo, hi = 0, len(word)

    def residue_ok(cut: int) -> bool:
        return (hi - lo) - cut >= rules.min_root_length

    changed = True
    while changed:
        changed = False
        for prefix in rules.sorted_prefixes():
            if folded.startswith(prefix, lo, hi) and residue_ok(len(prefix)):
                prefixes.append(word[lo:lo + len(prefix)])
                lo += len(prefix)
                changed = True
                break
        for suffix in rules.sorted_suffixes():
            if folded.endswith(suffix, lo, hi) and residue_ok(len(suffix)):
                suffixes.append(word[hi - len(suffix):hi])
                hi -= len(suffix)
                changed = True
                break
    return prefixes + [word[lo:hi]] + suffixes[::-1]


class MorphemeSegmenter(Component):
    """Pipeline component attaching a morpheme list to each word token."""

    name = "morphemes"
    requires = frozenset({"tokens"})
    assigns = frozenset({"morphemes"})

    def __init__(self, rules: MorphemeRuleSet):
        self.rules = rules

    def __call__(self, doc: Document) -> Document:
        for token in doc.tokens:
            if token.text and token.text[0].isalpha():
                token.morphemes = segment_morphemes(token.text, self.rules)
            else:
                token.morphemes = [token.text]
        return doc
