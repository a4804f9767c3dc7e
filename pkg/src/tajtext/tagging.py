"""Dictionary-plus-heuristics POS tagging and stop-word flagging.

The fine 28-label tagset lives in data; a fine->coarse mapping makes both
granularities available. Tagging is a per-token (unigram) decision so
results never depend on neighboring tokens.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Component, Document
from .morphology import RuleSet

FALLBACK_TAG = "NOUN"  # open-class majority for unknown words
PUNCT_TAG = "PUNCT"
NUM_TAG = "NUM"

# Fine tags assigned structurally (not via lexicon).
FINE_PUNCT = "аломати китобатӣ"
FINE_NUM = "рақам"
FINE_UNKNOWN = "номаълум"

# How many stripping rounds the dictionary-retry may chain. Tajik stacks
# up to three clitics on a noun (plural + possessive + case).
_MAX_STRIPS = 4


class PosLexicon:
    """Case-folded surface -> ordered POS readings (first = most frequent)."""

    def __init__(self, entries: dict[str, list[str]], tagset: frozenset[str] | None = None):
        self._entries = {}
        for surface, tags in entries.items():
            if not tags:
                raise ValueError(f"entry {surface!r} has no tags")
            if tagset is not None:
                unknown = set(tags) - tagset
                if unknown:
                    raise ValueError(f"entry {surface!r} uses undeclared tags {unknown}")
            self._entries[surface.lower()] = tuple(tags)
        self.tagset = tagset

    def first_tag(self, word: str) -> str | None:
        tags = self._entries.get(word.lower())
        return tags[0] if tags else None

    def __contains__(self, word: str) -> bool:
        return word.lower() in self._entries

    def __len__(self) -> int:
        return len(self._entries)


@dataclass(frozen=True)
class SuffixHeuristic:
    """Ordered (suffix, tag) fallback rules, longest suffix first."""

    rules: tuple[tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        ordered = tuple(sorted(self.rules, key=lambda r: -len(r[0])))
        object.__setattr__(self, "rules", ordered)

    def tag_for(self, word: str) -> str | None:
        folded = word.lower()
        for suffix, tag in self.rules:
            if folded.endswith(suffix) and len(folded) > len(suffix):
                return tag
        return None


class CoarseMap:
    """Fine tag -> coarse tag mapping; unmapped tags pass through."""

    def __init__(self, mapping: dict[str, str] | None = None):
        self._mapping = dict(mapping or {})

    def coarse(self, fine_tag: str) -> str:
        return self._mapping.get(fine_tag, fine_tag)


def _is_punct_token(text: str) -> bool:
    return bool(text) and not any(c.isalnum() for c in text)


def _is_numeric_token(text: str) -> bool:
    return bool(text) and text[0].isdigit()


def _dictionary_tag(word: str, lexicon: PosLexicon, morph_rules: RuleSet | None) -> str | None:
    """Lexicon lookup with iterative suffix-strip retries, breadth-first so
    fewer strips win and, per level, longer suffixes are tried first."""
    folded = word.lower()
    tag = lexicon.first_tag(folded)
    if tag is not None:
        return tag
    if morph_rules is None:
        return None
    suffix_rules = morph_rules.suffix_rules()
    frontier = [folded]
    seen = {folded}
    for _ in range(_MAX_STRIPS):
        nxt_frontier = []
        for current in frontier:
            for rule in suffix_rules:
                if not rule.matches(current, None):
                    continue
                produced = rule.apply(current)
                if produced in seen:
                    continue
                seen.add(produced)
                tag = lexicon.first_tag(produced)
                if tag is not None:
                    return tag
                nxt_frontier.append(produced)
        frontier = nxt_frontier
    return None


def tag(
    doc: Document,
    lexicon: PosLexicon,
    heuristics: SuffixHeuristic = SuffixHeuristic(),
    morph_rules: RuleSet | None = None,
    coarse_map: CoarseMap | None = None,
) -> Document:
    """Assign a POS tag to every token.

    Per token: punctuation -> PUNCT, numerics -> NUM, then the lexicon,
    then suffix-strip retries against the lexicon, then suffix heuristics,
    then the NOUN fallback. When a coarse map is supplied ``token.pos``
    carries the coarse tag and the fine tag is kept in
    ``metadata["pos_fine"]``.
    """
    for token in doc.tokens:
        if _is_punct_token(token.text):
            token.pos = PUNCT_TAG
            token.metadata["pos_fine"] = FINE_PUNCT
            continue
        if _is_numeric_token(token.text):
            token.pos = NUM_TAG
            token.metadata["pos_fine"] = FINE_NUM
            continue
        fine = _dictionary_tag(token.text, lexicon, morph_rules)
        if fine is None:
            fine = heuristics.tag_for(token.text)
        if fine is None:
            token.pos = FALLBACK_TAG
            token.metadata["pos_fine"] = FINE_UNKNOWN
            continue
        token.metadata["pos_fine"] = fine
        token.pos = coarse_map.coarse(fine) if coarse_map is not None else fine
    return doc


@dataclass(frozen=True)
class StopWordList:
    """Case-folded stop words; the default resource covers the full
    paradigm of будан."""

    words: frozenset[str] = frozenset()

    def __contains__(self, word: str) -> bool:
        return word.lower() in self.words

    def __len__(self) -> int:
        return len(self.words)

    @classmethod
    def from_words(cls, words) -> "StopWordList":
        return cls(frozenset(w.strip().lower() for w in words if w.strip()))


def flag_stopwords(doc: Document, stops: StopWordList) -> Document:
    """Set ``is_stop`` on matching tokens; never removes a token, so all
    downstream offsets stay valid."""
    for token in doc.tokens:
        token.is_stop = token.text.lower() in stops
    return doc


class PosTagger(Component):
    """Pipeline component assigning ``token.pos``."""

    name = "pos_tagger"
    requires = frozenset({"tokens"})
    assigns = frozenset({"pos"})

    def __init__(self, lexicon: PosLexicon, heuristics: SuffixHeuristic = SuffixHeuristic(),
                 morph_rules: RuleSet | None = None, coarse_map: CoarseMap | None = None):
        self.lexicon = lexicon
        self.heuristics = heuristics
        self.morph_rules = morph_rules
        self.coarse_map = coarse_map

    def __call__(self, doc: Document) -> Document:
        return tag(doc, self.lexicon, self.heuristics, self.morph_rules, self.coarse_map)


class StopWordsFilter(Component):
    """Pipeline component flagging stop words (flags only, no deletion)."""

    name = "stopwords"
    requires = frozenset({"tokens"})
    assigns = frozenset({"is_stop"})

    def __init__(self, stops: StopWordList):
        self.stops = stops

    def __call__(self, doc: Document) -> Document:
        return flag_stopwords(doc, self.stops)
