"""Cleaning, Cyrillic orthography normalization and script detection.

All operations here are pure functions over immutable configuration and are
safe for unrestricted concurrent use.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field

from .core import Component, ComponentError, Document

_URL_RE = re.compile(r"(?:[a-zA-Z][a-zA-Z0-9+.-]*://|www\.)[^\s<>\"»«]+")
_EMAIL_RE = re.compile(r"[\w.+-]+@[\w-]+(?:\.[\w-]+)+")
_HTML_RE = re.compile(r"<[^<>]*>")
_MENTION_RE = re.compile(r"@\w+")
_HASHTAG_RE = re.compile(r"#\w+")


@dataclass(frozen=True)
class CleanerConfig:
    """Which noise categories :func:`clean` removes. All-false is identity."""

    remove_urls: bool = True
    remove_emails: bool = True
    remove_html: bool = True
    remove_mentions: bool = True
    remove_hashtags: bool = True
    collapse_whitespace: bool = True


def clean(text: str, config: CleanerConfig = CleanerConfig()) -> str:
    """Strip URLs, emails, HTML tags, @mentions and #hashtags per config.

    With ``collapse_whitespace`` runs of whitespace become single spaces and
    the result is trimmed.
    """
    if config.remove_urls:
        text = _URL_RE.sub(" ", text)
    if config.remove_emails:
        text = _EMAIL_RE.sub(" ", text)
    if config.remove_html:
        text = _HTML_RE.sub(" ", text)
    if config.remove_mentions:
        text = _MENTION_RE.sub(" ", text)
    if config.remove_hashtags:
        text = _HASHTAG_RE.sub(" ", text)
    if config.collapse_whitespace:
        text = " ".join(text.split())
    return text


# Non-standard graphemes from legacy PDFs, scans and wrong keyboard layouts,
# with uppercase counterparts.
DEFAULT_GRAPHEME_MAP = {
    "љ": "ҷ", "Љ": "Ҷ",
    "ї": "ӣ", "Ї": "Ӣ",
    "њ": "ҳ", "Њ": "Ҳ",
    "ќ": "қ", "Ќ": "Қ",
    "ў": "ӯ", "Ў": "Ӯ",
    "ѓ": "ғ", "Ѓ": "Ғ",
}

# OCR misrecognitions of Cyrillic glyphs as Latin letters; applied only
# inside Cyrillic-majority words so genuine Latin text is left alone.
# The "b" row maps Latin U+0062 (the OCR shape), not Cyrillic soft sign.
DEFAULT_OCR_MAP = {"R": "қ", "X": "ҷ", "b": "ӣ"}

DEFAULT_NUMERAL_MAP = {}
for i in range(10):
    DEFAULT_NUMERAL_MAP[chr(0x0660 + i)] = str(i)  # Eastern Arabic
    DEFAULT_NUMERAL_MAP[chr(0x06F0 + i)] = str(i)  # Extended (Persian)

# Arabic harakat.
DEFAULT_STRIP_SET = frozenset(chr(c) for c in range(0x064B, 0x0653))

# Double-quote variants only: single quotes double as apostrophes inside
# loanwords, so rewriting them would split tokens.
DEFAULT_QUOTE_CHARS = frozenset("«»„“”‟‹›＂")
DEFAULT_DASH_CHARS = frozenset("–—―‒−‐‑")


@dataclass(frozen=True)
class NormalizationTable:
    """Character maps driving :func:`normalize`; idempotent by construction.

    Loadable from a tab-separated resource file via
    :func:`tajtext.resources.load_normalization_table`.
    """

    grapheme_map: dict[str, str] = field(default_factory=lambda: dict(DEFAULT_GRAPHEME_MAP))
    ocr_map: dict[str, str] = field(default_factory=lambda: dict(DEFAULT_OCR_MAP))
    numeral_map: dict[str, str] = field(default_factory=lambda: dict(DEFAULT_NUMERAL_MAP))
    strip_set: frozenset[str] = DEFAULT_STRIP_SET
    quote_chars: frozenset[str] = DEFAULT_QUOTE_CHARS
    dash_chars: frozenset[str] = DEFAULT_DASH_CHARS
    quote_target: str = '"'
    dash_target: str = "-"

    def __post_init__(self) -> None:
        for name, mapping in (("grapheme", self.grapheme_map),
                              ("ocr", self.ocr_map),
                              ("numeral", self.numeral_map)):
            stale = set(mapping.values()) & set(mapping.keys())
            if stale:
                raise ValueError(f"{name} map is not idempotent; loops on {stale}")
        if self.quote_target in self.quote_chars or self.dash_target in self.dash_chars:
            raise ValueError("quote/dash target must not be a mapped source character")


_WORDISH_RE = re.compile(r"[^\W\d_]+", re.UNICODE)


def _is_cyrillic(ch: str) -> bool:
    return "Ѐ" <= ch <= "ԯ" or "ᲀ" <= ch <= "᲏" or "Ꙁ" <= ch <= "ꚟ"


def _apply_ocr(text: str, ocr_map: dict[str, str]) -> str:
    """Apply the OCR map inside letter runs whose letters are >50% Cyrillic."""

    def fix(match: re.Match) -> str:
        run = match.group(0)
        letters = [c for c in run if c.isalpha()]
        cyr = sum(1 for c in letters if _is_cyrillic(c))
        if letters and cyr * 2 > len(letters):
            return "".join(ocr_map.get(c, c) for c in run)
        return run

    return _WORDISH_RE.sub(fix, text)


def normalize(text: str, table: NormalizationTable = NormalizationTable()) -> str:
    """Normalize Cyrillic orthography.

    Composes the input to NFC so precomposed and decomposed forms of ӣ/ӯ
    compare equal, applies the grapheme map everywhere, the OCR map inside
    Cyrillic-majority words, converts Eastern Arabic numerals to ASCII,
    removes Arabic diacritics, and unifies quotes and dashes. Applying the
    function twice equals applying it once.
    """
    text = unicodedata.normalize("NFC", text)
    if table.grapheme_map:
        text = text.translate(str.maketrans(table.grapheme_map))
    if table.ocr_map:
        text = _apply_ocr(text, table.ocr_map)
    if table.numeral_map:
        text = text.translate(str.maketrans(table.numeral_map))
    if table.strip_set:
        text = "".join(c for c in text if c not in table.strip_set)
    if table.quote_chars:
        text = "".join(table.quote_target if c in table.quote_chars else c for c in text)
    if table.dash_chars:
        text = "".join(table.dash_target if c in table.dash_chars else c for c in text)
    # Re-compose: removing a mark may have exposed a composable pair.
    return unicodedata.normalize("NFC", text)


@dataclass(frozen=True)
class ScriptReport:
    """Per-script letter fractions plus an overall verdict."""

    cyrillic_fraction: float
    latin_fraction: float
    arabic_fraction: float
    verdict: str  # cyrillic | latin | arabic | mixed | unknown


def _is_latin(ch: str) -> bool:
    return ("a" <= ch <= "z" or "A" <= ch <= "Z"
            or "À" <= ch <= "ɏ" or "Ḁ" <= ch <= "ỿ")


def _is_arabic(ch: str) -> bool:
    return ("؀" <= ch <= "ۿ" or "ݐ" <= ch <= "ݿ"
            or "ﭐ" <= ch <= "﷿" or "ﹰ" <= ch <= "﻿")


def detect_script(text: str, mixed_threshold: float = 0.10) -> ScriptReport:
    """Classify the dominant script over letter characters.

    The verdict is the majority script unless the runner-up fraction
    reaches ``mixed_threshold``, in which case it is "mixed"; it is
    "unknown" iff the text contains no letters.
    """
    if not 0 < mixed_threshold < 0.5:
        raise ValueError("mixed_threshold must be in (0, 0.5)")
    letters = [c for c in text if c.isalpha()]
    if not letters:
        return ScriptReport(0.0, 0.0, 0.0, "unknown")
    n = len(letters)
    counts = {
        "cyrillic": sum(1 for c in letters if _is_cyrillic(c)),
        "latin": sum(1 for c in letters if _is_latin(c)),
        "arabic": sum(1 for c in letters if _is_arabic(c)),
    }
    fractions = {k: v / n for k, v in counts.items()}
    ranked = sorted(fractions.items(), key=lambda kv: kv[1], reverse=True)
    if ranked[0][1] == 0 or ranked[1][1] >= mixed_threshold:
        # No recognized family dominates (e.g. Greek-only text) or the
        # runner-up is substantial: report mixed content.
        verdict = "mixed"
    else:
        verdict = ranked[0][0]
    return ScriptReport(
        fractions["cyrillic"], fractions["latin"], fractions["arabic"], verdict
    )


class TextCleaner(Component):
    """Pipeline component: rewrites ``doc.text`` with :func:`clean`."""

    name = "cleaner"
    assigns = frozenset({"text"})

    def __init__(self, config: CleanerConfig = CleanerConfig()):
        self.config = config

    def __call__(self, doc: Document) -> Document:
        if doc.tokens:
            raise ComponentError(self.name, ValueError("cannot rewrite text after tokenization"))
        doc.text = clean(doc.text, self.config)
        return doc


class CyrillicNormalizer(Component):
    """Pipeline component: rewrites ``doc.text`` with :func:`normalize`."""

    name = "normalizer"
    assigns = frozenset({"text"})

    def __init__(self, table: NormalizationTable | None = None):
        self.table = table if table is not None else NormalizationTable()

    def __call__(self, doc: Document) -> Document:
        if doc.tokens:
            raise ComponentError(self.name, ValueError("cannot rewrite text after tokenization"))
        doc.text = normalize(doc.text, self.table)
        doc.metadata["normalized"] = "true"
        return doc
