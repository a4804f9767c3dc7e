"""Loading of the tab-separated resource files backing every component.

All files are UTF-8 with '#'-prefixed comment lines. The package ships a
fixture-scale resource set under ``tajtext/data``; a different root can be
supplied explicitly, via config, or through the ``TAJTEXT_RESOURCES``
environment variable.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from importlib import resources as importlib_resources
from pathlib import Path

from .analysis import EmbeddingTable, load_embeddings
from .core import TajTextError
from .morphology import (
    AffixRule,
    ExceptionDict,
    LemmaLexicon,
    LexiconEntry,
    MorphMode,
    RuleSet,
)
from .preprocess import NormalizationTable
from .sentiment import IntensifierMap, NegatorSet, SentimentLexicon
from .subword import BpeModel, load_merges
from .tagging import CoarseMap, PosLexicon, StopWordList, SuffixHeuristic
from .tokenize import AbbreviationList, MorphemeRuleSet

ENV_RESOURCE_ROOT = "TAJTEXT_RESOURCES"

DEFAULT_FILES = {
    "normalization": "normalization.tsv",
    "affix_rules": "affix_rules.tsv",
    "lemmas": "lemmas.tsv",
    "exceptions": "exceptions.tsv",
    "pos_lexicon": "pos_lexicon.tsv",
    "tagset": "tagset.txt",
    "coarse_map": "coarse_map.tsv",
    "suffix_heuristics": "suffix_heuristics.tsv",
    "stopwords": "stopwords.txt",
    "abbreviations": "abbreviations.txt",
    "sentiment_lexicon": "sentiment_lexicon.tsv",
    "negators": "negators.txt",
    "intensifiers": "intensifiers.tsv",
    "morpheme_rules": "morpheme_rules.tsv",
    "bpe_merges": "bpe_merges.txt",
    "embeddings": "embeddings_fixture.txt",
}


class ResourceError(TajTextError):
    """Malformed resource file; the message carries file and line."""


class MissingResourceError(TajTextError):
    def __init__(self, name: str, preset: str | None = None):
        where = f" (needed by preset {preset!r})" if preset else ""
        super().__init__(f"resource {name!r} not available{where}")
        self.resource = name
        self.preset = preset


def packaged_data_root() -> Path:
    return Path(str(importlib_resources.files("tajtext").joinpath("data")))


def default_resource_root() -> Path:
    env = os.environ.get(ENV_RESOURCE_ROOT)
    return Path(env) if env else packaged_data_root()


def _rows(path, expected_fields: int):
    """Yield (lineno, fields) for data rows, validating the column count."""
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise ResourceError(f"cannot open resource {path}: {exc}") from exc
    with fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) != expected_fields:
                raise ResourceError(
                    f"{path}:{lineno}: expected {expected_fields} tab-separated "
                    f"fields, got {len(fields)}"
                )
            yield lineno, fields


def _lines(path):
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise ResourceError(f"cannot open resource {path}: {exc}") from exc
    with fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                yield line


def load_normalization_table(path) -> NormalizationTable:
    """Rows are "src<TAB>dst<TAB>kind" with kind in
    {grapheme, ocr, numeral, strip, quote, dash}; strip rows use '-' as dst."""
    grapheme: dict[str, str] = {}
    ocr: dict[str, str] = {}
    numeral: dict[str, str] = {}
    strip: set[str] = set()
    quotes: set[str] = set()
    dashes: set[str] = set()
    quote_target: str | None = None
    dash_target: str | None = None
    for lineno, (src, dst, kind) in _rows(path, 3):
        if kind == "grapheme":
            grapheme[src] = dst
        elif kind == "ocr":
            ocr[src] = dst
        elif kind == "numeral":
            numeral[src] = dst
        elif kind == "strip":
            strip.add(src)
        elif kind == "quote":
            quotes.add(src)
            if quote_target is not None and dst != quote_target:
                raise ResourceError(f"{path}:{lineno}: conflicting quote targets")
            quote_target = dst
        elif kind == "dash":
            dashes.add(src)
            if dash_target is not None and dst != dash_target:
                raise ResourceError(f"{path}:{lineno}: conflicting dash targets")
            dash_target = dst
        else:
            raise ResourceError(f"{path}:{lineno}: unknown kind {kind!r}")
    return NormalizationTable(
        grapheme_map=grapheme,
        ocr_map=ocr,
        numeral_map=numeral,
        strip_set=frozenset(strip),
        quote_chars=frozenset(quotes),
        dash_chars=frozenset(dashes),
        quote_target=quote_target if quote_target is not None else '"',
        dash_target=dash_target if dash_target is not None else "-",
    )


def load_affix_rules(path) -> RuleSet:
    """Rows: "affix<TAB>prefix|suffix<TAB>group<TAB>min_stem<TAB>modes<TAB>replacement"
    with '-' for an empty replacement and modes comma-separated."""
    rules = []
    for lineno, (affix, side, group, min_stem, modes, replacement) in _rows(path, 6):
        try:
            mode_set = frozenset(MorphMode(m.strip()) for m in modes.split(","))
        except ValueError as exc:
            raise ResourceError(f"{path}:{lineno}: {exc}") from None
        try:
            rules.append(
                AffixRule(
                    affix=affix,
                    side=side,
                    group=group,
                    min_stem_length=int(min_stem),
                    modes=mode_set,
                    replacement="" if replacement == "-" else replacement,
                )
            )
        except ValueError as exc:
            raise ResourceError(f"{path}:{lineno}: {exc}") from None
    try:
        return RuleSet(rules)
    except ValueError as exc:
        raise ResourceError(f"{path}: {exc}") from None


def load_lemma_lexicon(path) -> LemmaLexicon:
    """Rows: "lemma<TAB>pos[,pos...]<TAB>frequency"."""
    entries: dict[str, LexiconEntry] = {}
    for lineno, (lemma, pos, frequency) in _rows(path, 3):
        try:
            entries[lemma] = LexiconEntry(
                pos=frozenset(p.strip() for p in pos.split(",") if p.strip()),
                frequency=int(frequency),
            )
        except ValueError as exc:
            raise ResourceError(f"{path}:{lineno}: {exc}") from None
    return LemmaLexicon(entries)


def load_exceptions(path) -> ExceptionDict:
    """Rows: "surface<TAB>lemma<TAB>pos"."""
    entries = {}
    for _, (surface, lemma, pos) in _rows(path, 3):
        entries[surface] = (lemma, pos)
    return ExceptionDict(entries)


def load_tagset(path) -> frozenset[str]:
    return frozenset(_lines(path))


def load_pos_lexicon(path, tagset: frozenset[str] | None = None) -> PosLexicon:
    """Rows: "surface<TAB>tag[,tag...]"; first tag is the most frequent."""
    entries: dict[str, list[str]] = {}
    for lineno, (surface, tags) in _rows(path, 2):
        tag_list = [t.strip() for t in tags.split(",") if t.strip()]
        if not tag_list:
            raise ResourceError(f"{path}:{lineno}: no tags for {surface!r}")
        entries[surface] = tag_list
    try:
        return PosLexicon(entries, tagset)
    except ValueError as exc:
        raise ResourceError(f"{path}: {exc}") from None


def load_coarse_map(path) -> CoarseMap:
    """Rows: "fine_tag<TAB>coarse_tag"."""
    return CoarseMap({fine: coarse for _, (fine, coarse) in _rows(path, 2)})


def load_suffix_heuristics(path) -> SuffixHeuristic:
    """Rows: "suffix<TAB>tag"."""
    return SuffixHeuristic(tuple((s, t) for _, (s, t) in _rows(path, 2)))


def load_stopwords(path) -> StopWordList:
    return StopWordList.from_words(_lines(path))


def load_abbreviations(path) -> AbbreviationList:
    return AbbreviationList.from_words(_lines(path))


def load_sentiment_lexicon(path) -> SentimentLexicon:
    """Rows: "word<TAB>позитив|негатив<TAB>intensity" with an unsigned
    intensity; the sign comes from the polarity column."""
    entries: dict[str, float] = {}
    for lineno, (word, polarity, intensity) in _rows(path, 3):
        try:
            magnitude = float(intensity)
        except ValueError:
            raise ResourceError(f"{path}:{lineno}: bad intensity {intensity!r}") from None
        if magnitude < 0:
            raise ResourceError(f"{path}:{lineno}: intensity must be unsigned")
        if polarity == "позитив":
            entries[word] = magnitude
        elif polarity == "негатив":
            entries[word] = -magnitude
        else:
            raise ResourceError(f"{path}:{lineno}: polarity must be "
                                f"позитив|негатив, got {polarity!r}")
    try:
        return SentimentLexicon(entries)
    except ValueError as exc:
        raise ResourceError(f"{path}: {exc}") from None


def load_negators(path) -> NegatorSet:
    return NegatorSet.from_expressions(_lines(path))


def load_intensifiers(path) -> IntensifierMap:
    """Rows: "expression<TAB>factor"."""
    items = []
    for lineno, (expression, factor) in _rows(path, 2):
        try:
            items.append((expression, float(factor)))
        except ValueError:
            raise ResourceError(f"{path}:{lineno}: bad factor {factor!r}") from None
    try:
        return IntensifierMap.from_items(items)
    except ValueError as exc:
        raise ResourceError(f"{path}: {exc}") from None


def load_morpheme_rules(path, min_root_length: int = 2) -> MorphemeRuleSet:
    """Rows: "affix<TAB>prefix|suffix"."""
    prefixes = []
    suffixes = []
    for lineno, (affix, side) in _rows(path, 2):
        if side == "prefix":
            prefixes.append(affix)
        elif side == "suffix":
            suffixes.append(affix)
        else:
            raise ResourceError(f"{path}:{lineno}: side must be prefix|suffix")
    return MorphemeRuleSet(tuple(prefixes), tuple(suffixes), min_root_length)


@dataclass
class ResourceBundle:
    """Everything a preset may need, loaded eagerly from one root."""

    normalization: NormalizationTable | None = None
    affix_rules: RuleSet | None = None
    lemmas: LemmaLexicon | None = None
    exceptions: ExceptionDict | None = None
    pos_lexicon: PosLexicon | None = None
    coarse_map: CoarseMap | None = None
    suffix_heuristics: SuffixHeuristic | None = None
    stopwords: StopWordList | None = None
    abbreviations: AbbreviationList | None = None
    sentiment_lexicon: SentimentLexicon | None = None
    negators: NegatorSet | None = None
    intensifiers: IntensifierMap | None = None
    morpheme_rules: MorphemeRuleSet | None = None
    bpe_model: BpeModel | None = None
    embeddings: EmbeddingTable | None = None

    def require(self, name: str, preset: str | None = None):
        value = getattr(self, name)
        if value is None:
            raise MissingResourceError(name, preset)
        return value

    @classmethod
    def load(cls, root: Path | None = None,
             overrides: dict[str, str | Path] | None = None) -> "ResourceBundle":
        """Load all resources found under ``root`` (default: packaged data,
        or $TAJTEXT_RESOURCES). ``overrides`` maps resource names to
        explicit file paths."""
        root = Path(root) if root is not None else default_resource_root()
        overrides = overrides or {}

        def path_for(name: str) -> Path | None:
            if name in overrides:
                p = Path(overrides[name])
                if not p.is_file():
                    raise MissingResourceError(f"{name} ({p})")
                return p
            p = root / DEFAULT_FILES[name]
            return p if p.is_file() else None

        bundle = cls()
        loaders = {
            "normalization": ("normalization", load_normalization_table),
            "affix_rules": ("affix_rules", load_affix_rules),
            "lemmas": ("lemmas", load_lemma_lexicon),
            "exceptions": ("exceptions", load_exceptions),
            "coarse_map": ("coarse_map", load_coarse_map),
            "suffix_heuristics": ("suffix_heuristics", load_suffix_heuristics),
            "stopwords": ("stopwords", load_stopwords),
            "abbreviations": ("abbreviations", load_abbreviations),
            "sentiment_lexicon": ("sentiment_lexicon", load_sentiment_lexicon),
            "negators": ("negators", load_negators),
            "intensifiers": ("intensifiers", load_intensifiers),
            "morpheme_rules": ("morpheme_rules", load_morpheme_rules),
            "bpe_model": ("bpe_merges", load_merges),
            "embeddings": ("embeddings", load_embeddings),
        }
        for attr, (name, loader) in loaders.items():
            path = path_for(name)
            if path is not None:
                setattr(bundle, attr, loader(path))
        tagset_path = path_for("tagset")
        pos_path = path_for("pos_lexicon")
        if pos_path is not None:
            tagset = load_tagset(tagset_path) if tagset_path is not None else None
            bundle.pos_lexicon = load_pos_lexicon(pos_path, tagset)
        return bundle
