"""Pre-configured pipelines.

Three presets ship with the library:

* ``default`` - clean, normalize, tokenize, sentences, POS, morphemes,
  stop words, lemmatize.
* ``neural``  - clean, normalize, BPE subword tokenization, embeddings
  lookup.
* ``sentiment`` - the default pipeline plus the sentiment analyser.

Every preset passes pipeline validation by construction; builders raise
:class:`~tajtext.resources.MissingResourceError` naming the missing file
when a required resource is absent.
"""

from __future__ import annotations

from pathlib import Path

from .analysis import EmbeddingsLookup
from .core import Pipeline
from .morphology import Lemmatizer, MorphMode, Stemmer, StemDepth
from .preprocess import CyrillicNormalizer, TextCleaner
from .resources import ResourceBundle
from .sentiment import SentimentAnalyzer
from .subword import SubwordTokenizer
from .tagging import PosTagger, StopWordsFilter
from .tokenize import MorphemeSegmenter, RegexTokenizer, Sentencizer

PRESET_NAMES = ("default", "neural", "sentiment")


def _default_components(bundle: ResourceBundle, preset: str) -> list:
    return [
        TextCleaner(),
        CyrillicNormalizer(bundle.require("normalization", preset)),
        RegexTokenizer(),
        Sentencizer(bundle.require("abbreviations", preset)),
        PosTagger(
            bundle.require("pos_lexicon", preset),
            bundle.require("suffix_heuristics", preset),
            bundle.require("affix_rules", preset),
            bundle.require("coarse_map", preset),
        ),
        MorphemeSegmenter(bundle.require("morpheme_rules", preset)),
        StopWordsFilter(bundle.require("stopwords", preset)),
        Lemmatizer(
            bundle.require("affix_rules", preset),
            bundle.require("lemmas", preset),
            bundle.require("exceptions", preset),
            mode=MorphMode.LEMMA,
        ),
    ]


def build_pipeline(preset: str, bundle: ResourceBundle | None = None,
                   resource_root: Path | None = None,
                   overrides: dict | None = None) -> Pipeline:
    """Construct one of the shipped presets (loading resources if needed)."""
    if bundle is None:
        bundle = ResourceBundle.load(resource_root, overrides)
    if preset == "default":
        components = _default_components(bundle, preset)
    elif preset == "neural":
        components = [
            TextCleaner(),
            CyrillicNormalizer(bundle.require("normalization", preset)),
            SubwordTokenizer(bundle.require("bpe_model", preset)),
            EmbeddingsLookup(bundle.require("embeddings", preset)),
        ]
    elif preset == "sentiment":
        components = _default_components(bundle, preset)
        components.append(
            SentimentAnalyzer(
                bundle.require("sentiment_lexicon", preset),
                bundle.require("negators", preset),
                bundle.require("intensifiers", preset),
            )
        )
    else:
        raise ValueError(f"unknown preset {preset!r}; expected one of {PRESET_NAMES}")
    pipeline = Pipeline(components)
    findings = pipeline.validate()
    if findings:  # presets are wired to validate; this guards data edits
        raise AssertionError(f"preset {preset!r} failed validation: {findings}")
    return pipeline


def build_stemming_pipeline(bundle: ResourceBundle | None = None,
                            depth: StemDepth = StemDepth.SAFE) -> Pipeline:
    """Minimal tokenizer + stemmer pipeline (not one of the named presets)."""
    if bundle is None:
        bundle = ResourceBundle.load()
    return Pipeline([
        TextCleaner(),
        CyrillicNormalizer(bundle.require("normalization")),
        RegexTokenizer(),
        Stemmer(bundle.require("affix_rules"), bundle.lemmas, depth),
    ])
