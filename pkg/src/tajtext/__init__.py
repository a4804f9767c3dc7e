"""tajtext: text processing for Cyrillic-script Tajik.

A dependency-validated component pipeline over a single annotated document
object, with data-driven normalization, tokenization, morphology, POS
tagging, sentiment analysis, feature extraction and evaluation metrics.
"""

from .analysis import (
    CategoryKeywords,
    EmbeddingTable,
    Vocabulary,
    classify_doc,
    classify_keywords,
    export_matrix,
    fit_count,
    fit_tfidf,
    load_embeddings,
    most_similar,
    transform_count,
)
from .core import (
    Component,
    ComponentDescriptor,
    ComponentError,
    Document,
    MisalignmentError,
    Pipeline,
    PipelineValidationError,
    Span,
    SpanOverlapError,
    TajTextError,
    Token,
    ValidationFinding,
    add_span_group,
    alignment_build,
    bio_to_spans,
    doc_from_json,
    doc_to_json,
    to_bio,
)
from .metrics import bleu, corpus_bleu, levenshtein, precision_recall_f1, wer
from .morphology import (
    AffixRule,
    Candidate,
    ExceptionDict,
    LemmaLexicon,
    MorphAnalysis,
    MorphMode,
    RankingWeights,
    RuleSet,
    StemDepth,
    analyze,
    hybrid_lemmatize,
    rank_candidates,
    stem,
)
from .preprocess import (
    CleanerConfig,
    NormalizationTable,
    ScriptReport,
    clean,
    detect_script,
    normalize,
)
from .presets import PRESET_NAMES, build_pipeline
from .resources import ResourceBundle, default_resource_root
from .sentiment import (
    IntensifierMap,
    NegatorSet,
    SentimentLexicon,
    SentimentResult,
    analyze_sentiment,
)
from .subword import BpeModel, bpe_encode, bpe_train, load_merges, save_merges
from .tagging import PosLexicon, StopWordList, SuffixHeuristic, flag_stopwords, tag
from .tokenize import (
    AbbreviationList,
    MorphemeRuleSet,
    TokenPattern,
    segment_morphemes,
    split_sentences,
    tokenize,
)

__version__ = "0.1.0"
