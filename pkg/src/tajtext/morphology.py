"""Morphological analysis: the unified three-mode engine, the classic
hybrid dictionary+affix lemmatizer, and safe/deep stemming.

Tajik nominal inflection stacks clitics (китоб+ҳо+ямон+ро), so analysis is
iterative affix stripping over data-driven rules, gated by a lemma lexicon
and preempted by an exception dictionary for suppletive forms. Rule sets
and lexicons are immutable after load and safely shareable.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace

from .core import Component, Document

# Past-tense verb stems end in one of these; stripped stems ending so are
# candidates for infinitive reconstruction (+ан: хонд -> хондан). Present
# stems reconstruct with +дан / +идан (хон -> хондан, фаҳм -> фаҳмидан).
_PAST_STEM_FINALS = ("д", "т")
_INFINITIVE_SUFFIXES = ("дан", "идан")

NEGATION_GROUP = "negation"


class MorphMode(enum.Enum):
    """Analysis depth of the unified engine.

    Every rule available in ``lemma`` mode is also available in
    ``controlled`` and ``deep`` (enforced by :class:`RuleSet`), and each
    deeper mode continues stripping from the previous mode's stem, so the
    applied-rule sets of the three modes are nested by construction.
    """

    LEMMA = "lemma"
    CONTROLLED = "controlled"
    DEEP = "deep"


class StemDepth(enum.Enum):
    SAFE = "safe"
    DEEP = "deep"


@dataclass(frozen=True)
class AffixRule:
    """One prefix/suffix stripping rule.

    ``replacement`` is appended (suffix side) or prepended (prefix side) to
    the stripped stem; usually empty. ``allowed_pos`` restricts the rule to
    tokens with a matching POS hint; with no hint the rule applies freely.
    """

    affix: str
    side: str  # "prefix" | "suffix"
    group: str
    min_stem_length: int = 2
    allowed_pos: frozenset[str] | None = None
    modes: frozenset[MorphMode] = frozenset(MorphMode)
    replacement: str = ""

    def __post_init__(self) -> None:
        if not self.affix:
            raise ValueError("affix must be nonempty")
        if self.side not in ("prefix", "suffix"):
            raise ValueError(f"side must be prefix|suffix, got {self.side!r}")
        if self.min_stem_length < 2:
            raise ValueError("min_stem_length must be >= 2")
        if not self.modes:
            raise ValueError("rule must list at least one mode")

    def matches(self, word: str, pos_hint: str | None) -> bool:
        if len(word) - len(self.affix) < self.min_stem_length:
            return False
        if self.allowed_pos is not None and pos_hint is not None \
                and pos_hint not in self.allowed_pos:
            return False
        if self.side == "suffix":
            return word.endswith(self.affix) and len(word) > len(self.affix)
        return word.startswith(self.affix) and len(word) > len(self.affix)

    def apply(self, word: str) -> str:
        if self.side == "suffix":
            return word[: len(word) - len(self.affix)] + self.replacement
        return self.replacement + word[len(self.affix):]


class RuleSet:
    """Affix rules ordered longest-first within each side.

    Validates mode monotonicity: a rule usable in a shallow mode must also
    be usable in every deeper mode.
    """

    def __init__(self, rules: list[AffixRule] | tuple[AffixRule, ...]):
        for rule in rules:
            if MorphMode.LEMMA in rule.modes and (
                MorphMode.CONTROLLED not in rule.modes or MorphMode.DEEP not in rule.modes
            ):
                raise ValueError(f"rule {rule.affix!r}: lemma-mode rules must also "
                                 "allow controlled and deep")
            if MorphMode.CONTROLLED in rule.modes and MorphMode.DEEP not in rule.modes:
                raise ValueError(f"rule {rule.affix!r}: controlled-mode rules must "
                                 "also allow deep")
        # Longest affix first within each side; file order breaks ties.
        self.rules: tuple[AffixRule, ...] = tuple(
            sorted(rules, key=lambda r: (-len(r.affix), 0 if r.side == "suffix" else 1))
        )
        self._pools: dict[MorphMode, tuple[tuple[AffixRule, ...], tuple[AffixRule, ...]]] = {}
        for mode in MorphMode:
            selected = [r for r in self.rules if mode in r.modes]
            self._pools[mode] = (
                tuple(r for r in selected if r.side == "prefix"),
                tuple(r for r in selected if r.side == "suffix"),
            )

    def for_mode(self, mode: MorphMode) -> tuple[tuple[AffixRule, ...], tuple[AffixRule, ...]]:
        """(prefix rules, suffix rules) available in ``mode``."""
        return self._pools[mode]

    def stemming_pool(self, depth: StemDepth) -> tuple[tuple[AffixRule, ...], tuple[AffixRule, ...]]:
        """Rule pools used by :func:`stem`.

        Safe stemming strips inflectional suffixes only (the ones available
        at controlled depth); deep stemming adds prefixes and derivational
        suffixes (everything available at deep depth).
        """
        if depth is StemDepth.SAFE:
            return ((), self._pools[MorphMode.CONTROLLED][1])
        return self._pools[MorphMode.DEEP]

    def suffix_rules(self) -> tuple[AffixRule, ...]:
        return tuple(r for r in self.rules if r.side == "suffix")

    def __len__(self) -> int:
        return len(self.rules)


@dataclass(frozen=True)
class LexiconEntry:
    pos: frozenset[str]
    frequency: int = 0


class LemmaLexicon:
    """Known lemmas with POS sets and corpus frequencies (case-folded keys)."""

    def __init__(self, entries: dict[str, LexiconEntry] | None = None):
        self._entries = {k.lower(): v for k, v in (entries or {}).items()}
        if any(e.frequency < 0 for e in self._entries.values()):
            raise ValueError("frequencies must be >= 0")

    def __contains__(self, word: str) -> bool:
        return word.lower() in self._entries

    def get(self, word: str) -> LexiconEntry | None:
        return self._entries.get(word.lower())

    def __len__(self) -> int:
        return len(self._entries)

    def items(self):
        return self._entries.items()


class ExceptionDict:
    """Exact-match surface -> (lemma, pos) exceptions: suppletive verb
    stems, irregular plurals, pronoun enclitics."""

    def __init__(self, entries: dict[str, tuple[str, str]] | None = None):
        self._entries = {k.lower(): v for k, v in (entries or {}).items()}

    def get(self, word: str) -> tuple[str, str] | None:
        return self._entries.get(word.lower())

    def __contains__(self, word: str) -> bool:
        return word.lower() in self._entries

    def __len__(self) -> int:
        return len(self._entries)


@dataclass
class Candidate:
    """One stem produced by affix stripping, with its ranking score."""

    stem: str
    applied_rules: tuple[AffixRule, ...] = ()
    score: float = 0.0


@dataclass(frozen=True)
class RankingWeights:
    """Weights of the multi-factor candidate ranking."""

    dictionary: float = 10.0
    pos_match: float = 3.0
    log_frequency: float = 1.0
    rule_count: float = 0.5


@dataclass(frozen=True)
class MorphAnalysis:
    """Result of :func:`analyze`.

    ``result`` is the lemma or stem (after any infinitive reconstruction);
    ``stem`` is the raw residue before reconstruction, which is what the
    mode-monotonicity guarantee is stated over.
    """

    result: str
    stem: str
    applied_rules: tuple[AffixRule, ...]
    source: str  # "exception" | "lexicon" | "rules" | "unchanged"
    negation_stripped: bool = False

    @property
    def lemma(self) -> str:
        return self.result


def _lookup_hit(stem: str, lexicon: LemmaLexicon, exceptions: ExceptionDict,
                reconstruct: bool) -> str | None:
    """Dictionary confirmation for a (possibly stripped) stem.

    Checks the exception dictionary, then the lexicon, then - for stripped
    stems only - verb infinitive reconstruction, dictionary-gated so only
    known infinitives are produced.
    """
    exc = exceptions.get(stem)
    if exc is not None:
        return exc[0]
    if stem in lexicon:
        return stem
    if reconstruct:
        variants = []
        if stem.endswith(_PAST_STEM_FINALS):
            variants.append(stem + "ан")
        variants.extend(stem + suffix for suffix in _INFINITIVE_SUFFIXES)
        for variant in variants:
            entry = lexicon.get(variant)
            if entry is not None and (not entry.pos or "VERB" in entry.pos):
                return variant
    return None


def _first_matching_rule(
    stem: str,
    pools: tuple[tuple[AffixRule, ...], tuple[AffixRule, ...]],
    pos_hint: str | None,
) -> AffixRule | None:
    """Next rule to apply: longest matching prefix, else longest matching
    suffix. Prefixes go first so enclitic-final negated verbs (namely
    на+ме+stem+ending) surface their stems before person endings erode
    them; this mirrors morpheme segmentation order."""
    prefix_pool, suffix_pool = pools
    for rule in prefix_pool:
        if rule.matches(stem, pos_hint):
            return rule
    for rule in suffix_pool:
        if rule.matches(stem, pos_hint):
            return rule
    return None


def _strip_stage(
    stem: str,
    applied: tuple[AffixRule, ...],
    pools: tuple[tuple[AffixRule, ...], tuple[AffixRule, ...]],
    lexicon: LemmaLexicon,
    exceptions: ExceptionDict,
    pos_hint: str | None,
    check_hits: bool,
    seen: set[str],
) -> tuple[str, tuple[AffixRule, ...], str | None]:
    """Strip iteratively until a dictionary hit (if checking) or no rule
    applies. Returns (residue, applied rules, hit or None)."""
    while True:
        if check_hits:
            hit = _lookup_hit(stem, lexicon, exceptions, reconstruct=bool(applied))
            if hit is not None:
                return stem, applied, hit
        rule = _first_matching_rule(stem, pools, pos_hint)
        if rule is None:
            return stem, applied, None
        nxt = rule.apply(stem)
        if nxt in seen:  # replacement rules could cycle
            return stem, applied, None
        seen.add(nxt)
        stem = nxt
        applied = applied + (rule,)


def analyze(
    word: str,
    mode: MorphMode,
    rules: RuleSet,
    lexicon: LemmaLexicon,
    exceptions: ExceptionDict,
    pos_hint: str | None = None,
) -> MorphAnalysis:
    """Unified morphology engine.

    Exceptions win outright, then a plain dictionary lookup, then iterative
    affix stripping. The three modes are layered: ``lemma`` strips
    conservative rules and stops at the first dictionary-confirmed form
    (applying infinitive reconstruction to stripped past/present verb
    stems); ``controlled`` continues from the lemma-stage stem with its
    broader rule set, still dictionary-gated; ``deep`` keeps stripping from
    the controlled-stage stem until no rule applies, ignoring the lexicon.
    In lemma and controlled modes a word that never meets the dictionary is
    returned unchanged; deep mode returns the stripped residue.
    """
    if not word:
        raise ValueError("word must be nonempty")
    folded = word.lower()

    exc = exceptions.get(folded)
    if exc is not None:
        return MorphAnalysis(exc[0], folded, (), "exception")
    if folded in lexicon:
        return MorphAnalysis(folded, folded, (), "lexicon")

    seen = {folded}
    stem_, applied, hit = _strip_stage(
        folded, (), rules.for_mode(MorphMode.LEMMA), lexicon, exceptions,
        pos_hint, check_hits=True, seen=seen,
    )
    if mode in (MorphMode.CONTROLLED, MorphMode.DEEP):
        stem_, applied, hit = _strip_stage(
            stem_, applied, rules.for_mode(MorphMode.CONTROLLED), lexicon,
            exceptions, pos_hint, check_hits=True, seen=seen,
        )
    if mode is MorphMode.DEEP:
        stem_, applied, _ = _strip_stage(
            stem_, applied, rules.for_mode(MorphMode.DEEP), lexicon,
            exceptions, pos_hint, check_hits=False, seen=seen,
        )
        negated = any(r.group == NEGATION_GROUP for r in applied)
        return MorphAnalysis(stem_, stem_, applied, "rules", negated)

    negated = any(r.group == NEGATION_GROUP for r in applied)
    if hit is not None:
        return MorphAnalysis(hit, stem_, applied, "rules", negated)
    return MorphAnalysis(folded, stem_, applied, "unchanged", negated)


def stem(word: str, depth: StemDepth, rules: RuleSet,
         lexicon: LemmaLexicon | None = None) -> str:
    """Reduce a word to its stem; output is case-folded.

    Safe depth strips only inflectional suffixes; deep depth additionally
    strips prefixes (including negation на-) and derivational suffixes.
    When a lexicon is supplied, stripping stops as soon as the residue is a
    known lemma. Idempotent at both depths.
    """
    if not word:
        raise ValueError("word must be nonempty")
    pool = rules.stemming_pool(depth)
    residue = word.lower()
    seen = {residue}
    while True:
        if lexicon is not None and residue in lexicon:
            return residue
        rule = _first_matching_rule(residue, pool, None)
        if rule is None:
            return residue
        nxt = rule.apply(residue)
        if nxt in seen:
            return residue
        seen.add(nxt)
        residue = nxt


def generate_candidates(word: str, rules: RuleSet,
                        pos_hint: str | None = None) -> list[Candidate]:
    """All stems reachable from ``word`` by stripping affix rules.

    Breadth-first, so each stem is recorded with a minimal applied-rule
    path; deterministic via the rule ordering. The word itself is not a
    candidate.
    """
    folded = word.lower()
    pool = rules.rules
    out: list[Candidate] = []
    seen = {folded}
    frontier = [(folded, ())]
    while frontier:
        nxt_frontier = []
        for current, applied in frontier:
            for rule in pool:
                if not rule.matches(current, pos_hint):
                    continue
                produced = rule.apply(current)
                if produced in seen:
                    continue
                seen.add(produced)
                candidate = Candidate(produced, applied + (rule,))
                out.append(candidate)
                nxt_frontier.append((produced, candidate.applied_rules))
        frontier = nxt_frontier
    return out


def rank_candidates(
    candidates: list[Candidate],
    pos_hint: str | None,
    lexicon: LemmaLexicon,
    weights: RankingWeights = RankingWeights(),
) -> list[Candidate]:
    """Order candidates by the multi-factor score, best first.

    score = w1*[in lexicon] + w2*[POS hint matches the entry]
          + w3*ln(1+frequency) - w4*(rules applied).
    Ties break toward the longer stem, then lexicographically.
    """
    if not candidates:
        raise ValueError("candidates must be nonempty")
    scored = []
    for candidate in candidates:
        entry = lexicon.get(candidate.stem)
        score = -weights.rule_count * len(candidate.applied_rules)
        if entry is not None:
            score += weights.dictionary
            score += weights.log_frequency * math.log1p(entry.frequency)
            if pos_hint is not None and pos_hint in entry.pos:
                score += weights.pos_match
        scored.append(replace(candidate, score=score))
    scored.sort(key=lambda c: (-c.score, -len(c.stem), c.stem))
    return scored


def hybrid_lemmatize(
    word: str,
    pos_hint: str | None,
    rules: RuleSet,
    lexicon: LemmaLexicon,
    weights: RankingWeights = RankingWeights(),
) -> str:
    """Classic dictionary-first lemmatizer with ranked affix stripping.

    A dictionary hit returns the word itself (it is a lemma); otherwise the
    best-ranked stripping candidate is returned, and a word with no
    in-lexicon candidate comes back unchanged.
    """
    if not word:
        raise ValueError("word must be nonempty")
    folded = word.lower()
    if folded in lexicon:
        return folded
    candidates = generate_candidates(folded, rules, pos_hint)
    if not candidates or not any(c.stem in lexicon for c in candidates):
        return folded
    return rank_candidates(candidates, pos_hint, lexicon, weights)[0].stem


class Lemmatizer(Component):
    """Pipeline component writing ``token.lemma`` via the unified engine.

    Marks tokens whose analysis stripped the negation prefix with
    ``metadata["negation_stripped"] = "true"`` so the sentiment analyser
    can apply morphological negation.
    """

    name = "lemmatizer"
    requires = frozenset({"tokens"})
    assigns = frozenset({"lemma"})

    def __init__(self, rules: RuleSet, lexicon: LemmaLexicon,
                 exceptions: ExceptionDict, mode: MorphMode = MorphMode.LEMMA):
        self.rules = rules
        self.lexicon = lexicon
        self.exceptions = exceptions
        self.mode = mode

    def __call__(self, doc: Document) -> Document:
        for token in doc.tokens:
            analysis = analyze(token.text, self.mode, self.rules, self.lexicon,
                               self.exceptions, pos_hint=token.pos)
            token.lemma = analysis.result
            if analysis.negation_stripped:
                token.metadata["negation_stripped"] = "true"
        return doc


class Stemmer(Component):
    """Pipeline component writing ``token.stem``."""

    name = "stemmer"
    requires = frozenset({"tokens"})
    assigns = frozenset({"stem"})

    def __init__(self, rules: RuleSet, lexicon: LemmaLexicon | None = None,
                 depth: StemDepth = StemDepth.SAFE):
        self.rules = rules
        self.lexicon = lexicon
        self.depth = depth

    def __call__(self, doc: Document) -> Document:
        for token in doc.tokens:
            token.stem = stem(token.text, self.depth, self.rules, self.lexicon)
        return doc
