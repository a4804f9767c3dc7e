"""Document model, pipeline machinery, span alignment and BIO markup.

A :class:`Document` is the single value threaded through every processing
component. Components declare the annotations they require and assign;
:class:`Pipeline` validates those declarations before running. A validated
pipeline is immutable and may be shared across threads; each document is
owned by one execution at a time.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

# Annotation names are free-form strings; these are the conventional ones
# produced by the shipped components. "text" is implicitly available to the
# first component of every pipeline.
KNOWN_ANNOTATIONS = frozenset(
    {"text", "tokens", "sents", "pos", "lemma", "stem", "morphemes", "is_stop", "sentiment"}
)

SENTS_LABEL = "sents"


class TajTextError(Exception):
    """Base class for all library errors."""


class PipelineValidationError(TajTextError):
    """Raised when a pipeline with unmet dependencies is run."""

    def __init__(self, findings: list["ValidationFinding"]):
        self.findings = findings
        detail = "; ".join(str(f) for f in findings)
        super().__init__(f"pipeline dependencies not met: {detail}")


class ComponentError(TajTextError):
    """Wraps an error raised inside a component, naming the component."""

    def __init__(self, component: str, cause: BaseException):
        self.component = component
        super().__init__(f"component {component!r} failed: {cause}")


class SpanIndexError(TajTextError):
    """A span references token indices outside the document."""


class MisalignmentError(TajTextError):
    """An entity boundary falls inside a token (strict alignment mode)."""


class SpanOverlapError(TajTextError):
    """Two spans in one group share a token."""


@dataclass
class Token:
    """One textual unit with exact character offsets into ``doc.text``.

    Offsets are Unicode scalar-value indices (Python string indices), not
    bytes. ``text`` always equals ``doc.text[start:end]``.
    """

    text: str
    start: int
    end: int
    lemma: str | None = None
    pos: str | None = None
    stem: str | None = None
    morphemes: list[str] | None = None
    is_stop: bool = False
    metadata: dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not (0 <= self.start < self.end):
            raise ValueError(f"invalid token offsets [{self.start}, {self.end})")


@dataclass(frozen=True)
class Span:
    """A labeled, contiguous run of tokens; ``end_token`` is exclusive."""

    start_token: int
    end_token: int
    label: str

    def __post_init__(self) -> None:
        if not (0 <= self.start_token < self.end_token):
            raise ValueError(f"invalid span [{self.start_token}, {self.end_token})")

    def char_range(self, doc: "Document") -> tuple[int, int]:
        """Character offsets of this span within ``doc.text``."""
        return doc.tokens[self.start_token].start, doc.tokens[self.end_token - 1].end

    def text(self, doc: "Document") -> str:
        cs, ce = self.char_range(doc)
        return doc.text[cs:ce]


@dataclass
class Document:
    """Container for the source text and all accumulated annotations.

    ``raw_text`` is the original input and is never mutated by components;
    preprocessing rewrites ``text`` only. Token offsets refer to ``text``.
    """

    text: str
    raw_text: str | None = None
    tokens: list[Token] = field(default_factory=list)
    span_groups: dict[str, list[Span]] = field(default_factory=dict)
    annotations_present: set[str] = field(default_factory=set)
    metadata: dict[str, str] = field(default_factory=dict)
    sentiment: "object | None" = None

    def __post_init__(self) -> None:
        if self.raw_text is None:
            self.raw_text = self.text
        self.annotations_present.add("text")

    @property
    def sents(self) -> list[Span]:
        return self.span_groups.get(SENTS_LABEL, [])

    def sentence_index(self, token_index: int) -> int | None:
        """Index of the sentence span containing the token, if sentences exist."""
        for i, span in enumerate(self.sents):
            if span.start_token <= token_index < span.end_token:
                return i
        return None

    def __iter__(self) -> Iterator[Token]:
        return iter(self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)


def add_span_group(doc: Document, label: str, spans: Iterable[Span]) -> Document:
    """Attach ``spans`` under ``label``, replacing any prior group.

    Raises :class:`SpanIndexError` if a span references token indices
    outside the document.
    """
    span_list = list(spans)
    n = len(doc.tokens)
    for span in span_list:
        if span.end_token > n:
            raise SpanIndexError(
                f"span [{span.start_token}, {span.end_token}) exceeds token count {n}"
            )
    doc.span_groups[label] = span_list
    doc.annotations_present.add(label)
    return doc


def alignment_build(
    doc: Document,
    entities: Iterable[tuple[int, int, str]],
    mode: str = "strict",
) -> list[Span]:
    """Map character-offset entities to token spans.

    In ``strict`` mode (default) each entity must start and end exactly on
    token boundaries; violations raise :class:`MisalignmentError` naming the
    straddled token. In ``expand`` mode the span is widened to the enclosing
    token boundaries. Silent expansion corrupts training data, hence the
    strict default.
    """
    if mode not in ("strict", "expand"):
        raise ValueError(f"unknown alignment mode {mode!r}")
    starts = {t.start: i for i, t in enumerate(doc.tokens)}
    ends = {t.end: i for i, t in enumerate(doc.tokens)}
    spans: list[Span] = []
    for char_start, char_end, label in entities:
        if not (0 <= char_start < char_end <= len(doc.text)):
            raise ValueError(
                f"entity [{char_start}, {char_end}) outside text of length {len(doc.text)}"
            )
        if mode == "strict":
            if char_start not in starts:
                raise MisalignmentError(
                    f"entity [{char_start}, {char_end}, {label!r}) starts inside "
                    f"token {_token_at(doc, char_start)!r}"
                )
            if char_end not in ends:
                raise MisalignmentError(
                    f"entity [{char_start}, {char_end}, {label!r}) ends inside "
                    f"token {_token_at(doc, char_end - 1)!r}"
                )
            spans.append(Span(starts[char_start], ends[char_end] + 1, label))
        else:
            covered = [
                i for i, t in enumerate(doc.tokens) if t.end > char_start and t.start < char_end
            ]
            if not covered:
                raise MisalignmentError(
                    f"entity [{char_start}, {char_end}, {label!r}) covers no token"
                )
            spans.append(Span(covered[0], covered[-1] + 1, label))
    return spans


def _token_at(doc: Document, offset: int) -> str:
    for t in doc.tokens:
        if t.start <= offset < t.end:
            return t.text
    return "<gap>"


def to_bio(doc: Document, group_label: str) -> list[str]:
    """Per-token BIO tags for one span group; length equals token count."""
    if group_label not in doc.span_groups:
        raise KeyError(f"no span group {group_label!r}")
    tags = ["O"] * len(doc.tokens)
    for span in sorted(doc.span_groups[group_label], key=lambda s: s.start_token):
        for i in range(span.start_token, span.end_token):
            if tags[i] != "O":
                raise SpanOverlapError(f"token {i} covered by two spans in {group_label!r}")
            tags[i] = f"B-{span.label}" if i == span.start_token else f"I-{span.label}"
    return tags


def bio_to_spans(tags: Iterable[str]) -> list[Span]:
    """Parse a BIO sequence back into spans (inverse of :func:`to_bio`)."""
    spans: list[Span] = []
    start: int | None = None
    label = ""
    n = 0
    for i, tag in enumerate(tags):
        n = i + 1
        if tag == "O":
            if start is not None:
                spans.append(Span(start, i, label))
                start = None
            continue
        prefix, _, tag_label = tag.partition("-")
        if prefix == "B" or start is None or tag_label != label:
            if start is not None:
                spans.append(Span(start, i, label))
            start = i
            label = tag_label
    if start is not None:
        spans.append(Span(start, n, label))
    return spans


@dataclass(frozen=True)
class ComponentDescriptor:
    """Name plus the annotation sets used for dependency validation."""

    name: str
    requires: frozenset[str] = frozenset()
    assigns: frozenset[str] = frozenset()


class Component:
    """Base class for pipeline components.

    Subclasses set ``name``, ``requires`` and ``assigns`` and implement
    :meth:`__call__`, which takes and returns the (mutated) document.
    """

    name: str = "component"
    requires: frozenset[str] = frozenset()
    assigns: frozenset[str] = frozenset()

    def __call__(self, doc: Document) -> Document:  # pragma: no cover - abstract
        raise NotImplementedError

    @property
    def descriptor(self) -> ComponentDescriptor:
        return ComponentDescriptor(self.name, frozenset(self.requires), frozenset(self.assigns))


class FunctionComponent(Component):
    """Adapter turning a plain ``doc -> doc`` function into a component."""

    def __init__(
        self,
        name: str,
        func: Callable[[Document], Document],
        requires: Iterable[str] = (),
        assigns: Iterable[str] = (),
    ):
        self.name = name
        self._func = func
        self.requires = frozenset(requires)
        self.assigns = frozenset(assigns)

    def __call__(self, doc: Document) -> Document:
        return self._func(doc)


@dataclass(frozen=True)
class ValidationFinding:
    """One unmet dependency: which component misses which annotation."""

    component: str
    missing: str

    def __str__(self) -> str:
        return f"component {self.component!r} requires missing annotation {self.missing!r}"


class Pipeline:
    """Ordered sequence of components applied to a document.

    ``validate`` checks that every component's requirements are covered by
    the assignments of earlier components ("text" counts as implicitly
    available). ``run`` refuses to execute an invalid pipeline.
    """

    def __init__(self, components: Iterable[Component]):
        self.components: tuple[Component, ...] = tuple(components)
        names = [c.name for c in self.components]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate component names: {names}")
        self._findings: list[ValidationFinding] | None = None

    def validate(self) -> list[ValidationFinding]:
        """Return unmet-dependency findings; an empty list means ok."""
        available = {"text"}
        findings = []
        for component in self.components:
            for annotation in sorted(component.requires):
                if annotation not in available:
                    findings.append(ValidationFinding(component.name, annotation))
            available |= set(component.assigns)
        self._findings = findings
        return findings

    @property
    def is_valid(self) -> bool:
        if self._findings is None:
            self.validate()
        return not self._findings

    def run(self, text: str) -> Document:
        """Apply every component in order to a fresh document."""
        if not self.is_valid:
            raise PipelineValidationError(self._findings or [])
        doc = Document(text=text, raw_text=text)
        for component in self.components:
            try:
                doc = component(doc)
            except TajTextError:
                raise
            except Exception as exc:
                raise ComponentError(component.name, exc) from exc
            doc.annotations_present |= set(component.assigns)
        return doc

    def component_names(self) -> list[str]:
        return [c.name for c in self.components]


# --- serialization ---------------------------------------------------------
#
# One document per line. Field names are fixed: raw_text, text, tokens,
# spans, sents. Sentence spans are serialized under "sents"; every other
# span group goes under "spans" keyed by label.


def doc_to_dict(doc: Document) -> dict:
    record: dict = {
        "raw_text": doc.raw_text,
        "text": doc.text,
        "tokens": [_token_to_dict(t) for t in doc.tokens],
        "sents": [[s.start_token, s.end_token] for s in doc.sents],
        "spans": {
            label: [[s.start_token, s.end_token, s.label] for s in spans]
            for label, spans in doc.span_groups.items()
            if label != SENTS_LABEL
        },
    }
    if doc.sentiment is not None:
        record["sentiment"] = {
            "label": doc.sentiment.label,
            "score": doc.sentiment.score,
        }
    return record


def _token_to_dict(token: Token) -> dict:
    d: dict = {"text": token.text, "start": token.start, "end": token.end,
               "is_stop": token.is_stop}
    if token.lemma is not None:
        d["lemma"] = token.lemma
    if token.pos is not None:
        d["pos"] = token.pos
    if token.stem is not None:
        d["stem"] = token.stem
    if token.morphemes is not None:
        d["morphemes"] = list(token.morphemes)
    if token.metadata:
        d["metadata"] = dict(token.metadata)
    return d


def doc_to_json(doc: Document) -> str:
    """Deterministic single-line JSON record for a document."""
    return json.dumps(doc_to_dict(doc), ensure_ascii=False, sort_keys=True,
                      separators=(",", ":"))


def doc_from_dict(record: dict) -> Document:
    doc = Document(text=record["text"], raw_text=record.get("raw_text"))
    for td in record.get("tokens", []):
        doc.tokens.append(
            Token(
                text=td["text"],
                start=td["start"],
                end=td["end"],
                lemma=td.get("lemma"),
                pos=td.get("pos"),
                stem=td.get("stem"),
                morphemes=td.get("morphemes"),
                is_stop=td.get("is_stop", False),
                metadata=td.get("metadata", {}),
            )
        )
    if doc.tokens:
        doc.annotations_present.add("tokens")
    sents = [Span(s, e, SENTS_LABEL) for s, e in record.get("sents", [])]
    if sents:
        add_span_group(doc, SENTS_LABEL, sents)
    for label, triples in record.get("spans", {}).items():
        add_span_group(doc, label, [Span(s, e, lab) for s, e, lab in triples])
    return doc


def doc_from_json(line: str) -> Document:
    return doc_from_dict(json.loads(line))
