import random

import pytest
from hypothesis import given, strategies as st

from tajtext.core import (
    Component,
    Document,
    FunctionComponent,
    MisalignmentError,
    Pipeline,
    PipelineValidationError,
    Span,
    SpanIndexError,
    SpanOverlapError,
    Token,
    ValidationFinding,
    add_span_group,
    alignment_build,
    bio_to_spans,
    doc_from_json,
    doc_to_json,
    to_bio,
)
from tajtext.tokenize import RegexTokenizer, tokenize


def make_doc(text: str) -> Document:
    doc = Document(text=text)
    doc.tokens = tokenize(text)
    return doc


class TestToken:
    def test_rejects_inverted_offsets(self):
        with pytest.raises(ValueError):
            Token(text="x", start=3, end=2)

    def test_offsets_match_text(self):
        doc = make_doc("Ман дар Душанбе зиндагӣ мекунам")
        for token in doc.tokens:
            assert doc.text[token.start:token.end] == token.text


class TestSpanGroups:
    def test_add_and_replace(self):
        doc = make_doc("салом дунё")
        add_span_group(doc, "sents", [Span(0, 2, "sents")])
        assert len(doc.span_groups["sents"]) == 1
        add_span_group(doc, "sents", [Span(0, 1, "sents"), Span(1, 2, "sents")])
        assert len(doc.span_groups["sents"]) == 2

    def test_out_of_range_span_rejected(self):
        doc = make_doc("салом дунё")
        with pytest.raises(SpanIndexError):
            add_span_group(doc, "X", [Span(0, 3, "X")])

    def test_span_char_offsets_derived_from_tokens(self):
        doc = make_doc("Ман дар Душанбе")
        span = Span(2, 3, "LOC")
        assert span.char_range(doc) == (8, 15)
        assert span.text(doc) == "Душанбе"


class TestAlignment:
    def test_exact_alignment(self):
        text = "Ман дар Душанбе зиндагӣ мекунам"
        doc = make_doc(text)
        start = text.index("Душанбе")
        spans = alignment_build(doc, [(start, start + len("Душанбе"), "LOC")])
        assert len(spans) == 1
        assert spans[0].text(doc) == "Душанбе"
        assert spans[0].label == "LOC"

    def test_strict_rejects_mid_token_boundary(self):
        doc = make_doc("Ман дар Душанбе")
        start = doc.text.index("Душанбе")
        with pytest.raises(MisalignmentError) as err:
            alignment_build(doc, [(start, start + 3, "LOC")])
        assert "Душанбе" in str(err.value)

    def test_expand_mode_widens(self):
        doc = make_doc("Ман дар Душанбе")
        start = doc.text.index("Душанбе")
        spans = alignment_build(doc, [(start + 1, start + 3, "LOC")], mode="expand")
        assert spans[0].text(doc) == "Душанбе"

    def test_empty_entities(self):
        doc = make_doc("салом")
        assert alignment_build(doc, []) == []

    def test_group_retrievable_by_label(self):
        text = "Ман дар Душанбе зиндагӣ мекунам"
        doc = make_doc(text)
        start = text.index("Душанбе")
        spans = alignment_build(doc, [(start, start + 7, "LOC")])
        add_span_group(doc, "LOC", spans)
        assert to_bio(doc, "LOC")[2] == "B-LOC"


class TestBio:
    def test_no_spans_all_outside(self):
        doc = make_doc("як ду се чор панҷ")
        add_span_group(doc, "ENT", [])
        assert to_bio(doc, "ENT") == ["O"] * 5

    def test_single_token_span(self):
        doc = make_doc("як ду се чор панҷ")
        add_span_group(doc, "LOC", [Span(2, 3, "LOC")])
        assert to_bio(doc, "LOC") == ["O", "O", "B-LOC", "O", "O"]

    def test_multi_token_span(self):
        doc = make_doc("як ду се чор панҷ")
        add_span_group(doc, "LOC", [Span(1, 3, "LOC")])
        assert to_bio(doc, "LOC") == ["O", "B-LOC", "I-LOC", "O", "O"]

    def test_overlap_detected(self):
        doc = make_doc("як ду се")
        add_span_group(doc, "X", [Span(0, 2, "X"), Span(1, 3, "X")])
        with pytest.raises(SpanOverlapError):
            to_bio(doc, "X")

    def test_missing_group(self):
        doc = make_doc("як")
        with pytest.raises(KeyError):
            to_bio(doc, "nope")

    def test_round_trip_random(self):
        rng = random.Random(7)
        for _ in range(300):
            n = rng.randint(1, 12)
            spans = _random_spans(rng, n)
            tags = _spans_to_bio(spans, n)
            recovered = bio_to_spans(tags)
            assert [(s.start_token, s.end_token, s.label) for s in recovered] == [
                (s.start_token, s.end_token, s.label) for s in spans
            ]


def _random_spans(rng: random.Random, n: int) -> list[Span]:
    spans = []
    i = 0
    labels = ["LOC", "PER", "ORG"]
    while i < n:
        if rng.random() < 0.4:
            length = rng.randint(1, min(3, n - i))
            spans.append(Span(i, i + length, rng.choice(labels)))
            i += length
        else:
            i += 1
    return spans


def _spans_to_bio(spans: list[Span], n: int) -> list[str]:
    doc = Document(text="x " * n)
    doc.tokens = [Token(text="x", start=2 * i, end=2 * i + 1) for i in range(n)]
    add_span_group(doc, "G", spans)
    return to_bio(doc, "G")


class TestPipelineValidation:
    def test_empty_pipeline_ok(self):
        assert Pipeline([]).validate() == []

    def test_missing_dependency_reported(self):
        tagger = FunctionComponent("pos_tagger", lambda d: d, requires={"tokens"},
                                   assigns={"pos"})
        findings = Pipeline([tagger]).validate()
        assert findings == [ValidationFinding("pos_tagger", "tokens")]

    def test_satisfied_dependency(self):
        pipeline = Pipeline([
            RegexTokenizer(),
            FunctionComponent("pos_tagger", lambda d: d, requires={"tokens"},
                              assigns={"pos"}),
        ])
        assert pipeline.validate() == []

    def test_run_refuses_invalid_pipeline(self):
        tagger = FunctionComponent("pos_tagger", lambda d: d, requires={"tokens"})
        with pytest.raises(PipelineValidationError):
            Pipeline([tagger]).run("салом")

    def test_duplicate_names_rejected(self):
        a = FunctionComponent("same", lambda d: d)
        b = FunctionComponent("same", lambda d: d)
        with pytest.raises(ValueError):
            Pipeline([a, b])


class TestPipelineRun:
    def test_empty_pipeline_identity(self):
        doc = Pipeline([]).run("салом")
        assert doc.text == "салом"
        assert doc.raw_text == "салом"
        assert doc.tokens == []

    def test_tokenizer_only_on_empty_input(self):
        doc = Pipeline([RegexTokenizer()]).run("")
        assert doc.tokens == []
        assert doc.sents == []

    def test_component_error_names_component(self):
        def boom(doc):
            raise RuntimeError("kaput")

        pipeline = Pipeline([FunctionComponent("broken", boom)])
        with pytest.raises(Exception) as err:
            pipeline.run("x")
        assert "broken" in str(err.value)

    def test_raw_text_preserved(self, default_pipeline):
        raw = "Салом,   дунё!  "
        doc = default_pipeline.run(raw)
        assert doc.raw_text == raw
        assert doc.text != raw

    def test_annotations_accumulate(self, default_pipeline):
        doc = default_pipeline.run("Ман китоб мехонам.")
        for name in ("text", "tokens", "sents", "pos", "morphemes", "is_stop", "lemma"):
            assert name in doc.annotations_present


class TestSerialization:
    def test_round_trip(self, default_pipeline):
        doc = default_pipeline.run("Ман омадам. Ту рафтӣ.")
        clone = doc_from_json(doc_to_json(doc))
        assert clone.text == doc.text
        assert clone.raw_text == doc.raw_text
        assert len(clone.tokens) == len(doc.tokens)
        for a, b in zip(clone.tokens, doc.tokens):
            assert (a.text, a.start, a.end, a.lemma, a.pos, a.is_stop) == (
                b.text, b.start, b.end, b.lemma, b.pos, b.is_stop
            )
        assert [(s.start_token, s.end_token) for s in clone.sents] == [
            (s.start_token, s.end_token) for s in doc.sents
        ]

    def test_record_field_names(self, default_pipeline):
        import json

        record = json.loads(doc_to_json(default_pipeline.run("салом")))
        assert set(record) >= {"raw_text", "text", "tokens", "spans", "sents"}
        token = record["tokens"][0]
        assert {"text", "start", "end", "is_stop"} <= set(token)

    def test_deterministic_output(self, default_pipeline):
        text = "Китобҳоямонро хондам, аммо нафаҳмидам."
        first = doc_to_json(default_pipeline.run(text))
        second = doc_to_json(default_pipeline.run(text))
        assert first == second


@given(st.text(max_size=80))
def test_offset_faithfulness_property(text):
    doc = make_doc(text)
    for token in doc.tokens:
        assert doc.text[token.start:token.end] == token.text
