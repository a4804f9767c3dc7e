import random

import pytest
from hypothesis import given, strategies as st

from tajtext.preprocess import (
    CleanerConfig,
    NormalizationTable,
    clean,
    detect_script,
    normalize,
)

IDENTITY = CleanerConfig(False, False, False, False, False, False)


class TestClean:
    def test_url_removed(self):
        assert clean("салом   https://x.tj  дунё") == "салом дунё"

    def test_empty(self):
        assert clean("") == ""

    def test_html_mention_hashtag(self):
        assert clean("<b>матн</b> @user #tag") == "матн"

    def test_email_removed(self):
        assert clean("ба x@y.tj нависед") == "ба нависед"

    def test_www_form(self):
        assert clean("сайти www.example.tj хуб") == "сайти хуб"

    def test_identity_config(self):
        text = "  <b>салом</b>   https://x.tj @u #t  "
        assert clean(text, IDENTITY) == text

    def test_selective_config(self):
        config = CleanerConfig(remove_urls=True, remove_emails=False,
                               remove_html=False, remove_mentions=False,
                               remove_hashtags=False, collapse_whitespace=True)
        assert clean("а https://x.tj <b>б</b>", config) == "а <b>б</b>"


class TestNormalize:
    def test_grapheme_pairs(self):
        assert normalize("љавонї") == "ҷавонӣ"
        assert normalize("њаќиќат ўѓ") == "ҳақиқат ӯғ"

    def test_uppercase_graphemes(self):
        assert normalize("ЉЇЊЌЎЃ") == "ҶӢҲҚӮҒ"

    def test_ocr_inside_cyrillic_word(self):
        assert normalize("Rаламе") == "қаламе"
        assert normalize("Xавоб") == "ҷавоб"
        assert normalize("китобb") == "китобӣ"

    def test_ocr_leaves_latin_words_alone(self):
        assert normalize("Xbox Rust") == "Xbox Rust"

    def test_eastern_arabic_numerals(self):
        assert normalize("٤٢ сол") == "42 сол"

    def test_persian_numerals(self):
        assert normalize("۱۲۳") == "123"

    def test_quotes_unified(self):
        assert normalize("«матн»") == '"матн"'
        assert normalize("„матн“") == '"матн"'

    def test_dashes_unified(self):
        assert normalize("рӯз — шаб") == "рӯз - шаб"

    def test_harakat_stripped(self):
        assert normalize("китًоб") == "китоб"

    def test_decomposed_composes(self):
        assert normalize("зиндагӣ") == "зиндагӣ"

    def test_single_quotes_kept(self):
        assert normalize("йо’л") == "йо’л"


def _random_unicode_string(rng: random.Random, max_len: int = 40) -> str:
    pools = [
        (0x20, 0x7E),        # ASCII
        (0x400, 0x4FF),      # Cyrillic
        (0x500, 0x52F),      # Cyrillic supplement
        (0x600, 0x6FF),      # Arabic (incl. harakat, digits)
        (0x2010, 0x2027),    # punctuation/dashes
        (0x2018, 0x201F),    # quotes
        (0x300, 0x36F),      # combining marks
        (0x1E00, 0x1EFF),    # Latin extended
        (0x3040, 0x309F),    # Hiragana (out-of-family letters)
        (0x1F600, 0x1F64F),  # emoji (astral)
    ]
    n = rng.randint(0, max_len)
    chars = []
    for _ in range(n):
        lo, hi = pools[rng.randrange(len(pools))]
        chars.append(chr(rng.randint(lo, hi)))
    return "".join(chars)


class TestNormalizeProperties:
    def test_idempotent_on_random_strings(self):
        rng = random.Random(20240817)
        for _ in range(2000):
            s = _random_unicode_string(rng)
            once = normalize(s)
            assert normalize(once) == once

    def test_letter_count_preserved_modulo_strip(self):
        table = NormalizationTable(strip_set=frozenset())
        rng = random.Random(99)
        for _ in range(1000):
            s = _random_unicode_string(rng)
            before = sum(c.isalpha() for c in normalize(s, table))
            after = sum(c.isalpha() for c in normalize(normalize(s, table), table))
            assert before == after

    @given(st.text(max_size=60))
    def test_idempotent_hypothesis(self, s):
        once = normalize(s)
        assert normalize(once) == once


class TestDetectScript:
    def test_pure_cyrillic(self):
        report = detect_script("салом")
        assert report.verdict == "cyrillic"
        assert report.cyrillic_fraction == 1.0

    def test_no_letters(self):
        assert detect_script("12345 !!!").verdict == "unknown"

    def test_mixed(self):
        assert detect_script("салом hello").verdict == "mixed"

    def test_arabic(self):
        assert detect_script("سلام").verdict == "arabic"

    def test_dominant_with_trace(self):
        # 1 Latin letter out of 13: below the default 0.10 threshold.
        report = detect_script("салом дунёиёна w")
        assert report.verdict == "cyrillic"

    def test_threshold_bounds(self):
        with pytest.raises(ValueError):
            detect_script("x", mixed_threshold=0.6)

    def test_duplication_invariance(self):
        rng = random.Random(5)
        for _ in range(500):
            s = _random_unicode_string(rng, max_len=20)
            if not s:
                continue
            assert detect_script(s + s).verdict == detect_script(s).verdict

    def test_fractions_sum_le_one(self):
        rng = random.Random(6)
        for _ in range(500):
            r = detect_script(_random_unicode_string(rng))
            assert r.cyrillic_fraction + r.latin_fraction + r.arabic_fraction <= 1.0 + 1e-12
