import random

import pytest

from indicsum.errors import EmptyBatch
from indicsum.segment import pad_batch, split_sentences, tokenize_words


class TestSplitSentences:
    def test_full_stop_split(self):
        assert list(split_sentences("A. B. C.", "english")) == ["A.", "B.", "C."]

    def test_empty_text(self):
        for language in ("english", "hindi", "gujarati"):
            assert list(split_sentences("", language)) == []

    def test_whitespace_only(self):
        assert list(split_sentences("   \n\t ", "english")) == []

    def test_hindi_danda(self):
        got = split_sentences("पहला वाक्य। दूसरा वाक्य।", "hindi")
        assert list(got) == ["पहला वाक्य।", "दूसरा वाक्य।"]

    def test_danda_ignored_outside_hindi(self):
        text = "પહેલું વાક્ય। બીજું."
        assert len(split_sentences(text, "gujarati")) == 1
        assert len(split_sentences(text, "hindi")) == 2

    def test_terminator_run_stays_with_sentence(self):
        got = split_sentences("What?! Really. Yes", "english")
        assert list(got) == ["What?!", "Really.", "Yes"]

    def test_trailing_text_without_terminator(self):
        got = split_sentences("First. second half", "english")
        assert list(got) == ["First.", "second half"]

    def test_question_and_exclamation(self):
        got = split_sentences("One? Two! Three.", "english")
        assert len(got) == 3

    def test_unknown_language(self):
        with pytest.raises(ValueError):
            split_sentences("A.", "latin")

    def test_spans_recover_sentences(self):
        text = "  First one.   Second   one!  tail bit"
        got = split_sentences(text, "english")
        for sentence, (lo, hi) in zip(got.sentences, got.source_spans):
            assert text[lo:hi] == sentence

    def test_spans_strictly_increasing(self):
        text = "A. B? C! D."
        spans = split_sentences(text, "english").source_spans
        flat = [x for span in spans for x in span]
        assert flat == sorted(flat)

    def test_sentence_count_bounded_by_delimiters(self):
        rng = random.Random(91)
        alphabet = "ab .?!"
        for _ in range(200):
            text = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 40)))
            count = len(split_sentences(text, "english"))
            delimiters = sum(text.count(d) for d in ".?!")
            assert count <= delimiters + 1

    def test_random_spans_always_exact(self):
        rng = random.Random(17)
        words = ["abc", "de", "f", "નમસ્તે", "।", "?"]
        for _ in range(200):
            text = " ".join(rng.choice(words) for _ in range(rng.randint(0, 25)))
            for language in ("english", "hindi"):
                got = split_sentences(text, language)
                for sentence, (lo, hi) in zip(got.sentences, got.source_spans):
                    assert text[lo:hi] == sentence
                    assert sentence == sentence.strip()


class TestTokenizeWords:
    def test_basic(self):
        assert tokenize_words("a b  c") == ["a", "b", "c"]

    def test_empty(self):
        assert tokenize_words("") == []
        assert tokenize_words("   ") == []

    def test_gujarati(self):
        assert len(tokenize_words("નમસ્તે દુનિયા")) == 2

    def test_no_empty_tokens(self):
        assert all(tokenize_words(" x \t y \n "))


class TestPadBatch:
    def test_two_rows(self):
        rows, mask = pad_batch([[1, 2], [3]], 0)
        assert rows == [[1, 2], [3, 0]]
        assert mask == [[1, 1], [1, 0]]

    def test_single_row_unchanged(self):
        rows, mask = pad_batch([[5, 6, 7]], 9)
        assert rows == [[5, 6, 7]]
        assert mask == [[1, 1, 1]]

    def test_pad_id_used(self):
        rows, _ = pad_batch([[1], [2, 3, 4]], 9)
        assert rows == [[1, 9, 9], [2, 3, 4]]

    def test_empty_batch(self):
        with pytest.raises(EmptyBatch):
            pad_batch([], 0)

    def test_mask_sums_are_lengths(self):
        rng = random.Random(5)
        for _ in range(100):
            seqs = [
                [rng.randint(1, 9) for _ in range(rng.randint(0, 8))]
                for _ in range(rng.randint(1, 6))
            ]
            rows, mask = pad_batch(seqs, 0)
            width = max(len(s) for s in seqs)
            assert all(len(r) == width for r in rows)
            assert [sum(m) for m in mask] == [len(s) for s in seqs]
