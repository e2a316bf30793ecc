"""Sentiment analyzer: rule behavior, invariants, oracle fidelity."""

from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles.vader_reference import analyzer_from_package_data
from stancecascade.sentiment import (
    SentimentLexicon,
    analyze,
    default_sentiment_lexicon,
    load_sentiment_lexicon,
)

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="module")
def lexicon() -> SentimentLexicon:
    return default_sentiment_lexicon()


class TestBasics:
    def test_empty_text_is_neutral(self, lexicon):
        scores = analyze("", lexicon)
        assert (scores.positive, scores.negative, scores.neutral, scores.compound) == (0, 0, 1, 0)

    def test_negation_flips_sign(self, lexicon):
        good = analyze("good", lexicon).compound
        negated = analyze("not good", lexicon).compound
        assert good > 0
        assert negated < 0
        assert negated == pytest.approx(-0.74 * good, abs=0.15)

    def test_booster_amplifies(self, lexicon):
        plain = analyze("the plan is good", lexicon).compound
        boosted = analyze("the plan is very good", lexicon).compound
        assert boosted > plain > 0

    def test_dampener_attenuates(self, lexicon):
        plain = analyze("the plan is good", lexicon).compound
        damped = analyze("the plan is slightly good", lexicon).compound
        assert 0 < damped < plain

    def test_exclamation_amplifies(self, lexicon):
        plain = analyze("the launch was great", lexicon).compound
        excited = analyze("the launch was great!!", lexicon).compound
        assert excited > plain

    def test_allcaps_emphasis(self, lexicon):
        plain = analyze("the launch was great indeed", lexicon).compound
        shouted = analyze("the launch was GREAT indeed", lexicon).compound
        assert shouted > plain

    def test_but_shifts_weight_to_second_clause(self, lexicon):
        toward_neg = analyze("the food was good but the service was terrible", lexicon)
        toward_pos = analyze("the service was terrible but the food was good", lexicon)
        assert toward_neg.compound < 0 < toward_pos.compound

    def test_determinism(self, lexicon):
        text = "Officials denied the GREAT hoax, but experts were not convinced!!"
        assert analyze(text, lexicon) == analyze(text, lexicon)

    def test_neutral_only_words(self, lexicon):
        scores = analyze("the report was released on Monday", lexicon)
        assert scores.compound == 0.0
        assert scores.neutral == pytest.approx(1.0)


class TestInvariants:
    @given(st.text(max_size=120))
    @settings(max_examples=300, deadline=None)
    def test_score_simplex(self, text):
        scores = analyze(text)
        assert scores.positive + scores.negative + scores.neutral == pytest.approx(1.0, abs=1e-6)
        assert -1.0 < scores.compound < 1.0 or scores.compound == 0.0

    def test_compound_monotone_in_valence_sum(self, lexicon):
        texts = ["good", "good good", "good good good", "good good good good"]
        compounds = [analyze(t, lexicon).compound for t in texts]
        assert compounds == sorted(compounds)
        assert all(c < 1.0 for c in compounds)


class TestLexiconLoading:
    def test_valence_bounds_enforced(self, tmp_path):
        bad = tmp_path / "lex.txt"
        bad.write_text("overjoyed\t4.5\n")
        empty = tmp_path / "empty.txt"
        empty.write_text("")
        with pytest.raises(ValueError):
            load_sentiment_lexicon(bad, empty, empty, empty)

    def test_default_lexicon_shape(self, lexicon):
        assert all(-4.0 <= v <= 4.0 for v in lexicon.valences.values())
        assert lexicon.boosters
        assert "not" in lexicon.negators


class TestOracleFidelity:
    def test_golden_sample_within_tolerance(self, lexicon):
        sentences = (DATA / "sentiment_sentences.txt").read_text(encoding="utf-8").splitlines()
        golden = [
            float(line.split("\t")[0])
            for line in (DATA / "sentiment_golden.tsv").read_text(encoding="utf-8").splitlines()
        ]
        assert len(sentences) == len(golden) == 200
        within = sum(
            1
            for sentence, expected in zip(sentences, golden)
            if abs(analyze(sentence, lexicon).compound - expected) <= 0.05
        )
        assert within / len(sentences) >= 0.95

    def test_oracle_agrees_on_negation_sign(self, lexicon):
        oracle = analyzer_from_package_data()
        for text in ["good", "not good", "the hoax was denied", "a truly great success"]:
            mine = analyze(text, lexicon).compound
            reference = oracle.polarity_scores(text)["compound"]
            assert mine == pytest.approx(reference, abs=0.05)
