"""Hand-crafted feature vectors for the two linear-model stages.

Stage 1 measures claim/document lexical and semantic overlap (13 slots).
Stage 3 combines sentiment scores of claim and document with category
lexicon frequencies and refuting-word indicators. Feature extraction is
pure given immutable resources; golden files are stable across runs.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np

from . import sentiment, textproc
from .embeddings import EmbeddingTable, avg_vector, cosine
from .textproc import (
    KeywordProvider,
    _data_path,
    char_ngrams,
    multiset_overlap,
    proper_nouns,
    sentences,
    stem_tokens,
    tokenize,
    truncate_sentences,
    word_ngrams,
)

EARLY_WINDOW_TOKENS = 255   # "first part of the document" window, in tokens

REQUIRED_CATEGORIES = (
    "analytical_thinking",
    "clout",
    "authentic",
    "emotional_tone",
    "conjugation",
    "negation",
    "comparison_words",
    "affective_processes",
    "positive_emotions",
    "negative_emotions",
    "anxiety",
    "anger",
    "sadness",
    "differentiation",
    "affiliation",
    "achieve",
)


@dataclass(frozen=True)
class FeatureSchema:
    schema_id: str
    slot_names: tuple[str, ...]

    @property
    def dimension(self) -> int:
        return len(self.slot_names)


@dataclass(frozen=True)
class FeatureVector:
    values: np.ndarray
    schema_id: str

    def __post_init__(self) -> None:
        if not np.all(np.isfinite(self.values)):
            raise ValueError(f"non-finite feature value in schema {self.schema_id}")


STAGE1_SCHEMA = FeatureSchema(
    schema_id="relevance-overlap/v1",
    slot_names=(
        "word_bigram_match",
        "word_trigram_match",
        "word_fourgram_match",
        "char_bigram_match",
        "char_trigram_match",
        "char_fourgram_match",
        "cooccurrence_first_255",
        "cooccurrence_full_body",
        "stem_overlap",
        "max_sentence_similarity",
        "embedding_similarity",
        "keyword_overlap",
        "proper_noun_overlap",
    ),
)


@dataclass(frozen=True)
class CategoryLexicon:
    """16 named categories of stemmed trigger tokens."""

    categories: dict[str, frozenset[str]]

    def __post_init__(self) -> None:
        missing = [name for name in REQUIRED_CATEGORIES if name not in self.categories]
        if missing:
            raise ValueError(f"category lexicon is missing categories: {missing}")
        empty = [name for name, words in self.categories.items() if not words]
        if empty:
            raise ValueError(f"category lexicon has empty categories: {empty}")


def load_category_lexicon(path: str | Path) -> CategoryLexicon:
    """Sectioned text file: '[category_name]' header lines, one stem per line."""
    categories: dict[str, set[str]] = {}
    current: set[str] | None = None
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip()
            if name in categories:
                raise ValueError(f"{path}:{lineno}: duplicate category {name!r}")
            current = categories.setdefault(name, set())
        elif current is None:
            raise ValueError(f"{path}:{lineno}: stem before any [category] header")
        else:
            current.add(line.lower())
    return CategoryLexicon({name: frozenset(words) for name, words in categories.items()})


def load_refuting_words(path: str | Path) -> tuple[str, ...]:
    words = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.append(line.lower())
    if not words:
        raise ValueError(f"{path}: empty refuting-word list")
    return tuple(words)


@lru_cache(maxsize=1)
def default_category_lexicon() -> CategoryLexicon:
    return load_category_lexicon(_data_path("category_lexicon.txt"))


@lru_cache(maxsize=1)
def default_refuting_words() -> tuple[str, ...]:
    return load_refuting_words(_data_path("refuting_words.txt"))


def stage3_schema(refuting_words: tuple[str, ...]) -> FeatureSchema:
    names = (
        ["claim_positive", "claim_negative", "claim_neutral", "claim_compound"]
        + ["doc_positive", "doc_negative", "doc_neutral", "doc_compound"]
        + [f"category_{name}" for name in REQUIRED_CATEGORIES]
        + [f"refuting_{word}" for word in refuting_words]
    )
    return FeatureSchema(schema_id=f"stance-direction/v1+r{len(refuting_words)}", slot_names=tuple(names))


def _tf_vector(stems: list[str]) -> Counter:
    return Counter(stems)


def _counter_cosine(a: Counter, b: Counter) -> float:
    if not a or not b:
        return 0.0
    dot = sum(count * b[token] for token, count in a.items() if token in b)
    norm_a = sum(c * c for c in a.values()) ** 0.5
    norm_b = sum(c * c for c in b.values()) ** 0.5
    if norm_a == 0.0 or norm_b == 0.0:
        return 0.0
    return dot / (norm_a * norm_b)


def _occurrence_count(claim_tokens, body_window: frozenset[str]) -> int:
    return sum(1 for token in claim_tokens if token in body_window)


def stage1_features(
    claim: str,
    body: str,
    table: EmbeddingTable,
    keyword_provider: KeywordProvider,
) -> FeatureVector:
    """13-slot overlap vector between a claim and a document body."""
    claim_tokens = tokenize(claim)
    body_tokens = tokenize(body)

    values = np.zeros(STAGE1_SCHEMA.dimension, dtype=np.float64)
    for slot, n in ((0, 2), (1, 3), (2, 4)):
        values[slot] = multiset_overlap(
            word_ngrams(claim_tokens, n), word_ngrams(body_tokens, n)
        )
    for slot, n in ((3, 2), (4, 3), (5, 4)):
        values[slot] = multiset_overlap(char_ngrams(claim, n), char_ngrams(body, n))

    values[6] = _occurrence_count(
        claim_tokens.tokens, frozenset(body_tokens.tokens[:EARLY_WINDOW_TOKENS])
    )
    values[7] = _occurrence_count(claim_tokens.tokens, frozenset(body_tokens.tokens))

    claim_stems = stem_tokens(claim_tokens.tokens)
    body_stems = stem_tokens(body_tokens.tokens)
    values[8] = multiset_overlap(Counter(claim_stems), Counter(body_stems))

    claim_tf = _tf_vector(claim_stems)
    best = 0.0
    for sentence in sentences(body):
        sent_tf = _tf_vector(stem_tokens(tokenize(sentence).tokens))
        best = max(best, _counter_cosine(claim_tf, sent_tf))
    values[9] = best

    claim_vec, _ = avg_vector(table, claim_tokens)
    body_vec, _ = avg_vector(table, body_tokens)
    values[10] = cosine(claim_vec, body_vec)

    values[11] = len(keyword_provider.extract(claim) & keyword_provider.extract(body))
    values[12] = len(proper_nouns(claim) & proper_nouns(body))
    return FeatureVector(values=values, schema_id=STAGE1_SCHEMA.schema_id)


def stage3_features(
    claim: str,
    body: str,
    lexicon: sentiment.SentimentLexicon,
    categories: CategoryLexicon,
    refuting_words: tuple[str, ...],
) -> FeatureVector:
    """Sentiment, category-frequency and refuting-indicator vector."""
    schema = stage3_schema(refuting_words)
    s_claim = sentiment.analyze(claim, lexicon).as_array()
    s_doc = sentiment.analyze(truncate_sentences(body), lexicon).as_array()

    body_tokens = tokenize(body).tokens
    body_stems = stem_tokens(body_tokens)
    stem_set = frozenset(body_stems)
    n_tokens = len(body_tokens)

    cat_scores = np.zeros(len(REQUIRED_CATEGORIES), dtype=np.float64)
    if n_tokens:
        for idx, name in enumerate(REQUIRED_CATEGORIES):
            triggers = categories.categories[name]
            cat_scores[idx] = sum(1 for s in body_stems if s in triggers) / n_tokens

    indicators = np.array(
        [1.0 if textproc.stem(word) in stem_set else 0.0 for word in refuting_words],
        dtype=np.float64,
    )
    values = np.concatenate([s_claim, s_doc, cat_scores, indicators])
    return FeatureVector(values=values, schema_id=schema.schema_id)


# ---------------------------------------------------------------------------
# feature standardization


@dataclass(frozen=True)
class Scaler:
    mean: np.ndarray
    std: np.ndarray
    schema_id: str

    @classmethod
    def identity(cls, dimension: int, schema_id: str) -> "Scaler":
        return cls(
            mean=np.zeros(dimension, dtype=np.float64),
            std=np.ones(dimension, dtype=np.float64),
            schema_id=schema_id,
        )


def fit_scaler(vectors) -> Scaler:
    """Per-slot mean/std from training vectors; zero-variance slots are
    clamped to unit scale so they standardize to exactly zero."""
    vectors = list(vectors)
    if not vectors:
        raise ValueError("cannot fit a scaler on an empty feature matrix")
    schema_id = vectors[0].schema_id
    for v in vectors:
        if v.schema_id != schema_id:
            raise ValueError(f"schema mismatch: {v.schema_id} != {schema_id}")
    matrix = np.stack([v.values for v in vectors])
    mean = matrix.mean(axis=0)
    std = matrix.std(axis=0)
    std = np.where(std < 1e-12, 1.0, std)
    return Scaler(mean=mean, std=std, schema_id=schema_id)


def apply_scaler(scaler: Scaler, vector: FeatureVector) -> FeatureVector:
    if vector.schema_id != scaler.schema_id:
        raise ValueError(f"schema mismatch: {vector.schema_id} != {scaler.schema_id}")
    return FeatureVector(
        values=(vector.values - scaler.mean) / scaler.std,
        schema_id=vector.schema_id,
    )
