"""Deterministic text normalization and structural extraction.

Tokens, sentences, stems, n-grams, chargrams, proper nouns and keyword
extraction. Every operation is pure: identical inputs give identical
outputs across runs and platforms.
"""

from __future__ import annotations

import json
import logging
import math
import threading
import time
import urllib.error
import urllib.request
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from importlib import resources as importlib_resources
from pathlib import Path

from .porter import stem

__all__ = [
    "TokenSeq",
    "tokenize",
    "sentences",
    "stem",
    "stem_tokens",
    "word_ngrams",
    "char_ngrams",
    "proper_nouns",
    "DocumentFrequencyTable",
    "build_df_table",
    "KeywordMode",
    "KeywordProviderConfig",
    "KeywordProvider",
    "KeywordServiceError",
    "extract_keywords",
    "load_stopwords",
    "default_stopwords",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class TokenSeq:
    """Parallel lowercase tokens and their case-preserving originals."""

    tokens: tuple[str, ...]
    original_forms: tuple[str, ...]

    def __post_init__(self) -> None:
        assert len(self.tokens) == len(self.original_forms)

    def __len__(self) -> int:
        return len(self.tokens)


def _trim_punct(token: str) -> str:
    """Strip non-alphanumeric characters from both ends of a token."""
    start, end = 0, len(token)
    while start < end and not token[start].isalnum():
        start += 1
    while end > start and not token[end - 1].isalnum():
        end -= 1
    return token[start:end]


def tokenize(text: str) -> TokenSeq:
    """Split on whitespace, trim surrounding punctuation, lowercase.

    Internal apostrophes and hyphens survive ("it's", "state-of-the-art").
    Tokens that are pure punctuation are dropped.
    """
    originals = []
    for raw in text.split():
        trimmed = _trim_punct(raw)
        if trimmed:
            originals.append(trimmed)
    return TokenSeq(
        tokens=tuple(t.lower() for t in originals),
        original_forms=tuple(originals),
    )


# Trailing-dot abbreviations that must not end a sentence. Single letters
# ("J. Smith") are guarded separately.
_ABBREVIATIONS = frozenset(
    """
    mr mrs ms dr prof rev gen sen rep gov pres st jr sr vs etc e.g i.e
    inc ltd co corp dept est fig al approx
    jan feb mar apr jun jul aug sep sept oct nov dec
    u.s u.k u.n a.m p.m ph.d
    """.split()
)

_TERMINATORS = ".!?"


def _is_abbreviation(text: str, dot_index: int) -> bool:
    """True when the '.' at dot_index ends an abbreviation, not a sentence."""
    start = dot_index
    while start > 0 and not text[start - 1].isspace():
        start -= 1
    word = text[start:dot_index].lower().rstrip(".")
    word = word.lstrip("\"'([{")
    if not word:
        return False
    if len(word) == 1 and word.isalpha():
        return True
    return word in _ABBREVIATIONS


def sentences(text: str) -> list[str]:
    """Split text on '.', '!' or '?' followed by whitespace or end of text.

    An abbreviation guard keeps "Dr. Smith" and "U.S. officials" intact.
    Terminators stay attached to their sentence; surrounding whitespace is
    trimmed.
    """
    out: list[str] = []
    n = len(text)
    sent_start = 0
    i = 0
    while i < n:
        ch = text[i]
        if ch in _TERMINATORS:
            # absorb runs like "?!" or "..."
            j = i
            while j + 1 < n and text[j + 1] in _TERMINATORS:
                j += 1
            at_break = j + 1 >= n or text[j + 1].isspace()
            if at_break and not (text[j] == "." and i == j and _is_abbreviation(text, i)):
                piece = text[sent_start : j + 1].strip()
                if piece:
                    out.append(piece)
                sent_start = j + 1
            i = j + 1
        else:
            i += 1
    tail = text[sent_start:].strip()
    if tail:
        out.append(tail)
    return out


# document truncation shared by the stage-2 network and stage-3 features
DOC_SENTENCE_CAP = 10


def truncate_sentences(text: str, cap: int = DOC_SENTENCE_CAP) -> str:
    """First `cap` sentences of a text, re-joined with single spaces."""
    return " ".join(sentences(text)[:cap])


def stem_tokens(tokens) -> list[str]:
    return [stem(t) for t in tokens]


def word_ngrams(tokens, n: int) -> Counter:
    """Multiset of n-token tuples over a token sequence."""
    if n < 1:
        raise ValueError(f"n-gram order must be >= 1, got {n}")
    seq = tokens.tokens if isinstance(tokens, TokenSeq) else tuple(tokens)
    return Counter(seq[i : i + n] for i in range(len(seq) - n + 1))


def char_ngrams(text: str, n: int) -> Counter:
    """Multiset of n-character strings over the lowercased,
    whitespace-collapsed character stream."""
    if n < 1:
        raise ValueError(f"chargram order must be >= 1, got {n}")
    stream = " ".join(text.lower().split())
    return Counter(stream[i : i + n] for i in range(len(stream) - n + 1))


def multiset_overlap(a: Counter, b: Counter) -> int:
    """Size of the multiset intersection."""
    return sum((a & b).values())


def proper_nouns(text: str) -> set[str]:
    """Heuristic proper-noun extraction, returned lowercased.

    Capitalized tokens that are not sentence-initial count directly, as do
    all-caps acronyms anywhere. A sentence-initial capitalized token counts
    only when the same token occurs capitalized at a non-initial position
    elsewhere in the text.
    """
    confirmed: set[str] = set()
    initial_candidates: set[str] = set()
    for sentence in sentences(text):
        seq = tokenize(sentence)
        for pos, original in enumerate(seq.original_forms):
            first = original[0]
            if original.isupper() and len(original) >= 2 and original.isalpha():
                confirmed.add(original.lower())
            elif first.isalpha() and first.isupper():
                if pos == 0:
                    initial_candidates.add(original.lower())
                else:
                    confirmed.add(original.lower())
    return confirmed | (initial_candidates & confirmed)


# ---------------------------------------------------------------------------
# keyword extraction


@dataclass
class DocumentFrequencyTable:
    """Token -> number of documents containing it, over n_docs documents."""

    df: dict[str, int]
    n_docs: int

    def idf(self, token: str) -> float:
        return math.log((1 + self.n_docs) / (1 + self.df.get(token, 0))) + 1.0


def build_df_table(texts) -> DocumentFrequencyTable:
    df: Counter = Counter()
    n = 0
    for text in texts:
        n += 1
        df.update(set(tokenize(text).tokens))
    return DocumentFrequencyTable(df=dict(df), n_docs=n)


class KeywordMode(Enum):
    OFFLINE_TFIDF = "offline"
    REMOTE_SERVICE = "remote"


class KeywordServiceError(RuntimeError):
    pass


@dataclass
class KeywordProviderConfig:
    mode: KeywordMode = KeywordMode.OFFLINE_TFIDF
    k: int = 10
    endpoint: str | None = None
    timeout: float = 5.0
    fallback_to_offline: bool = True
    retries: int = 2
    backoff: float = 0.25
    max_concurrency: int = 4

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be a positive integer")
        if self.mode is KeywordMode.REMOTE_SERVICE:
            if not self.endpoint or "://" not in self.endpoint:
                raise ValueError("remote keyword provider needs a well-formed endpoint URL")


class KeywordProvider:
    """Top-k keyword extraction: offline tf-idf or a remote HTTP service.

    The remote path POSTs raw UTF-8 text and expects a JSON array of
    strings back; failures retry with exponential backoff and optionally
    fall back to the offline extractor. Safe for concurrent use; remote
    calls are capped by a semaphore.
    """

    def __init__(
        self,
        config: KeywordProviderConfig,
        df_table: DocumentFrequencyTable | None = None,
        stopwords: frozenset[str] | None = None,
    ):
        self.config = config
        self.df_table = df_table
        self.stopwords = stopwords if stopwords is not None else default_stopwords()
        self._gate = threading.Semaphore(config.max_concurrency)

    def extract(self, text: str) -> set[str]:
        if self.config.mode is KeywordMode.REMOTE_SERVICE:
            try:
                return self._extract_remote(text)
            except KeywordServiceError:
                if not self.config.fallback_to_offline:
                    raise
                log.warning("remote keyword service failed; falling back to offline tf-idf")
        return self._extract_offline(text)

    def _extract_offline(self, text: str) -> set[str]:
        if self.df_table is None:
            raise KeywordServiceError("offline keyword extraction needs a document-frequency table")
        counts = Counter(t for t in tokenize(text).tokens if t not in self.stopwords)
        scored = sorted(
            counts.items(), key=lambda kv: (-kv[1] * self.df_table.idf(kv[0]), kv[0])
        )
        return {token for token, _ in scored[: self.config.k]}

    def _extract_remote(self, text: str) -> set[str]:
        last_error: Exception | None = None
        for attempt in range(self.config.retries + 1):
            if attempt:
                time.sleep(self.config.backoff * (2 ** (attempt - 1)))
            try:
                with self._gate:
                    request = urllib.request.Request(
                        self.config.endpoint,
                        data=text.encode("utf-8"),
                        headers={"Content-Type": "text/plain; charset=utf-8"},
                        method="POST",
                    )
                    with urllib.request.urlopen(request, timeout=self.config.timeout) as resp:
                        if resp.status != 200:
                            raise KeywordServiceError(f"keyword service returned HTTP {resp.status}")
                        payload = json.loads(resp.read().decode("utf-8"))
                if not isinstance(payload, list) or not all(isinstance(w, str) for w in payload):
                    raise KeywordServiceError("keyword service response is not a JSON array of strings")
                return {w.lower() for w in payload}
            except (urllib.error.URLError, TimeoutError, OSError, json.JSONDecodeError, KeywordServiceError) as exc:
                last_error = exc
        raise KeywordServiceError(f"keyword service unreachable: {last_error}")


def extract_keywords(
    text: str,
    config: KeywordProviderConfig,
    df_table: DocumentFrequencyTable | None = None,
    stopwords: frozenset[str] | None = None,
) -> set[str]:
    return KeywordProvider(config, df_table=df_table, stopwords=stopwords).extract(text)


def load_stopwords(path: str | Path) -> frozenset[str]:
    words = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.append(line.lower())
    return frozenset(words)


def _data_path(name: str) -> Path:
    return Path(importlib_resources.files("stancecascade").joinpath("data", name))


_DEFAULT_STOPWORDS: frozenset[str] | None = None


def default_stopwords() -> frozenset[str]:
    global _DEFAULT_STOPWORDS
    if _DEFAULT_STOPWORDS is None:
        _DEFAULT_STOPWORDS = load_stopwords(_data_path("stopwords.txt"))
    return _DEFAULT_STOPWORDS
