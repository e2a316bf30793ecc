"""Rule-based sentiment intensity analysis.

Produces four scores (positive, negative, neutral, compound) from a
valence lexicon plus contextual rules: booster words with distance decay,
negation flips, ALL-CAPS emphasis, exclamation/question-mark
amplification, and contrastive "but" reweighting. The compound score is
the rule-adjusted valence sum normalized by s/sqrt(s^2 + 15).

Idiom-level rules of the published model are intentionally not
implemented; everything else follows the standard constants.
"""

from __future__ import annotations

import math
import string
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np

from .textproc import _data_path

B_INCR = 0.293
B_DECR = -0.293
C_INCR = 0.733       # ALL-CAPS emphasis
N_SCALAR = -0.74     # negation flip
EP_UNIT = 0.292      # per exclamation mark, capped at 4
ALPHA = 15.0         # compound normalization


@dataclass(frozen=True)
class SentimentScores:
    positive: float
    negative: float
    neutral: float
    compound: float

    def as_array(self) -> np.ndarray:
        return np.array(
            [self.positive, self.negative, self.neutral, self.compound], dtype=np.float64
        )


NEUTRAL_SCORES = SentimentScores(0.0, 0.0, 1.0, 0.0)


@dataclass(frozen=True)
class SentimentLexicon:
    valences: dict[str, float]
    boosters: dict[str, float]
    negators: frozenset[str]


def _read_wordlist(path: Path) -> list[str]:
    words = []
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.append(line.lower())
    return words


def load_sentiment_lexicon(
    valences_path: str | Path,
    boosters_path: str | Path,
    dampeners_path: str | Path,
    negators_path: str | Path,
) -> SentimentLexicon:
    valences: dict[str, float] = {}
    for lineno, line in enumerate(Path(valences_path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) < 2:
            raise ValueError(f"{valences_path}:{lineno}: expected 'token<TAB>valence'")
        token, value = parts[0], float(parts[1])
        if not -4.0 <= value <= 4.0:
            raise ValueError(f"{valences_path}:{lineno}: valence {value} outside [-4, 4]")
        valences[token.lower()] = value
    boosters = {w: B_INCR for w in _read_wordlist(Path(boosters_path))}
    boosters.update({w: B_DECR for w in _read_wordlist(Path(dampeners_path))})
    negators = frozenset(_read_wordlist(Path(negators_path)))
    return SentimentLexicon(valences=valences, boosters=boosters, negators=negators)


@lru_cache(maxsize=1)
def default_sentiment_lexicon() -> SentimentLexicon:
    return load_sentiment_lexicon(
        _data_path("sentiment_lexicon.txt"),
        _data_path("boosters.txt"),
        _data_path("dampeners.txt"),
        _data_path("negators.txt"),
    )


def _words(text: str) -> list[str]:
    """Whitespace tokens with surrounding punctuation stripped; tokens that
    would shrink to <= 2 chars keep their original form (emoticons)."""
    out = []
    for token in text.split():
        stripped = token.strip(string.punctuation)
        out.append(token if len(stripped) <= 2 else stripped)
    return out


def _allcap_differential(words: list[str]) -> bool:
    upper = sum(1 for w in words if w.isupper())
    return 0 < len(words) - upper < len(words)


def _negated(token: str, negators: frozenset[str]) -> bool:
    return token in negators or "n't" in token


def _booster_scalar(word: str, valence: float, is_cap_diff: bool, boosters: dict[str, float]) -> float:
    scalar = boosters.get(word.lower())
    if scalar is None:
        return 0.0
    if valence < 0:
        scalar = -scalar
    if word.isupper() and is_cap_diff:
        scalar += C_INCR if valence > 0 else -C_INCR
    return scalar


def _negation_check(valence: float, low: list[str], start_i: int, i: int, negators: frozenset[str]) -> float:
    if start_i == 0:
        if _negated(low[i - 1], negators):
            valence *= N_SCALAR
    elif start_i == 1:
        if low[i - 2] == "never" and low[i - 1] in ("so", "this"):
            valence *= 1.25
        elif low[i - 2] == "without" and low[i - 1] == "doubt":
            pass
        elif _negated(low[i - 2], negators):
            valence *= N_SCALAR
    elif start_i == 2:
        if low[i - 3] == "never" and (low[i - 2] in ("so", "this") or low[i - 1] in ("so", "this")):
            valence *= 1.25
        elif low[i - 3] == "without" and "doubt" in (low[i - 2], low[i - 1]):
            pass
        elif _negated(low[i - 3], negators):
            valence *= N_SCALAR
    return valence


def _least_check(valence: float, low: list[str], i: int, valences: dict[str, float]) -> float:
    if i > 1 and low[i - 1] == "least" and low[i - 1] not in valences:
        if low[i - 2] not in ("at", "very"):
            valence *= N_SCALAR
    elif i > 0 and low[i - 1] == "least" and low[i - 1] not in valences:
        valence *= N_SCALAR
    return valence


def _token_valence(words: list[str], low: list[str], i: int, is_cap_diff: bool, lex: SentimentLexicon) -> float:
    item = low[i]
    if item not in lex.valences:
        return 0.0
    valence = lex.valences[item]
    # "no" acts as a negator of a following lexicon word, not as sentiment
    if item == "no" and i != len(low) - 1 and low[i + 1] in lex.valences:
        valence = 0.0
    if (
        (i > 0 and low[i - 1] == "no")
        or (i > 1 and low[i - 2] == "no")
        or (i > 2 and low[i - 3] == "no" and low[i - 1] in ("or", "nor"))
    ):
        valence = lex.valences[item] * N_SCALAR
    if words[i].isupper() and is_cap_diff:
        valence += C_INCR if valence > 0 else -C_INCR
    for start_i in range(3):
        if i > start_i and low[i - (start_i + 1)] not in lex.valences:
            scalar = _booster_scalar(words[i - (start_i + 1)], valence, is_cap_diff, lex.boosters)
            if start_i == 1 and scalar != 0:
                scalar *= 0.95
            if start_i == 2 and scalar != 0:
                scalar *= 0.9
            valence += scalar
            valence = _negation_check(valence, low, start_i, i, lex.negators)
    return _least_check(valence, low, i, lex.valences)


def _but_reweight(low: list[str], sentiments: list[float]) -> list[float]:
    if "but" not in low:
        return sentiments
    bi = low.index("but")
    return [
        s * 0.5 if si < bi else (s * 1.5 if si > bi else s)
        for si, s in enumerate(sentiments)
    ]


def _punctuation_emphasis(text: str) -> float:
    ep = min(text.count("!"), 4) * EP_UNIT
    qm_count = text.count("?")
    qm = 0.0
    if qm_count > 1:
        qm = qm_count * 0.18 if qm_count <= 3 else 0.96
    return ep + qm


def _normalize(score: float) -> float:
    norm = score / math.sqrt(score * score + ALPHA)
    return max(-1.0, min(1.0, norm))


def analyze(text: str, lexicon: SentimentLexicon | None = None) -> SentimentScores:
    """Score a text; empty or lexicon-free input is fully neutral."""
    lex = lexicon if lexicon is not None else default_sentiment_lexicon()
    words = _words(text)
    if not words:
        return NEUTRAL_SCORES
    low = [w.lower() for w in words]
    is_cap_diff = _allcap_differential(words)

    sentiments: list[float] = []
    for i in range(len(words)):
        if low[i] in lex.boosters:
            sentiments.append(0.0)
            continue
        if i < len(words) - 1 and low[i] == "kind" and low[i + 1] == "of":
            sentiments.append(0.0)
            continue
        sentiments.append(_token_valence(words, low, i, is_cap_diff, lex))
    sentiments = _but_reweight(low, sentiments)

    total = float(sum(sentiments))
    punct = _punctuation_emphasis(text)
    if total > 0:
        total += punct
    elif total < 0:
        total -= punct
    compound = _normalize(total)

    pos_sum = sum(s + 1.0 for s in sentiments if s > 0)
    neg_sum = sum(s - 1.0 for s in sentiments if s < 0)
    neu_count = sum(1 for s in sentiments if s == 0)
    if pos_sum > abs(neg_sum):
        pos_sum += punct
    elif pos_sum < abs(neg_sum):
        neg_sum -= punct
    mass = pos_sum + abs(neg_sum) + neu_count
    if mass == 0:
        return NEUTRAL_SCORES
    return SentimentScores(
        positive=abs(pos_sum / mass),
        negative=abs(neg_sum / mass),
        neutral=abs(neu_count / mass),
        compound=compound,
    )
