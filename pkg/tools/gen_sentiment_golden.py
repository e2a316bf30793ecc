#!/usr/bin/env python3
"""Freeze the sentiment-fidelity fixtures: a 200-sentence news-style
sample and the reference oracle's compound scores for it.

Run from the repository root:  python3 tools/gen_sentiment_golden.py
The golden file is generated once and checked in; the test suite only
reads it.
"""

from __future__ import annotations

import random
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))
sys.path.insert(0, str(ROOT / "tests"))

from oracles.vader_reference import analyzer_from_package_data  # noqa: E402

OUT_DIR = ROOT / "tests" / "data"

SUBJECTS = [
    "the mayor", "city officials", "the company", "federal regulators",
    "the research team", "local reporters", "the spokesman", "union leaders",
    "the airline", "hospital staff", "the committee", "state police",
]
TOPICS = [
    "the merger", "the outbreak", "the election results", "the budget cuts",
    "the new policy", "the data breach", "the recall", "the settlement",
    "the leaked report", "the investigation",
]

TEMPLATES = [
    "{S} confirmed {T} on Monday.",
    "{S} denied {T} after weeks of speculation.",
    "{S} said {T} was a great success.",
    "{S} called {T} a complete disaster.",
    "{S} praised the response to {T}.",
    "{S} warned that {T} could cause serious harm.",
    "{S} announced {T} without further comment.",
    "{S} described {T} as very promising.",
    "{S} rejected claims about {T} as bogus.",
    "{S} admitted that {T} was a terrible mistake.",
    "{S} refused to discuss {T}.",
    "{S} celebrated {T} with supporters.",
    "{S} said the evidence about {T} was not credible.",
    "{S} insisted {T} was absolutely true.",
    "{S} said {T} was a hoax and a fraud.",
    "{S} feared {T} would fail badly.",
    "{S} reported modest progress on {T}.",
    "{S} was extremely happy about {T}.",
    "{S} was not happy about {T}.",
    "{S} said {T} is good news for everyone.",
    "{S} said {T} is bad news for the region.",
    "{S} doubted {T} would ever succeed.",
    "Is {T} really a crisis, as {S} claimed?",
    "Why did {S} hide the truth about {T}??",
    "{S} won widespread praise for handling {T}!",
    "{S} lost all credibility over {T}!!",
    "{S} said {T} was GREAT news.",
    "{S} said {T} was a TERRIBLE failure.",
    "{S} liked the plan, but criticized {T}.",
    "{S} opposed {T}, but welcomed the review.",
    "The outcome of {T} pleased {S}.",
    "The collapse of {T} alarmed {S}.",
    "{S} never trusted {T}.",
    "{S} hardly improved {T}.",
    "{S} barely survived the fallout from {T}.",
    "{S} strongly supported {T}.",
    "{S} said nothing about {T}.",
    "{S} released new figures on {T} today.",
    "{S} scheduled a hearing on {T} for next week.",
    "{S} published a detailed timeline of {T}.",
]


def build_sentences(n: int = 200) -> list[str]:
    rng = random.Random(20240214)
    sentences = []
    seen = set()
    while len(sentences) < n:
        template = rng.choice(TEMPLATES)
        subject = rng.choice(SUBJECTS)
        topic = rng.choice(TOPICS)
        sentence = template.format(S=subject[0].upper() + subject[1:], T=topic)
        if sentence not in seen:
            seen.add(sentence)
            sentences.append(sentence)
    return sentences


def main() -> None:
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    sentences = build_sentences()
    (OUT_DIR / "sentiment_sentences.txt").write_text(
        "\n".join(sentences) + "\n", encoding="utf-8"
    )
    oracle = analyzer_from_package_data()
    lines = []
    for sentence in sentences:
        scores = oracle.polarity_scores(sentence)
        lines.append(f"{scores['compound']}\t{scores['pos']}\t{scores['neg']}\t{scores['neu']}")
    (OUT_DIR / "sentiment_golden.tsv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(sentences)} sentences and golden scores to {OUT_DIR}")


if __name__ == "__main__":
    main()
