"""Deterministic synthetic corpus and embedding builder for desk-scale runs.

Generates claim/document pairs in the four-class stance layout with the
lexical structure the cascade exploits: related bodies reuse the claim's
content words, stance bodies carry confirming or refuting markers in
their opening sentences, and unrelated bodies are drawn from a different
topic. The companion embedding table places topic words on shared topic
directions and stance markers on marker directions, so both overlap
features and the convolutional stage have learnable signal.

Everything is seeded; identical seeds give byte-identical corpora and
embedding files.
"""

from __future__ import annotations

import hashlib
import random
from pathlib import Path

import numpy as np

from .corpus import Corpus, Instance, StanceLabel, save_corpus
from .embeddings import EmbeddingFormat, EmbeddingTable, save_embeddings
from .textproc import tokenize

# subject, verb, past form, object phrase, place, extra nouns
TOPICS = [
    ("Kentucky Fried Chicken", "sell", "sold", "marijuana burgers", "Colorado", "menu franchise restaurant"),
    ("Apple", "release", "released", "solar powered phones", "California", "battery device gadget"),
    ("NASA", "launch", "launched", "a manned mars mission", "Florida", "rocket orbit astronaut"),
    ("Russia", "ban", "banned", "all foreign films", "Moscow", "cinema directors theater"),
    ("Microsoft", "acquire", "acquired", "a robotics startup", "Seattle", "software engineers campus"),
    ("The Mayor", "close", "closed", "every public library", "Springfield", "books council budget"),
    ("Scientists", "discover", "discovered", "a cure for baldness", "Geneva", "laboratory trial patients"),
    ("Amazon", "open", "opened", "drone delivery hubs", "Nevada", "warehouse parcels logistics"),
    ("The Senate", "approve", "approved", "a four day work week", "Washington", "bill vote lawmakers"),
    ("Toyota", "build", "built", "flying taxi prototypes", "Tokyo", "factory engineers vehicles"),
    ("Doctors", "prescribe", "prescribed", "chocolate for heart health", "Zurich", "clinic study patients"),
    ("The Zoo", "import", "imported", "a white rhino pair", "Sydney", "habitat keepers conservation"),
    ("Samsung", "unveil", "unveiled", "transparent televisions", "Seoul", "display screens showcase"),
    ("Farmers", "grow", "grew", "square watermelons", "Kyoto", "harvest fields greenhouse"),
    ("The Airline", "cancel", "cancelled", "all overnight flights", "Dublin", "passengers routes schedule"),
    ("Spain", "host", "hosted", "the winter olympics", "Madrid", "stadium athletes ceremony"),
    ("The University", "abolish", "abolished", "written examinations", "Oxford", "students professors curriculum"),
    ("Netflix", "produce", "produced", "an interactive news show", "Hollywood", "series episodes streaming"),
    ("The Navy", "recover", "recovered", "a sunken treasure ship", "Lisbon", "divers wreck expedition"),
    ("Volcanologists", "predict", "predicted", "a major eruption", "Iceland", "lava sensors magma"),
]

CLAIM_TEMPLATES = [
    "{subject} will {verb} {object} in {place}",
    "{subject} {past} {object} near {place}",
    "{subject} plans to {verb} {object}",
    "{subject} to {verb} {object} this year",
]

NEUTRAL_OPENERS = [
    "A recent report discusses whether {subject} will {verb} {object}.",
    "Sources are examining the claim that {subject} {past} {object}.",
    "The story about {subject} and {object} is circulating widely.",
    "Officials in {place} are reviewing the report about {object}.",
]
AGREE_OPENERS = [
    "Officials confirmed that {subject} will {verb} {object}.",
    "It is true that {subject} {past} {object} in {place}.",
    "Experts verified the report about {object}, calling it accurate and genuine.",
    "A spokesman agreed that the story about {object} is correct and supported by evidence.",
]
DISAGREE_OPENERS = [
    "Officials denied that {subject} will {verb} {object}.",
    "The story about {object} is a hoax, experts in {place} say.",
    "Reporters debunked the false claim that {subject} {past} {object}.",
    "A spokesman called the report about {object} bogus and fraudulent.",
]

TOPIC_MIDDLES = [
    "The {place} office released a statement about {object}.",
    "Residents of {place} have followed the {object} story for weeks.",
    "{subject} has a long history with {extra0}.",
    "People close to the {extra1} said the matter involves {object}.",
    "The {extra2} angle has drawn attention in {place}.",
]
NOISE_MIDDLES = [
    "More details are expected later this week.",
    "The announcement attracted wide attention online.",
    "Local media covered the development extensively.",
    "A press conference has been scheduled for next month.",
]
CLOSERS = {
    StanceLabel.NEUTRAL: [
        "It remains unclear what will happen next.",
        "Observers say the situation is still developing.",
    ],
    StanceLabel.AGREE: [
        "Analysts said the evidence supports the claim.",
        "Independent reviewers confirmed the account is true.",
    ],
    StanceLabel.DISAGREE: [
        "Analysts said the claim is false and without merit.",
        "Fact checkers rated the story fake.",
    ],
}

AGREE_MARKERS = "confirmed true verified accurate genuine correct supported evidence agreed confirms".split()
DISAGREE_MARKERS = "denied hoax debunked false fake bogus fraudulent fact checkers merit".split()
NEUTRAL_MARKERS = "discusses examining circulating reviewing unclear developing report sources".split()


def _fields(topic) -> dict[str, str]:
    subject, verb, past, obj, place, extras = topic
    extra = extras.split()
    return {
        "subject": subject,
        "verb": verb,
        "past": past,
        "object": obj,
        "place": place,
        "extra0": extra[0],
        "extra1": extra[1],
        "extra2": extra[2],
    }


def _claim(rng: random.Random, topic) -> str:
    return rng.choice(CLAIM_TEMPLATES).format(**_fields(topic))


def _body(rng: random.Random, topic, label: StanceLabel) -> str:
    fields = _fields(topic)
    if label is StanceLabel.AGREE:
        opener = rng.choice(AGREE_OPENERS)
    elif label is StanceLabel.DISAGREE:
        opener = rng.choice(DISAGREE_OPENERS)
    else:
        opener = rng.choice(NEUTRAL_OPENERS)
    middles = rng.sample(TOPIC_MIDDLES, k=2) + [rng.choice(NOISE_MIDDLES)]
    rng.shuffle(middles)
    closer_label = label if label in CLOSERS else StanceLabel.NEUTRAL
    closer = rng.choice(CLOSERS[closer_label])
    sentences = [opener] + middles + [closer]
    return " ".join(s.format(**fields) for s in sentences)


def build_demo_corpus(counts: dict[StanceLabel, int], seed: int, body_id_start: int = 1) -> Corpus:
    """Synthetic labeled corpus with the requested per-label counts."""
    rng = random.Random(seed)
    instances = []
    bodies: dict[str, str] = {}
    next_id = body_id_start
    order = []
    for label in (StanceLabel.UNRELATED, StanceLabel.NEUTRAL, StanceLabel.AGREE, StanceLabel.DISAGREE):
        order += [label] * counts.get(label, 0)
    rng.shuffle(order)

    for label in order:
        topic_i = rng.randrange(len(TOPICS))
        claim = _claim(rng, TOPICS[topic_i])
        if label is StanceLabel.UNRELATED:
            other = rng.randrange(len(TOPICS) - 1)
            if other >= topic_i:
                other += 1
            body = _body(rng, TOPICS[other], StanceLabel.NEUTRAL)
        else:
            body = _body(rng, TOPICS[topic_i], label)
        body_id = str(next_id)
        next_id += 1
        bodies[body_id] = body
        instances.append(Instance(claim_text=claim, body_id=body_id, body_text=body, label=label))
    return Corpus(instances=tuple(instances), bodies=bodies)


MINI_TRAIN = {
    StanceLabel.UNRELATED: 80,
    StanceLabel.NEUTRAL: 60,
    StanceLabel.AGREE: 36,
    StanceLabel.DISAGREE: 24,
}
DESK_TRAIN = {
    StanceLabel.UNRELATED: 500,
    StanceLabel.NEUTRAL: 320,
    StanceLabel.AGREE: 220,
    StanceLabel.DISAGREE: 120,
}
DESK_TEST = {
    StanceLabel.UNRELATED: 170,
    StanceLabel.NEUTRAL: 105,
    StanceLabel.AGREE: 75,
    StanceLabel.DISAGREE: 40,
}


def _token_rng(token: str) -> np.random.Generator:
    digest = hashlib.sha256(token.encode("utf-8")).digest()
    return np.random.default_rng(int.from_bytes(digest[:8], "little"))


def _unit(v: np.ndarray) -> np.ndarray:
    norm = np.linalg.norm(v)
    return v / norm if norm else v


def build_demo_embeddings(vocabulary, dimension: int = 25) -> EmbeddingTable:
    """Embeddings with topic/marker structure over the given vocabulary.

    Each topic and each marker family gets a fixed direction; member
    tokens sit near it, every other token gets its own stable noise
    vector derived from a hash of its spelling.
    """
    dir_rng = np.random.default_rng(20240901)
    directions = [_unit(dir_rng.normal(size=dimension)) for _ in range(len(TOPICS) + 3)]

    token_dir: dict[str, np.ndarray] = {}
    for topic_i, topic in enumerate(TOPICS):
        for text in (topic[0], topic[1], topic[2], topic[3], topic[4], topic[5]):
            for token in tokenize(text).tokens:
                token_dir.setdefault(token, directions[topic_i])
    for marker_set, offset in ((AGREE_MARKERS, 0), (DISAGREE_MARKERS, 1), (NEUTRAL_MARKERS, 2)):
        for token in marker_set:
            token_dir[token] = directions[len(TOPICS) + offset]

    vectors: dict[str, np.ndarray] = {}
    for token in sorted(set(vocabulary)):
        noise = _unit(_token_rng(token).normal(size=dimension))
        base = token_dir.get(token)
        vec = _unit(0.75 * base + 0.25 * noise) if base is not None else noise
        vectors[token] = vec.astype(np.float32)
    return EmbeddingTable(dimension, vectors)


def corpus_vocabulary(*corpora: Corpus) -> set[str]:
    vocab: set[str] = set()
    for corpus in corpora:
        for inst in corpus.instances:
            vocab.update(tokenize(inst.claim_text).tokens)
        for body in corpus.bodies.values():
            vocab.update(tokenize(body).tokens)
    return vocab


def write_demo_workspace(
    out_dir: str | Path,
    train_counts: dict[StanceLabel, int] | None = None,
    test_counts: dict[StanceLabel, int] | None = None,
    seed: int = 7,
    dimension: int = 25,
) -> dict[str, Path]:
    """Write corpus CSVs and an embedding file; returns the path map."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    train_counts = train_counts or DESK_TRAIN
    test_counts = test_counts or DESK_TEST

    train = build_demo_corpus(train_counts, seed=seed)
    test = build_demo_corpus(test_counts, seed=seed + 1, body_id_start=100000)
    table = build_demo_embeddings(corpus_vocabulary(train, test), dimension)

    paths = {
        "train_stances": out_dir / "train_stances.csv",
        "train_bodies": out_dir / "train_bodies.csv",
        "test_stances": out_dir / "test_stances.csv",
        "test_bodies": out_dir / "test_bodies.csv",
        "embeddings": out_dir / "embeddings.txt",
    }
    save_corpus(train, paths["train_stances"], paths["train_bodies"])
    save_corpus(test, paths["test_stances"], paths["test_bodies"])
    save_embeddings(table, paths["embeddings"], EmbeddingFormat.WORD2VEC_TEXT)
    return paths
