"""FNC-format corpus ingestion and per-stage binary dataset derivation.

A corpus is two CSV files: a stances file with headers
"Headline,Body ID,Stance" (Stance optional for prediction input) and a
bodies file with headers "Body ID,articleBody". Quoting follows RFC 4180;
bodies routinely contain embedded commas and newlines. Instance order is
preserved from file order and a loaded corpus is immutable.
"""

from __future__ import annotations

import csv
import json
import random
from dataclasses import dataclass
from enum import Enum
from pathlib import Path


class CorpusError(ValueError):
    """Malformed corpus input; message carries file and line context."""


class StanceLabel(Enum):
    UNRELATED = "unrelated"
    NEUTRAL = "discuss"
    AGREE = "agree"
    DISAGREE = "disagree"

    @classmethod
    def parse(cls, text: str) -> "StanceLabel":
        key = text.strip().lower()
        for label in cls:
            if key == label.value:
                return label
        raise CorpusError(f"unknown stance label {text!r}")

    @property
    def is_related(self) -> bool:
        return self is not StanceLabel.UNRELATED

    @property
    def is_stance(self) -> bool:
        return self in (StanceLabel.AGREE, StanceLabel.DISAGREE)

    def __str__(self) -> str:
        return self.value


LABEL_ORDER = (
    StanceLabel.AGREE,
    StanceLabel.DISAGREE,
    StanceLabel.NEUTRAL,
    StanceLabel.UNRELATED,
)


@dataclass(frozen=True)
class Instance:
    """One (claim, document, stance) triple; label is None for prediction input."""

    claim_text: str
    body_id: str
    body_text: str
    label: StanceLabel | None = None


@dataclass(frozen=True)
class Corpus:
    instances: tuple[Instance, ...]
    bodies: dict[str, str]

    def __len__(self) -> int:
        return len(self.instances)

    def label_counts(self) -> dict[str, int]:
        counts = {label.value: 0 for label in LABEL_ORDER}
        unlabeled = 0
        for inst in self.instances:
            if inst.label is None:
                unlabeled += 1
            else:
                counts[inst.label.value] += 1
        counts["unlabeled"] = unlabeled
        return counts

    def summary(self) -> str:
        counts = self.label_counts()
        parts = [f"{name}={counts[name]}" for name in counts if counts[name] or name != "unlabeled"]
        return f"{len(self.instances)} instances ({', '.join(parts)})"


class Stage(Enum):
    RELEVANCE = "relevance"
    NEUTRAL_STANCE = "neutral_stance"
    AGREE_DISAGREE = "agree_disagree"


@dataclass(frozen=True)
class BinaryDataset:
    """Positive/negative partition of admitted instances for one stage."""

    stage: Stage
    positives: tuple[Instance, ...]
    negatives: tuple[Instance, ...]
    positive_class_name: str
    negative_class_name: str

    def summary(self) -> str:
        return (
            f"{self.stage.value}: {len(self.negatives)} {self.negative_class_name} / "
            f"{len(self.positives)} {self.positive_class_name}"
        )


_STANCES_HEADER = ["Headline", "Body ID", "Stance"]
_BODIES_HEADER = ["Body ID", "articleBody"]


def _read_csv_rows(path: Path, expected_header: list[str], optional_last: bool):
    with path.open("r", encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise CorpusError(f"{path}: empty file, expected header {expected_header}") from None
        if header and header[0].startswith("﻿"):
            header[0] = header[0].lstrip("﻿")
        has_optional = True
        if header != expected_header:
            if optional_last and header == expected_header[:-1]:
                has_optional = False
            else:
                raise CorpusError(f"{path}: unexpected header {header}, expected {expected_header}")
        width = len(expected_header) if has_optional else len(expected_header) - 1
        rows = []
        for row in reader:
            if not row:
                continue
            if len(row) != width:
                raise CorpusError(
                    f"{path}: line {reader.line_num}: expected {width} fields, got {len(row)}"
                )
            rows.append((reader.line_num, row))
    return rows, has_optional


def load_bodies(bodies_path: str | Path) -> dict[str, str]:
    path = Path(bodies_path)
    if not path.exists():
        raise FileNotFoundError(path)
    rows, _ = _read_csv_rows(path, _BODIES_HEADER, optional_last=False)
    bodies: dict[str, str] = {}
    for lineno, (body_id, body_text) in rows:
        body_id = body_id.strip()
        if body_id in bodies:
            raise CorpusError(f"{path}: line {lineno}: duplicate body id {body_id!r}")
        bodies[body_id] = body_text
    return bodies


def load_corpus(
    stances_path: str | Path,
    bodies_path: str | Path,
    summary_json: str | Path | None = None,
    quiet: bool = False,
) -> Corpus:
    """Join every stance row to its body and report per-label counts.

    Raises CorpusError (with line numbers) on malformed rows, unresolvable
    body ids, unknown stance strings, duplicate (claim, body) pairs, or
    empty claims.
    """
    stances_path = Path(stances_path)
    if not stances_path.exists():
        raise FileNotFoundError(stances_path)
    bodies = load_bodies(bodies_path)
    rows, labeled = _read_csv_rows(stances_path, _STANCES_HEADER, optional_last=True)

    instances: list[Instance] = []
    seen: set[tuple[str, str]] = set()
    for lineno, row in rows:
        claim = row[0].strip()
        body_id = row[1].strip()
        if not claim:
            raise CorpusError(f"{stances_path}: line {lineno}: empty headline")
        if body_id not in bodies:
            raise CorpusError(f"{stances_path}: line {lineno}: unknown body id {body_id!r}")
        key = (claim, body_id)
        if key in seen:
            raise CorpusError(
                f"{stances_path}: line {lineno}: duplicate (headline, body id) pair {key!r}"
            )
        seen.add(key)
        label = None
        if labeled:
            try:
                label = StanceLabel.parse(row[2])
            except CorpusError as exc:
                raise CorpusError(f"{stances_path}: line {lineno}: {exc}") from None
        instances.append(Instance(claim_text=claim, body_id=body_id, body_text=bodies[body_id], label=label))

    corpus = Corpus(instances=tuple(instances), bodies=bodies)
    if not quiet:
        print(f"loaded {stances_path.name}: {corpus.summary()}")
    if summary_json is not None:
        payload = {"instances": len(corpus), "labels": corpus.label_counts()}
        Path(summary_json).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return corpus


def save_corpus(corpus: Corpus, stances_path: str | Path, bodies_path: str | Path) -> None:
    """Write a corpus back to the two-file CSV layout (RFC-4180 quoting)."""
    with Path(bodies_path).open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(_BODIES_HEADER)
        for body_id in corpus.bodies:
            writer.writerow([body_id, corpus.bodies[body_id]])
    labeled = any(inst.label is not None for inst in corpus.instances)
    with Path(stances_path).open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(_STANCES_HEADER if labeled else _STANCES_HEADER[:-1])
        for inst in corpus.instances:
            row = [inst.claim_text, inst.body_id]
            if labeled:
                row.append(inst.label.value)
            writer.writerow(row)


def derive_stage_dataset(corpus: Corpus, stage: Stage) -> BinaryDataset:
    """Partition a labeled corpus into the binary dataset for one stage.

    Relevance: related vs unrelated over all instances. Neutral/stance:
    stance vs neutral over related instances. Agree/disagree: disagree vs
    agree over stance instances.
    """
    for inst in corpus.instances:
        if inst.label is None:
            raise CorpusError("cannot derive stage datasets from an unlabeled corpus")

    if stage is Stage.RELEVANCE:
        positives = tuple(i for i in corpus.instances if i.label.is_related)
        negatives = tuple(i for i in corpus.instances if not i.label.is_related)
        names = ("related", "unrelated")
    elif stage is Stage.NEUTRAL_STANCE:
        positives = tuple(i for i in corpus.instances if i.label.is_stance)
        negatives = tuple(i for i in corpus.instances if i.label is StanceLabel.NEUTRAL)
        names = ("stance", "neutral")
    else:
        positives = tuple(i for i in corpus.instances if i.label is StanceLabel.DISAGREE)
        negatives = tuple(i for i in corpus.instances if i.label is StanceLabel.AGREE)
        names = ("disagree", "agree")
    return BinaryDataset(
        stage=stage,
        positives=positives,
        negatives=negatives,
        positive_class_name=names[0],
        negative_class_name=names[1],
    )


def stratified_split(
    dataset: BinaryDataset, holdout_fraction: float, seed: int
) -> tuple[BinaryDataset, BinaryDataset]:
    """Split into (rest, holdout) preserving class proportions within one
    instance. Deterministic for a fixed seed."""
    if not 0.0 < holdout_fraction < 1.0:
        raise ValueError(f"holdout fraction must be in (0, 1), got {holdout_fraction}")
    for name, group in (
        (dataset.positive_class_name, dataset.positives),
        (dataset.negative_class_name, dataset.negatives),
    ):
        if len(group) < 2:
            raise ValueError(
                f"class {name!r} has {len(group)} instances; need at least 2 to split"
            )
    rng = random.Random(seed)

    def split_group(group):
        indices = list(range(len(group)))
        rng.shuffle(indices)
        n_holdout = int(len(group) * holdout_fraction + 0.5)
        n_holdout = min(max(n_holdout, 1), len(group) - 1)
        held = frozenset(indices[:n_holdout])
        rest = tuple(g for i, g in enumerate(group) if i not in held)
        out = tuple(g for i, g in enumerate(group) if i in held)
        return rest, out

    pos_rest, pos_out = split_group(dataset.positives)
    neg_rest, neg_out = split_group(dataset.negatives)

    def make(pos, neg):
        return BinaryDataset(
            stage=dataset.stage,
            positives=pos,
            negatives=neg,
            positive_class_name=dataset.positive_class_name,
            negative_class_name=dataset.negative_class_name,
        )

    return make(pos_rest, neg_rest), make(pos_out, neg_out)
