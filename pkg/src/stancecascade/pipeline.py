"""Three-stage cascade orchestration: training, inference, evaluation.

Stage training is gold-filtered: stage 2 trains on instances whose gold
label is related, stage 3 on gold stance instances, independent of
upstream model quality. Inference halts at the first negative stage
(unrelated, then neutral), otherwise stage 3 decides agree/disagree.

A trained pipeline persists as a directory of three model files, the
document-frequency table backing keyword extraction, and a manifest of
resource hashes; loading verifies the hashes to prevent resource skew.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

from . import cnn as cnn_mod
from . import features as feat
from . import metrics as metrics_mod
from . import modelio
from .corpus import BinaryDataset, Corpus, CorpusError, Stage, StanceLabel, derive_stage_dataset, stratified_split
from .embeddings import EmbeddingFormat, EmbeddingTable, load_embeddings
from .features import CategoryLexicon, fit_scaler, load_category_lexicon, load_refuting_words
from .sentiment import SentimentLexicon, load_sentiment_lexicon
from .svm import LabeledVector, SvmConfig, SvmModel, inverse_frequency_alphas, svm_decision, svm_predict, train_svm
from .textproc import (
    DocumentFrequencyTable,
    KeywordProvider,
    KeywordProviderConfig,
    _data_path,
    build_df_table,
    load_stopwords,
)

MANIFEST_VERSION = 1
RESOURCE_KEYS = (
    "embeddings",
    "sentiment_lexicon",
    "boosters",
    "dampeners",
    "negators",
    "category_lexicon",
    "refuting_words",
    "stopwords",
)


class ResourceMismatchError(RuntimeError):
    """A resource file hash differs from the one recorded at training time."""


class TrainingError(RuntimeError):
    pass


@dataclass
class ResourcePaths:
    embeddings: Path
    embeddings_format: EmbeddingFormat = EmbeddingFormat.WORD2VEC_TEXT
    sentiment_lexicon: Path = field(default_factory=lambda: _data_path("sentiment_lexicon.txt"))
    boosters: Path = field(default_factory=lambda: _data_path("boosters.txt"))
    dampeners: Path = field(default_factory=lambda: _data_path("dampeners.txt"))
    negators: Path = field(default_factory=lambda: _data_path("negators.txt"))
    category_lexicon: Path = field(default_factory=lambda: _data_path("category_lexicon.txt"))
    refuting_words: Path = field(default_factory=lambda: _data_path("refuting_words.txt"))
    stopwords: Path = field(default_factory=lambda: _data_path("stopwords.txt"))


@dataclass
class Resources:
    embedding_table: EmbeddingTable
    sentiment_lexicon: SentimentLexicon
    category_lexicon: CategoryLexicon
    refuting_words: tuple[str, ...]
    stopwords: frozenset[str]
    keyword_config: KeywordProviderConfig
    hashes: dict[str, str]

    @classmethod
    def load(cls, paths: ResourcePaths, keyword_config: KeywordProviderConfig | None = None) -> "Resources":
        hashes = {
            "embeddings": modelio.sha256_file(paths.embeddings),
            "sentiment_lexicon": modelio.sha256_file(paths.sentiment_lexicon),
            "boosters": modelio.sha256_file(paths.boosters),
            "dampeners": modelio.sha256_file(paths.dampeners),
            "negators": modelio.sha256_file(paths.negators),
            "category_lexicon": modelio.sha256_file(paths.category_lexicon),
            "refuting_words": modelio.sha256_file(paths.refuting_words),
            "stopwords": modelio.sha256_file(paths.stopwords),
        }
        return cls(
            embedding_table=load_embeddings(paths.embeddings, paths.embeddings_format),
            sentiment_lexicon=load_sentiment_lexicon(
                paths.sentiment_lexicon, paths.boosters, paths.dampeners, paths.negators
            ),
            category_lexicon=load_category_lexicon(paths.category_lexicon),
            refuting_words=load_refuting_words(paths.refuting_words),
            stopwords=load_stopwords(paths.stopwords),
            keyword_config=keyword_config or KeywordProviderConfig(),
            hashes=hashes,
        )


@dataclass
class StageSvmParams:
    """SVM stage hyperparameters; missing penalties resolve to inverse
    class frequency at training time."""

    alpha_pos: float | None = None
    alpha_neg: float | None = None
    epochs: int = 200
    learning_rate: float = 0.01
    seed: int = 0
    tolerance: float = 1e-6

    def resolve(self, n_pos: int, n_neg: int) -> SvmConfig:
        alpha_pos, alpha_neg = self.alpha_pos, self.alpha_neg
        if alpha_pos is None or alpha_neg is None:
            default_pos, default_neg = inverse_frequency_alphas(n_pos, n_neg)
            alpha_pos = alpha_pos if alpha_pos is not None else default_pos
            alpha_neg = alpha_neg if alpha_neg is not None else default_neg
        return SvmConfig(
            alpha_pos=alpha_pos,
            alpha_neg=alpha_neg,
            epochs=self.epochs,
            learning_rate=self.learning_rate,
            seed=self.seed,
            tolerance=self.tolerance,
        )


@dataclass
class PipelineConfig:
    stage1: StageSvmParams = field(default_factory=StageSvmParams)
    stage2: cnn_mod.CnnConfig | None = None   # None: defaults with d from the table
    stage3: StageSvmParams = field(default_factory=StageSvmParams)
    validation_fraction: float = 0.1
    split_seed: int = 0

    def stage2_config(self, table: EmbeddingTable) -> cnn_mod.CnnConfig:
        if self.stage2 is None:
            return cnn_mod.CnnConfig(d=table.dimension)
        if self.stage2.d != table.dimension:
            raise ValueError(
                f"stage-2 config d={self.stage2.d} != embedding dimension {table.dimension}"
            )
        return self.stage2


@dataclass(frozen=True)
class StageTrace:
    """Per-stage raw outputs for one prediction; later fields are absent
    when the cascade halted earlier."""

    stage1_decision: float
    stage2_probability: float | None
    stage3_decision: float | None
    final_label: StanceLabel

    def __post_init__(self) -> None:
        if self.stage3_decision is not None and self.stage2_probability is None:
            raise ValueError("trace has a stage-3 value without a stage-2 value")


@dataclass
class PipelineModel:
    stage1: SvmModel
    stage2: cnn_mod.CnnModel
    stage3: SvmModel
    df_table: DocumentFrequencyTable
    keyword_k: int
    manifest: dict[str, str]

    def keyword_provider(self, resources: Resources) -> KeywordProvider:
        config = replace(resources.keyword_config, k=self.keyword_k)
        return KeywordProvider(config, df_table=self.df_table, stopwords=resources.stopwords)


def _stage1_vectors(instances, resources: Resources, provider: KeywordProvider, workers: int = 1):
    def one(inst):
        return feat.stage1_features(
            inst.claim_text, inst.body_text, resources.embedding_table, provider
        )

    return _ordered_map(one, instances, workers)


def _stage3_vectors(instances, resources: Resources, workers: int = 1):
    def one(inst):
        return feat.stage3_features(
            inst.claim_text,
            inst.body_text,
            resources.sentiment_lexicon,
            resources.category_lexicon,
            resources.refuting_words,
        )

    return _ordered_map(one, instances, workers)


def _ordered_map(fn, items, workers: int):
    items = list(items)
    if workers <= 1 or len(items) < 2:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _train_stage_svm(dataset: BinaryDataset, vectors_pos, vectors_neg, params: StageSvmParams, stage_name: str) -> SvmModel:
    if not dataset.positives or not dataset.negatives:
        missing = dataset.positive_class_name if not dataset.positives else dataset.negative_class_name
        raise TrainingError(f"{stage_name}: no {missing!r} training instances")
    config = params.resolve(len(dataset.positives), len(dataset.negatives))
    scaler = fit_scaler(list(vectors_pos) + list(vectors_neg))
    data = [LabeledVector(x=feat.apply_scaler(scaler, v), y=+1) for v in vectors_pos]
    data += [LabeledVector(x=feat.apply_scaler(scaler, v), y=-1) for v in vectors_neg]
    return train_svm(data, config, scaler)


def train_pipeline(
    train_corpus: Corpus,
    config: PipelineConfig,
    resources: Resources,
    workers: int = 1,
    loss_csv: str | Path | None = None,
    quiet: bool = False,
) -> PipelineModel:
    """Train all three stages on gold-filtered data; deterministic given seeds."""
    if not len(train_corpus):
        raise TrainingError("training corpus is empty")
    texts = list(train_corpus.bodies.values()) + [i.claim_text for i in train_corpus.instances]
    df_table = build_df_table(texts)
    provider = KeywordProvider(
        resources.keyword_config, df_table=df_table, stopwords=resources.stopwords
    )

    relevance = derive_stage_dataset(train_corpus, Stage.RELEVANCE)
    neutral_stance = derive_stage_dataset(train_corpus, Stage.NEUTRAL_STANCE)
    agree_disagree = derive_stage_dataset(train_corpus, Stage.AGREE_DISAGREE)
    if not quiet:
        for ds in (relevance, neutral_stance, agree_disagree):
            print("stage dataset " + ds.summary())
    for name, ds in (
        ("stage 1 (relevance)", relevance),
        ("stage 2 (neutral/stance)", neutral_stance),
        ("stage 3 (agree/disagree)", agree_disagree),
    ):
        if not ds.positives or not ds.negatives:
            missing = ds.positive_class_name if not ds.positives else ds.negative_class_name
            raise TrainingError(f"{name}: no {missing!r} instances in the training corpus")

    stage1 = _train_stage_svm(
        relevance,
        _stage1_vectors(relevance.positives, resources, provider, workers),
        _stage1_vectors(relevance.negatives, resources, provider, workers),
        config.stage1,
        "stage 1 (relevance)",
    )

    cnn_config = config.stage2_config(resources.embedding_table)
    train_ds, holdout_ds = neutral_stance, None
    if config.validation_fraction > 0 and min(len(neutral_stance.positives), len(neutral_stance.negatives)) >= 2:
        train_ds, holdout_ds = stratified_split(
            neutral_stance, config.validation_fraction, config.split_seed
        )

    def cnn_rows(ds: BinaryDataset):
        rows = [(i.claim_text, i.body_text, cnn_mod.CLASS_STANCE) for i in ds.positives]
        rows += [(i.claim_text, i.body_text, cnn_mod.CLASS_NEUTRAL) for i in ds.negatives]
        return rows

    stage2 = cnn_mod.train_cnn(
        cnn_rows(train_ds),
        resources.embedding_table,
        cnn_config,
        lexicon=resources.sentiment_lexicon,
        validation_data=cnn_rows(holdout_ds) if holdout_ds is not None else None,
        loss_csv=loss_csv,
    )

    stage3 = _train_stage_svm(
        agree_disagree,
        _stage3_vectors(agree_disagree.positives, resources, workers),
        _stage3_vectors(agree_disagree.negatives, resources, workers),
        config.stage3,
        "stage 3 (agree/disagree)",
    )

    manifest = {"format_version": str(MANIFEST_VERSION)}
    for key in RESOURCE_KEYS:
        manifest[f"resource_{key}"] = resources.hashes[key]
    manifest["stage1_schema"] = stage1.schema_id
    manifest["stage3_schema"] = stage3.schema_id
    manifest["keywords_k"] = str(resources.keyword_config.k)
    manifest["keywords_mode"] = resources.keyword_config.mode.value

    return PipelineModel(
        stage1=stage1,
        stage2=stage2,
        stage3=stage3,
        df_table=df_table,
        keyword_k=resources.keyword_config.k,
        manifest=manifest,
    )


def predict(model: PipelineModel, claim: str, body: str, resources: Resources) -> tuple[StanceLabel, StageTrace]:
    """Run the cascade on one (claim, body) pair."""
    provider = model.keyword_provider(resources)
    s1 = feat.stage1_features(claim, body, resources.embedding_table, provider)
    d1 = svm_decision(model.stage1, s1)
    if d1 < 0:
        trace = StageTrace(d1, None, None, StanceLabel.UNRELATED)
        return StanceLabel.UNRELATED, trace

    c, d, s_c, s_d = cnn_mod.embed_inputs(
        resources.embedding_table, claim, body, model.stage2.config, resources.sentiment_lexicon
    )
    p_stance = float(cnn_mod.cnn_forward(model.stage2, c, d, s_c, s_d).probs[cnn_mod.CLASS_STANCE])
    if p_stance < 0.5:
        trace = StageTrace(d1, p_stance, None, StanceLabel.NEUTRAL)
        return StanceLabel.NEUTRAL, trace

    s3 = feat.stage3_features(
        claim, body, resources.sentiment_lexicon, resources.category_lexicon, resources.refuting_words
    )
    d3 = svm_decision(model.stage3, s3)
    label = StanceLabel.DISAGREE if d3 >= 0 else StanceLabel.AGREE
    return label, StageTrace(d1, p_stance, d3, label)


def evaluate(
    model: PipelineModel,
    test_corpus: Corpus,
    resources: Resources,
    workers: int = 1,
) -> metrics_mod.EvalReport:
    """Cascade predictions plus per-stage confusion matrices computed in
    isolation on gold-filtered inputs."""
    if not len(test_corpus):
        raise CorpusError("evaluation corpus is empty")
    for inst in test_corpus.instances:
        if inst.label is None:
            raise CorpusError("evaluation corpus contains unlabeled instances")

    provider = model.keyword_provider(resources)

    def stage_values(inst):
        s1 = feat.stage1_features(inst.claim_text, inst.body_text, resources.embedding_table, provider)
        d1 = svm_decision(model.stage1, s1)
        p_stance = None
        d3 = None
        if d1 >= 0 or inst.label.is_related:
            c, d, s_c, s_d = cnn_mod.embed_inputs(
                resources.embedding_table,
                inst.claim_text,
                inst.body_text,
                model.stage2.config,
                resources.sentiment_lexicon,
            )
            p_stance = float(
                cnn_mod.cnn_forward(model.stage2, c, d, s_c, s_d).probs[cnn_mod.CLASS_STANCE]
            )
        if (d1 >= 0 and p_stance is not None and p_stance >= 0.5) or inst.label.is_stance:
            s3 = feat.stage3_features(
                inst.claim_text,
                inst.body_text,
                resources.sentiment_lexicon,
                resources.category_lexicon,
                resources.refuting_words,
            )
            d3 = svm_decision(model.stage3, s3)
        return d1, p_stance, d3

    values = _ordered_map(stage_values, test_corpus.instances, workers)

    predictions: list[StanceLabel] = []
    golds: list[StanceLabel] = []
    counts = {"stage1_negative": 0, "stage2_negative": 0, "stage3_agree": 0, "stage3_disagree": 0}
    stage1_pairs: list[tuple[str, str]] = []
    stage2_pairs: list[tuple[str, str]] = []
    stage3_pairs: list[tuple[str, str]] = []

    for inst, (d1, p_stance, d3) in zip(test_corpus.instances, values):
        golds.append(inst.label)
        if d1 < 0:
            predictions.append(StanceLabel.UNRELATED)
            counts["stage1_negative"] += 1
        elif p_stance < 0.5:
            predictions.append(StanceLabel.NEUTRAL)
            counts["stage2_negative"] += 1
        elif d3 >= 0:
            predictions.append(StanceLabel.DISAGREE)
            counts["stage3_disagree"] += 1
        else:
            predictions.append(StanceLabel.AGREE)
            counts["stage3_agree"] += 1

        stage1_pairs.append(
            ("related" if inst.label.is_related else "unrelated", "related" if d1 >= 0 else "unrelated")
        )
        if inst.label.is_related:
            stage2_pairs.append(
                ("stance" if inst.label.is_stance else "neutral", "stance" if p_stance >= 0.5 else "neutral")
            )
        if inst.label.is_stance:
            stage3_pairs.append(
                (inst.label.value, "disagree" if d3 >= 0 else "agree")
            )

    stage_matrices = {
        "stage1": metrics_mod.ConfusionMatrix.from_pairs(
            [g for g, _ in stage1_pairs], [p for _, p in stage1_pairs], ("unrelated", "related")
        ),
        "stage2": metrics_mod.ConfusionMatrix.from_pairs(
            [g for g, _ in stage2_pairs], [p for _, p in stage2_pairs], ("neutral", "stance")
        ),
        "stage3": metrics_mod.ConfusionMatrix.from_pairs(
            [g for g, _ in stage3_pairs], [p for _, p in stage3_pairs], ("agree", "disagree")
        ),
    }
    return metrics_mod.EvalReport.from_predictions(
        golds, predictions, stage_matrices=stage_matrices, cascade_counts=counts
    )


# ---------------------------------------------------------------------------
# persistence

_DF_HEADER = "n_docs"


def _save_df_table(table: DocumentFrequencyTable, path: Path) -> None:
    lines = [f"{_DF_HEADER} {table.n_docs}"]
    lines += [f"{token}\t{count}" for token, count in sorted(table.df.items())]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _load_df_table(path: Path) -> DocumentFrequencyTable:
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines or not lines[0].startswith(_DF_HEADER):
        raise ResourceMismatchError(f"{path}: malformed document-frequency table")
    n_docs = int(lines[0].split()[1])
    df: dict[str, int] = {}
    for line in lines[1:]:
        if line:
            token, count = line.split("\t")
            df[token] = int(count)
    return DocumentFrequencyTable(df=df, n_docs=n_docs)


def save_pipeline(model: PipelineModel, directory: str | Path) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    modelio.save_svm(model.stage1, directory / "stage1.model")
    modelio.save_cnn(model.stage2, directory / "stage2.model")
    modelio.save_svm(model.stage3, directory / "stage3.model")
    _save_df_table(model.df_table, directory / "df_table.txt")

    manifest = dict(model.manifest)
    for name in ("stage1.model", "stage2.model", "stage3.model", "df_table.txt"):
        manifest[f"file_{name}"] = modelio.sha256_file(directory / name)
    lines = [f"{key}={manifest[key]}" for key in sorted(manifest)]
    (directory / "manifest").write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_pipeline(directory: str | Path, resources: Resources) -> PipelineModel:
    """Load a pipeline directory, verifying resource and file hashes."""
    directory = Path(directory)
    manifest_path = directory / "manifest"
    if not manifest_path.exists():
        raise FileNotFoundError(manifest_path)
    manifest: dict[str, str] = {}
    for line in manifest_path.read_text(encoding="utf-8").splitlines():
        if line.strip():
            key, _, value = line.partition("=")
            manifest[key] = value

    version = int(manifest.get("format_version", "0"))
    if version > MANIFEST_VERSION:
        raise ResourceMismatchError(
            f"{manifest_path}: manifest version {version} is newer than supported {MANIFEST_VERSION}"
        )
    for key in RESOURCE_KEYS:
        recorded = manifest.get(f"resource_{key}")
        actual = resources.hashes.get(key)
        if recorded != actual:
            raise ResourceMismatchError(
                f"resource {key!r} hash mismatch: manifest {recorded}, loaded {actual}"
            )
    for name in ("stage1.model", "stage2.model", "stage3.model", "df_table.txt"):
        recorded = manifest.get(f"file_{name}")
        actual = modelio.sha256_file(directory / name)
        if recorded != actual:
            raise ResourceMismatchError(f"pipeline file {name} hash mismatch")

    return PipelineModel(
        stage1=modelio.load_svm(directory / "stage1.model"),
        stage2=modelio.load_cnn(directory / "stage2.model"),
        stage3=modelio.load_svm(directory / "stage3.model"),
        df_table=_load_df_table(directory / "df_table.txt"),
        keyword_k=int(manifest.get("keywords_k", "10")),
        manifest=manifest,
    )


# ---------------------------------------------------------------------------
# cross-validation tuning harness

def kfold_slices(n: int, folds: int):
    """Contiguous fold boundaries covering range(n)."""
    base, extra = divmod(n, folds)
    sizes = [base + (1 if i < extra else 0) for i in range(folds)]
    out = []
    start = 0
    for size in sizes:
        out.append((start, start + size))
        start += size
    return out


def crossval_stage_svm(
    dataset: BinaryDataset,
    vectors_pos,
    vectors_neg,
    params: StageSvmParams,
    folds: int,
    seed: int,
) -> float:
    """Mean binary macro-F1 over stratified folds for one SVM stage."""
    rng = random.Random(seed)
    pos_idx = list(range(len(vectors_pos)))
    neg_idx = list(range(len(vectors_neg)))
    rng.shuffle(pos_idx)
    rng.shuffle(neg_idx)
    pos_folds = kfold_slices(len(pos_idx), folds)
    neg_folds = kfold_slices(len(neg_idx), folds)

    scores = []
    for k in range(folds):
        pos_hold = set(pos_idx[pos_folds[k][0] : pos_folds[k][1]])
        neg_hold = set(neg_idx[neg_folds[k][0] : neg_folds[k][1]])
        train_pos = [vectors_pos[i] for i in range(len(vectors_pos)) if i not in pos_hold]
        train_neg = [vectors_neg[i] for i in range(len(vectors_neg)) if i not in neg_hold]
        if not train_pos or not train_neg or (not pos_hold and not neg_hold):
            continue
        config = params.resolve(len(train_pos), len(train_neg))
        scaler = fit_scaler(train_pos + train_neg)
        data = [LabeledVector(x=feat.apply_scaler(scaler, v), y=+1) for v in train_pos]
        data += [LabeledVector(x=feat.apply_scaler(scaler, v), y=-1) for v in train_neg]
        model = train_svm(data, config, scaler)

        golds, preds = [], []
        for i in sorted(pos_hold):
            golds.append("pos")
            preds.append("pos" if svm_predict(model, vectors_pos[i]) > 0 else "neg")
        for i in sorted(neg_hold):
            golds.append("neg")
            preds.append("pos" if svm_predict(model, vectors_neg[i]) > 0 else "neg")
        matrix = metrics_mod.ConfusionMatrix.from_pairs(golds, preds, ("pos", "neg"))
        scores.append(metrics_mod.macro_f1(matrix))
    if not scores:
        raise TrainingError("cross-validation produced no scorable folds")
    return float(sum(scores) / len(scores))


def crossval_stage_cnn(
    dataset: BinaryDataset,
    resources: Resources,
    config: cnn_mod.CnnConfig,
    folds: int,
    seed: int,
) -> float:
    """Mean binary macro-F1 over stratified folds for the CNN stage."""
    rng = random.Random(seed)
    pos = list(dataset.positives)
    neg = list(dataset.negatives)
    rng.shuffle(pos)
    rng.shuffle(neg)
    pos_folds = kfold_slices(len(pos), folds)
    neg_folds = kfold_slices(len(neg), folds)

    scores = []
    for k in range(folds):
        hold_pos = pos[pos_folds[k][0] : pos_folds[k][1]]
        hold_neg = neg[neg_folds[k][0] : neg_folds[k][1]]
        train_pos = pos[: pos_folds[k][0]] + pos[pos_folds[k][1] :]
        train_neg = neg[: neg_folds[k][0]] + neg[neg_folds[k][1] :]
        if not train_pos or not train_neg or not (hold_pos or hold_neg):
            continue
        rows = [(i.claim_text, i.body_text, cnn_mod.CLASS_STANCE) for i in train_pos]
        rows += [(i.claim_text, i.body_text, cnn_mod.CLASS_NEUTRAL) for i in train_neg]
        model = cnn_mod.train_cnn(
            rows, resources.embedding_table, config, lexicon=resources.sentiment_lexicon
        )
        golds, preds = [], []
        for inst, gold in [(i, "pos") for i in hold_pos] + [(i, "neg") for i in hold_neg]:
            cls, _prob = cnn_mod.cnn_predict(
                model, inst.claim_text, inst.body_text, resources.embedding_table,
                resources.sentiment_lexicon,
            )
            golds.append(gold)
            preds.append("pos" if cls == cnn_mod.CLASS_STANCE else "neg")
        matrix = metrics_mod.ConfusionMatrix.from_pairs(golds, preds, ("pos", "neg"))
        scores.append(metrics_mod.macro_f1(matrix))
    if not scores:
        raise TrainingError("cross-validation produced no scorable folds")
    return float(sum(scores) / len(scores))
