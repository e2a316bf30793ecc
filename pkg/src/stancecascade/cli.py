"""Operator command line: fetch, prepare, train, evaluate, predict, tune, report.

Configuration is a flat key-value file with section prefixes (paths.,
stage1., stage2., stage3., split., keywords.); unknown keys are rejected.
Exit codes: 2 config parse error, 3 resource hash mismatch, 4 training
abort, 1 other failures. Every artifact directory receives a run manifest
recording the config hash, resource hashes and seeds.
"""

from __future__ import annotations

import argparse
import hashlib
import os
import sys
import urllib.request
from pathlib import Path

from . import demo as demo_mod
from . import metrics as metrics_mod
from . import modelio
from . import pipeline as pipe
from . import report as report_mod
from .cnn import CnnConfig
from .corpus import Corpus, Stage, StanceLabel, derive_stage_dataset, load_corpus
from .embeddings import EmbeddingFormat
from .textproc import KeywordMode, KeywordProviderConfig

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CONFIG = 2
EXIT_RESOURCE_MISMATCH = 3
EXIT_TRAINING = 4


class ConfigError(ValueError):
    pass


def _parse_bool(raw: str) -> bool:
    low = raw.strip().lower()
    if low in ("true", "yes", "1"):
        return True
    if low in ("false", "no", "0"):
        return False
    raise ConfigError(f"expected a boolean, got {raw!r}")


def _parse_alpha(raw: str) -> float | None:
    if raw.strip().lower() == "auto":
        return None
    value = float(raw)
    if value <= 0:
        raise ConfigError(f"class penalty must be positive or 'auto', got {raw!r}")
    return value


# key -> (parser, default); None default means "unset"
CONFIG_KEYS: dict[str, tuple] = {
    "paths.train_stances": (str, None),
    "paths.train_bodies": (str, None),
    "paths.test_stances": (str, None),
    "paths.test_bodies": (str, None),
    "paths.embeddings": (str, None),
    "paths.embeddings_format": (str, "text"),
    "paths.sentiment_lexicon": (str, None),
    "paths.boosters": (str, None),
    "paths.dampeners": (str, None),
    "paths.negators": (str, None),
    "paths.category_lexicon": (str, None),
    "paths.refuting_words": (str, None),
    "paths.stopwords": (str, None),
    "paths.output_dir": (str, "out"),
    "stage1.alpha_pos": (_parse_alpha, None),
    "stage1.alpha_neg": (_parse_alpha, None),
    "stage1.epochs": (int, 200),
    "stage1.learning_rate": (float, 0.01),
    "stage1.seed": (int, 0),
    "stage1.tolerance": (float, 1e-6),
    "stage2.eta": (int, 3),
    "stage2.filters": (int, 64),
    "stage2.claim_len": (int, 32),
    "stage2.doc_len": (int, 256),
    "stage2.hidden": (int, 64),
    "stage2.l2_lambda": (float, 1e-4),
    "stage2.learning_rate": (float, 0.01),
    "stage2.epochs": (int, 20),
    "stage2.batch_size": (int, 32),
    "stage2.seed": (int, 1),
    "stage3.alpha_pos": (_parse_alpha, None),
    "stage3.alpha_neg": (_parse_alpha, None),
    "stage3.epochs": (int, 200),
    "stage3.learning_rate": (float, 0.01),
    "stage3.seed": (int, 2),
    "stage3.tolerance": (float, 1e-6),
    "split.validation_fraction": (float, 0.1),
    "split.seed": (int, 3),
    "keywords.mode": (str, "offline"),
    "keywords.k": (int, 10),
    "keywords.endpoint": (str, None),
    "keywords.timeout": (float, 5.0),
    "keywords.fallback_to_offline": (_parse_bool, True),
    "keywords.max_concurrency": (int, 4),
}


class RunConfig:
    """Typed view over the flat key-value config file."""

    def __init__(self, values: dict, source: Path | None = None):
        self.values = values
        self.source = source

    @classmethod
    def parse(cls, path: str | Path) -> "RunConfig":
        path = Path(path)
        if not path.exists():
            raise ConfigError(f"config file not found: {path}")
        values: dict = {}
        for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            if "=" not in stripped:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
            key, _, raw = stripped.partition("=")
            key = key.strip()
            raw = raw.strip()
            if key not in CONFIG_KEYS:
                raise ConfigError(f"{path}:{lineno}: unknown config key {key!r}")
            if key in values:
                raise ConfigError(f"{path}:{lineno}: duplicate config key {key!r}")
            parser, _default = CONFIG_KEYS[key]
            try:
                values[key] = parser(raw)
            except ConfigError:
                raise
            except ValueError as exc:
                raise ConfigError(f"{path}:{lineno}: bad value for {key}: {exc}") from None
        return cls(values, source=path)

    def get(self, key: str):
        if key not in CONFIG_KEYS:
            raise ConfigError(f"unknown config key {key!r}")
        if key in self.values:
            return self.values[key]
        return CONFIG_KEYS[key][1]

    def require_path(self, key: str) -> Path:
        value = self.get(key)
        if value is None:
            raise ConfigError(f"config key {key!r} is required for this command")
        return Path(value)

    def set(self, key: str, value) -> None:
        if key not in CONFIG_KEYS:
            raise ConfigError(f"unknown config key {key!r}")
        self.values[key] = value

    def write(self, path: str | Path) -> None:
        lines = []
        for key in sorted(CONFIG_KEYS):
            if key in self.values and self.values[key] is not None:
                value = self.values[key]
                if isinstance(value, bool):
                    value = "true" if value else "false"
                lines.append(f"{key} = {value}")
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _resource_paths(config: RunConfig) -> pipe.ResourcePaths:
    fmt = config.get("paths.embeddings_format")
    if fmt not in ("text", "binary"):
        raise ConfigError(f"paths.embeddings_format must be 'text' or 'binary', got {fmt!r}")
    kwargs = {
        "embeddings": config.require_path("paths.embeddings"),
        "embeddings_format": EmbeddingFormat.WORD2VEC_TEXT if fmt == "text" else EmbeddingFormat.WORD2VEC_BINARY,
    }
    for key, attr in (
        ("paths.sentiment_lexicon", "sentiment_lexicon"),
        ("paths.boosters", "boosters"),
        ("paths.dampeners", "dampeners"),
        ("paths.negators", "negators"),
        ("paths.category_lexicon", "category_lexicon"),
        ("paths.refuting_words", "refuting_words"),
        ("paths.stopwords", "stopwords"),
    ):
        value = config.get(key)
        if value is not None:
            kwargs[attr] = Path(value)
    return pipe.ResourcePaths(**kwargs)


def _keyword_config(config: RunConfig) -> KeywordProviderConfig:
    mode = config.get("keywords.mode")
    if mode not in ("offline", "remote"):
        raise ConfigError(f"keywords.mode must be 'offline' or 'remote', got {mode!r}")
    return KeywordProviderConfig(
        mode=KeywordMode.OFFLINE_TFIDF if mode == "offline" else KeywordMode.REMOTE_SERVICE,
        k=config.get("keywords.k"),
        endpoint=config.get("keywords.endpoint"),
        timeout=config.get("keywords.timeout"),
        fallback_to_offline=config.get("keywords.fallback_to_offline"),
        max_concurrency=config.get("keywords.max_concurrency"),
    )


def _stage_params(config: RunConfig, section: str) -> pipe.StageSvmParams:
    return pipe.StageSvmParams(
        alpha_pos=config.get(f"{section}.alpha_pos"),
        alpha_neg=config.get(f"{section}.alpha_neg"),
        epochs=config.get(f"{section}.epochs"),
        learning_rate=config.get(f"{section}.learning_rate"),
        seed=config.get(f"{section}.seed"),
        tolerance=config.get(f"{section}.tolerance"),
    )


def _cnn_config(config: RunConfig, dimension: int) -> CnnConfig:
    return CnnConfig(
        d=dimension,
        eta=config.get("stage2.eta"),
        filters=config.get("stage2.filters"),
        claim_len=config.get("stage2.claim_len"),
        doc_len=config.get("stage2.doc_len"),
        hidden=config.get("stage2.hidden"),
        l2_lambda=config.get("stage2.l2_lambda"),
        learning_rate=config.get("stage2.learning_rate"),
        epochs=config.get("stage2.epochs"),
        batch_size=config.get("stage2.batch_size"),
        seed=config.get("stage2.seed"),
    )


def _pipeline_config(config: RunConfig, dimension: int) -> pipe.PipelineConfig:
    return pipe.PipelineConfig(
        stage1=_stage_params(config, "stage1"),
        stage2=_cnn_config(config, dimension),
        stage3=_stage_params(config, "stage3"),
        validation_fraction=config.get("split.validation_fraction"),
        split_seed=config.get("split.seed"),
    )


def _apply_seed_override(config: RunConfig, seed: int | None) -> None:
    if seed is None:
        return
    config.set("stage1.seed", seed)
    config.set("stage2.seed", seed + 1)
    config.set("stage3.seed", seed + 2)
    config.set("split.seed", seed + 3)


def _sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _write_run_manifest(out_dir: Path, config: RunConfig, resources: pipe.Resources | None) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    lines = []
    rendered = "\n".join(
        f"{key}={config.values[key]}" for key in sorted(config.values)
    )
    lines.append(f"config_sha256={_sha256_text(rendered)}")
    for key in ("stage1.seed", "stage2.seed", "stage3.seed", "split.seed"):
        lines.append(f"{key.replace('.', '_')}={config.get(key)}")
    if resources is not None:
        for name in sorted(resources.hashes):
            lines.append(f"resource_{name}={resources.hashes[name]}")
    (out_dir / "run_manifest.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")


def _load_train_corpus(config: RunConfig) -> Corpus:
    return load_corpus(
        config.require_path("paths.train_stances"),
        config.require_path("paths.train_bodies"),
    )


def _load_test_corpus(config: RunConfig) -> Corpus:
    return load_corpus(
        config.require_path("paths.test_stances"),
        config.require_path("paths.test_bodies"),
    )


# ---------------------------------------------------------------------------
# subcommands


def cmd_fetch(args) -> int:
    dest = Path(args.dest)
    dest.mkdir(parents=True, exist_ok=True)
    entries: list[tuple[str, str]] = []
    if args.manifest:
        for lineno, line in enumerate(Path(args.manifest).read_text(encoding="utf-8").splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                print(f"{args.manifest}:{lineno}: expected 'url sha256'", file=sys.stderr)
                return EXIT_CONFIG
            entries.append((parts[0], parts[1]))
    if args.urls:
        if len(args.urls) % 2 != 0:
            print("fetch expects URL SHA256 pairs", file=sys.stderr)
            return EXIT_CONFIG
        entries.extend(zip(args.urls[::2], args.urls[1::2]))
    if not entries:
        print("nothing to fetch: pass --manifest or URL SHA256 pairs", file=sys.stderr)
        return EXIT_CONFIG

    for url, expected in entries:
        name = url.rstrip("/").rsplit("/", 1)[-1] or "download"
        target = dest / name
        if target.exists() and modelio.sha256_file(target) == expected.lower():
            print(f"{expected.lower()}  {target} (already present)")
            continue
        try:
            with urllib.request.urlopen(url, timeout=60) as resp:
                data = resp.read()
        except OSError as exc:
            print(f"download failed for {url}: {exc}", file=sys.stderr)
            return EXIT_ERROR
        target.write_bytes(data)
        actual = modelio.sha256_file(target)
        if actual != expected.lower():
            target.unlink()
            print(f"checksum mismatch for {url}: expected {expected}, got {actual}", file=sys.stderr)
            return EXIT_ERROR
        print(f"{actual}  {target}")
    return EXIT_OK


def cmd_prepare(args) -> int:
    out_dir = Path(args.out)
    if args.demo:
        counts = (demo_mod.MINI_TRAIN, demo_mod.MINI_TRAIN) if args.scale == "mini" else (
            demo_mod.DESK_TRAIN, demo_mod.DESK_TEST
        )
        paths = demo_mod.write_demo_workspace(
            out_dir, train_counts=counts[0], test_counts=counts[1], seed=args.seed or 7
        )
        config = RunConfig({}, source=None)
        config.set("paths.train_stances", str(paths["train_stances"]))
        config.set("paths.train_bodies", str(paths["train_bodies"]))
        config.set("paths.test_stances", str(paths["test_stances"]))
        config.set("paths.test_bodies", str(paths["test_bodies"]))
        config.set("paths.embeddings", str(paths["embeddings"]))
        config.set("paths.output_dir", str(out_dir / "out"))
        if args.scale == "mini":
            for key, value in (
                ("stage2.filters", 8), ("stage2.hidden", 8), ("stage2.claim_len", 16),
                ("stage2.doc_len", 48), ("stage2.epochs", 8), ("stage2.batch_size", 16),
                ("stage2.learning_rate", 0.05),
            ):
                config.set(key, value)
        else:
            for key, value in (
                ("stage2.filters", 16), ("stage2.hidden", 16), ("stage2.claim_len", 16),
                ("stage2.doc_len", 64), ("stage2.epochs", 12), ("stage2.batch_size", 32),
                ("stage2.learning_rate", 0.05),
            ):
                config.set(key, value)
        config_path = out_dir / "config.cfg"
        config.write(config_path)
        print(f"demo workspace ready: {config_path}")
        return EXIT_OK

    if not args.config:
        print("prepare needs --demo or --config", file=sys.stderr)
        return EXIT_CONFIG
    config = RunConfig.parse(args.config)
    corpus = _load_train_corpus(config)
    for stage in Stage:
        print("stage dataset " + derive_stage_dataset(corpus, stage).summary())
    test_stances = config.get("paths.test_stances")
    if test_stances is not None:
        _load_test_corpus(config)
    return EXIT_OK


def cmd_train(args) -> int:
    config = RunConfig.parse(args.config)
    _apply_seed_override(config, args.seed)
    out_dir = Path(args.out) if args.out else Path(config.get("paths.output_dir"))
    resources = pipe.Resources.load(_resource_paths(config), _keyword_config(config))
    corpus = _load_train_corpus(config)
    pipeline_config = _pipeline_config(config, resources.embedding_table.dimension)
    out_dir.mkdir(parents=True, exist_ok=True)
    model = pipe.train_pipeline(
        corpus,
        pipeline_config,
        resources,
        workers=args.workers,
        loss_csv=out_dir / "stage2_loss.csv",
    )
    pipeline_dir = out_dir / "pipeline"
    pipe.save_pipeline(model, pipeline_dir)
    _write_run_manifest(out_dir, config, resources)
    print(f"pipeline written to {pipeline_dir}")
    return EXIT_OK


def cmd_evaluate(args) -> int:
    config = RunConfig.parse(args.config)
    _apply_seed_override(config, args.seed)
    out_dir = Path(args.out) if args.out else Path(config.get("paths.output_dir"))
    resources = pipe.Resources.load(_resource_paths(config), _keyword_config(config))
    model = pipe.load_pipeline(args.pipeline, resources)
    corpus = _load_test_corpus(config)
    report = pipe.evaluate(model, corpus, resources, workers=args.workers)
    out_dir.mkdir(parents=True, exist_ok=True)
    loss_csv = Path(args.pipeline).parent / "stage2_loss.csv"
    report_mod.write_report_files(
        report, out_dir, figures=not args.no_figures, loss_csv=loss_csv if loss_csv.exists() else None
    )
    _write_run_manifest(out_dir, config, resources)
    print(report_mod.render_text_tables(report))
    return EXIT_OK


def cmd_predict(args) -> int:
    config = RunConfig.parse(args.config)
    resources = pipe.Resources.load(_resource_paths(config), _keyword_config(config))
    model = pipe.load_pipeline(args.pipeline, resources)
    corpus = load_corpus(args.input, args.bodies)
    out_path = Path(args.out)
    out_path.parent.mkdir(parents=True, exist_ok=True)

    def classify(inst):
        label, _trace = pipe.predict(model, inst.claim_text, inst.body_text, resources)
        return label

    labels = pipe._ordered_map(classify, corpus.instances, args.workers)
    import csv as _csv

    with out_path.open("w", encoding="utf-8", newline="") as handle:
        writer = _csv.writer(handle)
        writer.writerow(["Headline", "Body ID", "Predicted"])
        for inst, label in zip(corpus.instances, labels):
            writer.writerow([inst.claim_text, inst.body_id, label.value])
    print(f"predictions written to {out_path}")
    return EXIT_OK


def _parse_grid(path: Path, stage: str) -> list[dict[str, str]]:
    grid: list[dict[str, str]] = []
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        overrides: dict[str, str] = {}
        for part in line.split():
            key, _, raw = part.partition("=")
            if not raw:
                raise ConfigError(f"{path}:{lineno}: expected key=value, got {part!r}")
            if key not in CONFIG_KEYS:
                raise ConfigError(f"{path}:{lineno}: unknown config key {key!r}")
            if not key.startswith(stage + "."):
                raise ConfigError(f"{path}:{lineno}: key {key!r} is outside section {stage!r}")
            overrides[key] = raw
        if overrides:
            grid.append(overrides)
    if not grid:
        raise ConfigError(f"{path}: empty tuning grid")
    return grid


def cmd_tune(args) -> int:
    config = RunConfig.parse(args.config)
    _apply_seed_override(config, args.seed)
    grid = _parse_grid(Path(args.grid), args.stage)
    out_dir = Path(args.out) if args.out else Path(config.get("paths.output_dir"))
    out_dir.mkdir(parents=True, exist_ok=True)
    resources = pipe.Resources.load(_resource_paths(config), _keyword_config(config))
    corpus = _load_train_corpus(config)

    stage = {"stage1": Stage.RELEVANCE, "stage2": Stage.NEUTRAL_STANCE, "stage3": Stage.AGREE_DISAGREE}[args.stage]
    dataset = derive_stage_dataset(corpus, stage)

    if args.stage in ("stage1", "stage3"):
        if args.stage == "stage1":
            from .textproc import KeywordProvider, build_df_table

            texts = list(corpus.bodies.values()) + [i.claim_text for i in corpus.instances]
            provider = KeywordProvider(
                resources.keyword_config, df_table=build_df_table(texts), stopwords=resources.stopwords
            )
            vec_pos = pipe._stage1_vectors(dataset.positives, resources, provider, args.workers)
            vec_neg = pipe._stage1_vectors(dataset.negatives, resources, provider, args.workers)
        else:
            vec_pos = pipe._stage3_vectors(dataset.positives, resources, args.workers)
            vec_neg = pipe._stage3_vectors(dataset.negatives, resources, args.workers)

    rows = []
    best_score, best_overrides = -1.0, None
    for overrides in grid:
        trial = RunConfig(dict(config.values), source=config.source)
        for key, raw in overrides.items():
            parser, _default = CONFIG_KEYS[key]
            trial.set(key, parser(raw))
        if args.stage in ("stage1", "stage3"):
            params = _stage_params(trial, args.stage)
            score = pipe.crossval_stage_svm(
                dataset, vec_pos, vec_neg, params, folds=args.folds, seed=trial.get("split.seed")
            )
        else:
            cnn_config = _cnn_config(trial, resources.embedding_table.dimension)
            score = pipe.crossval_stage_cnn(
                dataset, resources, cnn_config, folds=args.folds, seed=trial.get("split.seed")
            )
        label = " ".join(f"{k}={v}" for k, v in overrides.items())
        rows.append((label, score))
        print(f"cv macro-F1 {score:.4f}  {label}")
        if score > best_score:
            best_score, best_overrides = score, overrides

    import csv as _csv

    with (out_dir / "cv_table.csv").open("w", encoding="utf-8", newline="") as handle:
        writer = _csv.writer(handle)
        writer.writerow(["grid_point", "mean_macro_f1"])
        for label, score in rows:
            writer.writerow([label, repr(score)])

    best = RunConfig(dict(config.values), source=config.source)
    for key, raw in best_overrides.items():
        parser, _default = CONFIG_KEYS[key]
        best.set(key, parser(raw))
    best.write(out_dir / "best_config.cfg")
    _write_run_manifest(out_dir, config, resources)
    print(f"best grid point ({best_score:.4f} macro-F1) written to {out_dir / 'best_config.cfg'}")
    return EXIT_OK


def cmd_report(args) -> int:
    out_dir = Path(args.out)
    if args.report:
        report = metrics_mod.report_from_json(Path(args.report).read_text(encoding="utf-8"))
    else:
        stances, bodies = args.stances, args.bodies
        if args.predictions and not (stances and bodies) and args.config:
            config = RunConfig.parse(args.config)
            stances = stances or config.get("paths.test_stances")
            bodies = bodies or config.get("paths.test_bodies")
        if not (args.predictions and stances and bodies):
            print(
                "report needs either --report or --predictions with gold paths "
                "(--stances/--bodies or a --config with paths.test_*)",
                file=sys.stderr,
            )
            return EXIT_CONFIG
        gold = load_corpus(stances, bodies)
        rows = metrics_mod.load_predictions_csv(args.predictions)
        if len(rows) != len(gold.instances):
            print(
                f"prediction file has {len(rows)} rows but corpus has {len(gold.instances)}",
                file=sys.stderr,
            )
            return EXIT_ERROR
        predictions: list[StanceLabel] = [None] * len(rows)
        for index, label in rows:
            if not 0 <= index < len(rows):
                print(f"prediction index {index} out of range", file=sys.stderr)
                return EXIT_ERROR
            predictions[index] = label
        golds = [inst.label for inst in gold.instances]
        report = metrics_mod.EvalReport.from_predictions(golds, predictions)
    written = report_mod.write_report_files(report, out_dir, figures=not args.no_figures, loss_csv=args.loss_csv)
    total = sum(len(v) for v in written.values())
    print(f"wrote {total} report files to {out_dir}")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stancecascade",
        description="cascaded cost-sensitive stance classification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fetch", help="download corpus files with checksum verification")
    p.add_argument("--dest", required=True, help="destination directory")
    p.add_argument("--manifest", help="file of 'url sha256' lines")
    p.add_argument("urls", nargs="*", help="URL SHA256 pairs")
    p.set_defaults(fn=cmd_fetch)

    p = sub.add_parser("prepare", help="build a demo workspace or inspect configured data")
    p.add_argument("--config", help="run configuration file")
    p.add_argument("--out", default="workspace", help="demo workspace directory")
    p.add_argument("--demo", action="store_true", help="generate the bundled synthetic corpus")
    p.add_argument("--scale", choices=("mini", "desk"), default="desk")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(fn=cmd_prepare)

    default_workers = os.cpu_count() or 1
    for name, fn, needs_pipeline in (
        ("train", cmd_train, False),
        ("evaluate", cmd_evaluate, True),
    ):
        p = sub.add_parser(name)
        p.add_argument("--config", required=True)
        p.add_argument("--workers", type=int, default=default_workers)
        p.add_argument("--seed", type=int, default=None, help="override all config seeds")
        p.add_argument("--out", default=None, help="artifact directory (default: paths.output_dir)")
        if needs_pipeline:
            p.add_argument("--pipeline", required=True, help="trained pipeline directory")
            p.add_argument("--no-figures", action="store_true")
        p.set_defaults(fn=fn)

    p = sub.add_parser("predict", help="classify an unlabeled stances file")
    p.add_argument("--config", required=True)
    p.add_argument("--pipeline", required=True)
    p.add_argument("--input", required=True, help="stances CSV (Headline, Body ID)")
    p.add_argument("--bodies", required=True, help="bodies CSV")
    p.add_argument("--workers", type=int, default=default_workers)
    p.add_argument("--out", required=True, help="output predictions CSV")
    p.set_defaults(fn=cmd_predict)

    p = sub.add_parser("tune", help="k-fold cross-validation over a hyperparameter grid")
    p.add_argument("--config", required=True)
    p.add_argument("--stage", required=True, choices=("stage1", "stage2", "stage3"))
    p.add_argument("--grid", required=True, help="file of 'key=value ...' grid points")
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--workers", type=int, default=default_workers)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_tune)

    p = sub.add_parser("report", help="render report files and figures")
    p.add_argument("--config", help="config supplying paths.test_* for --predictions")
    p.add_argument("--report", help="existing report.json")
    p.add_argument("--predictions", help="predictions CSV (index,label) to score")
    p.add_argument("--stances", help="gold stances CSV for --predictions")
    p.add_argument("--bodies", help="bodies CSV for --predictions")
    p.add_argument("--loss-csv", default=None)
    p.add_argument("--no-figures", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except pipe.ResourceMismatchError as exc:
        print(f"resource mismatch: {exc}", file=sys.stderr)
        return EXIT_RESOURCE_MISMATCH
    except pipe.TrainingError as exc:
        print(f"training aborted: {exc}", file=sys.stderr)
        return EXIT_TRAINING
    except (OSError, ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
