"""Versioned, self-describing structured-text model container.

Shared by both the SVM and CNN stages. The format is line-oriented:
scalar fields as "key: value", tensors introduced by a shape header
followed by one whitespace-separated row of repr()-formatted floats.
Floats round-trip exactly via repr, so serialization is bit-preserving
and byte-identical for identical models. Loading a file with a newer
format version fails loudly.
"""

from __future__ import annotations

import hashlib
from pathlib import Path

import numpy as np

from .cnn import PARAM_NAMES, CnnConfig, CnnModel
from .features import Scaler
from .svm import SvmConfig, SvmModel

FORMAT_VERSION = 1


class ModelFormatError(ValueError):
    pass


def _format_tensor(name: str, tensor: np.ndarray) -> list[str]:
    array = np.asarray(tensor, dtype=np.float64)
    shape = " ".join(str(s) for s in array.shape)
    values = " ".join(repr(float(v)) for v in array.reshape(-1))
    return [f"tensor {name} {shape}", values]


class _Reader:
    def __init__(self, path: Path):
        self.path = path
        self.lines = path.read_text(encoding="utf-8").splitlines()
        self.pos = 0

    def next_line(self) -> str:
        while self.pos < len(self.lines) and not self.lines[self.pos].strip():
            self.pos += 1
        if self.pos >= len(self.lines):
            raise ModelFormatError(f"{self.path}: unexpected end of file")
        line = self.lines[self.pos]
        self.pos += 1
        return line

    def done(self) -> bool:
        while self.pos < len(self.lines) and not self.lines[self.pos].strip():
            self.pos += 1
        return self.pos >= len(self.lines)

    def expect_scalar(self, key: str) -> str:
        line = self.next_line()
        prefix = f"{key}:"
        if not line.startswith(prefix):
            raise ModelFormatError(f"{self.path}: expected {key!r}, found {line!r}")
        return line[len(prefix):].strip()

    def expect_tensor(self, name: str) -> np.ndarray:
        header = self.next_line().split()
        if len(header) < 2 or header[0] != "tensor" or header[1] != name:
            raise ModelFormatError(f"{self.path}: expected tensor {name!r}, found {header}")
        shape = tuple(int(s) for s in header[2:])
        raw = self.next_line().split()
        expected = int(np.prod(shape)) if shape else 1
        if len(raw) != expected:
            raise ModelFormatError(
                f"{self.path}: tensor {name} has {len(raw)} values, expected {expected}"
            )
        return np.asarray([float(v) for v in raw], dtype=np.float64).reshape(shape)


def _check_version(reader: _Reader, kind: str) -> None:
    version = int(reader.expect_scalar("format-version"))
    if version > FORMAT_VERSION:
        raise ModelFormatError(
            f"{reader.path}: format version {version} is newer than supported {FORMAT_VERSION}"
        )
    found = reader.expect_scalar("model-kind")
    if found != kind:
        raise ModelFormatError(f"{reader.path}: model kind {found!r}, expected {kind!r}")


def save_svm(model: SvmModel, path: str | Path) -> None:
    cfg = model.config
    lines = [
        f"format-version: {FORMAT_VERSION}",
        "model-kind: svm",
        f"schema-id: {model.schema_id}",
        f"alpha-pos: {cfg.alpha_pos!r}",
        f"alpha-neg: {cfg.alpha_neg!r}",
        f"epochs: {cfg.epochs}",
        f"learning-rate: {cfg.learning_rate!r}",
        f"seed: {cfg.seed}",
        f"tolerance: {cfg.tolerance!r}",
        f"bias: {model.bias!r}",
    ]
    lines += _format_tensor("scaler_mean", model.scaler.mean)
    lines += _format_tensor("scaler_std", model.scaler.std)
    lines += _format_tensor("weights", model.weights)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_svm(path: str | Path) -> SvmModel:
    reader = _Reader(Path(path))
    _check_version(reader, "svm")
    schema_id = reader.expect_scalar("schema-id")
    config = SvmConfig(
        alpha_pos=float(reader.expect_scalar("alpha-pos")),
        alpha_neg=float(reader.expect_scalar("alpha-neg")),
        epochs=int(reader.expect_scalar("epochs")),
        learning_rate=float(reader.expect_scalar("learning-rate")),
        seed=int(reader.expect_scalar("seed")),
        tolerance=float(reader.expect_scalar("tolerance")),
    )
    bias = float(reader.expect_scalar("bias"))
    mean = reader.expect_tensor("scaler_mean")
    std = reader.expect_tensor("scaler_std")
    weights = reader.expect_tensor("weights")
    return SvmModel(
        weights=weights,
        bias=bias,
        scaler=Scaler(mean=mean, std=std, schema_id=schema_id),
        config=config,
        schema_id=schema_id,
    )


def save_cnn(model: CnnModel, path: str | Path) -> None:
    cfg = model.config
    lines = [
        f"format-version: {FORMAT_VERSION}",
        "model-kind: cnn",
        f"d: {cfg.d}",
        f"eta: {cfg.eta}",
        f"filters: {cfg.filters}",
        f"claim-len: {cfg.claim_len}",
        f"doc-len: {cfg.doc_len}",
        f"hidden: {cfg.hidden}",
        f"l2-lambda: {cfg.l2_lambda!r}",
        f"learning-rate: {cfg.learning_rate!r}",
        f"epochs: {cfg.epochs}",
        f"batch-size: {cfg.batch_size}",
        f"seed: {cfg.seed}",
    ]
    for name in PARAM_NAMES:
        lines += _format_tensor(name, model.params[name])
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def load_cnn(path: str | Path) -> CnnModel:
    reader = _Reader(Path(path))
    _check_version(reader, "cnn")
    config = CnnConfig(
        d=int(reader.expect_scalar("d")),
        eta=int(reader.expect_scalar("eta")),
        filters=int(reader.expect_scalar("filters")),
        claim_len=int(reader.expect_scalar("claim-len")),
        doc_len=int(reader.expect_scalar("doc-len")),
        hidden=int(reader.expect_scalar("hidden")),
        l2_lambda=float(reader.expect_scalar("l2-lambda")),
        learning_rate=float(reader.expect_scalar("learning-rate")),
        epochs=int(reader.expect_scalar("epochs")),
        batch_size=int(reader.expect_scalar("batch-size")),
        seed=int(reader.expect_scalar("seed")),
    )
    params = {name: reader.expect_tensor(name) for name in PARAM_NAMES}
    from .cnn import param_shapes

    for name, shape in param_shapes(config).items():
        if params[name].shape != shape:
            raise ModelFormatError(
                f"{path}: tensor {name} has shape {params[name].shape}, expected {shape}"
            )
    return CnnModel(params=params, config=config)


def sha256_file(path: str | Path) -> str:
    digest = hashlib.sha256()
    with Path(path).open("rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()
