"""Versioned structured-text model container round trips."""

from __future__ import annotations

import numpy as np
import pytest

from stancecascade.cnn import CnnConfig, PARAM_NAMES, init_cnn
from stancecascade.features import Scaler
from stancecascade.modelio import (
    ModelFormatError,
    load_cnn,
    load_svm,
    save_cnn,
    save_svm,
    sha256_file,
)
from stancecascade.svm import SvmConfig, SvmModel


def make_svm_model() -> SvmModel:
    rng = np.random.default_rng(5)
    return SvmModel(
        weights=rng.normal(size=7),
        bias=float(rng.normal()),
        scaler=Scaler(mean=rng.normal(size=7), std=np.abs(rng.normal(size=7)) + 0.1, schema_id="s7"),
        config=SvmConfig(alpha_pos=2.5, alpha_neg=0.125, epochs=50, learning_rate=0.03, seed=9, tolerance=1e-8),
        schema_id="s7",
    )


class TestSvmRoundTrip:
    def test_bit_exact(self, tmp_path):
        model = make_svm_model()
        path = tmp_path / "m.model"
        save_svm(model, path)
        loaded = load_svm(path)
        assert np.array_equal(loaded.weights, model.weights)
        assert loaded.bias == model.bias
        assert np.array_equal(loaded.scaler.mean, model.scaler.mean)
        assert np.array_equal(loaded.scaler.std, model.scaler.std)
        assert loaded.config == model.config
        assert loaded.schema_id == model.schema_id

    def test_serialization_deterministic(self, tmp_path):
        model = make_svm_model()
        save_svm(model, tmp_path / "a.model")
        save_svm(model, tmp_path / "b.model")
        assert sha256_file(tmp_path / "a.model") == sha256_file(tmp_path / "b.model")

    def test_newer_version_fails_loudly(self, tmp_path):
        model = make_svm_model()
        path = tmp_path / "m.model"
        save_svm(model, path)
        text = path.read_text().replace("format-version: 1", "format-version: 99")
        path.write_text(text)
        with pytest.raises(ModelFormatError, match="newer"):
            load_svm(path)

    def test_wrong_kind_rejected(self, tmp_path):
        model = init_cnn(CnnConfig(d=2, eta=1, filters=1, claim_len=2, doc_len=2, hidden=1))
        path = tmp_path / "c.model"
        save_cnn(model, path)
        with pytest.raises(ModelFormatError, match="kind"):
            load_svm(path)


class TestCnnRoundTrip:
    def test_bit_exact(self, tmp_path):
        model = init_cnn(CnnConfig(d=3, eta=2, filters=4, claim_len=5, doc_len=7, hidden=3, seed=2))
        path = tmp_path / "c.model"
        save_cnn(model, path)
        loaded = load_cnn(path)
        assert loaded.config == model.config
        for name in PARAM_NAMES:
            assert np.array_equal(loaded.params[name], model.params[name]), name

    def test_tensor_corruption_detected(self, tmp_path):
        model = init_cnn(CnnConfig(d=2, eta=2, filters=2, claim_len=3, doc_len=4, hidden=2))
        path = tmp_path / "c.model"
        save_cnn(model, path)
        lines = path.read_text().splitlines()
        for i, line in enumerate(lines):
            if line.startswith("tensor conv_claim_w"):
                values = lines[i + 1].split()
                lines[i + 1] = " ".join(values[:-1])
                break
        path.write_text("\n".join(lines) + "\n")
        with pytest.raises(ModelFormatError):
            load_cnn(path)
