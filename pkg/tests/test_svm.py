"""Cost-sensitive linear SVM: objective, training, prediction."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from stancecascade.features import FeatureVector, Scaler
from stancecascade.svm import (
    LabeledVector,
    SvmConfig,
    SvmModel,
    inverse_frequency_alphas,
    svm_decision,
    svm_objective,
    svm_predict,
    train_svm,
)


def fv(*values, schema="t") -> FeatureVector:
    return FeatureVector(values=np.asarray(values, dtype=np.float64), schema_id=schema)


def lv(values, y) -> LabeledVector:
    return LabeledVector(x=fv(*values), y=y)


def identity(dim) -> Scaler:
    return Scaler.identity(dim, "t")


def model(weights, bias, config=None, dim=None) -> SvmModel:
    weights = np.asarray(weights, dtype=np.float64)
    return SvmModel(
        weights=weights,
        bias=float(bias),
        scaler=identity(dim or len(weights)),
        config=config or SvmConfig(1.0, 1.0),
        schema_id="t",
    )


class TestObjective:
    def test_zero_model_sums_alphas(self):
        data = [lv([1.0], +1), lv([2.0], -1), lv([0.5], -1)]
        config = SvmConfig(alpha_pos=2.0, alpha_neg=0.5)
        # hinge is exactly 1 for every point at the origin
        assert svm_objective(model([0.0], 0.0, config), data, config) == pytest.approx(
            2.0 + 0.5 + 0.5
        )

    def test_separated_margins_give_pure_regularizer(self):
        data = [lv([2.0], +1), lv([-2.0], -1)]
        m = model([1.0], 0.0)
        assert svm_objective(m, data) == pytest.approx(0.5)

    def test_rational_arithmetic_oracle(self):
        # six fixed planar points, fixed model; recompute the objective by
        # summation in exact rational arithmetic
        points = [
            ((Fraction(3, 2), Fraction(-1, 4)), +1),
            ((Fraction(1, 2), Fraction(1, 2)), +1),
            ((Fraction(-1, 4), Fraction(5, 4)), +1),
            ((Fraction(-3, 2), Fraction(1, 4)), -1),
            ((Fraction(-1, 2), Fraction(-5, 4)), -1),
            ((Fraction(1, 8), Fraction(-3, 4)), -1),
        ]
        w = (Fraction(3, 4), Fraction(-1, 2))
        b = Fraction(1, 8)
        alpha_pos, alpha_neg = Fraction(7, 4), Fraction(2, 3)
        exact = (w[0] * w[0] + w[1] * w[1]) / 2
        for (x1, x2), y in points:
            margin = y * (w[0] * x1 + w[1] * x2 + b)
            slack = max(Fraction(0), 1 - margin)
            exact += (alpha_pos if y > 0 else alpha_neg) * slack

        config = SvmConfig(alpha_pos=float(alpha_pos), alpha_neg=float(alpha_neg))
        data = [lv([float(x1), float(x2)], y) for (x1, x2), y in points]
        m = model([float(w[0]), float(w[1])], float(b), config)
        assert svm_objective(m, data, config) == pytest.approx(float(exact), rel=1e-12)

    def test_schema_mismatch(self):
        bad = LabeledVector(x=FeatureVector(values=np.zeros(1), schema_id="other"), y=1)
        with pytest.raises(ValueError):
            svm_objective(model([0.0], 0.0), [bad])


class TestTrain:
    def test_symmetric_separable(self):
        data = [lv([-1.0], -1), lv([+1.0], +1)]
        m = train_svm(data, SvmConfig(1.0, 1.0, epochs=500, learning_rate=0.1), identity(1))
        assert abs(m.bias / m.weights[0]) <= 0.1
        assert svm_predict(m, fv(1.0)) == +1
        assert svm_predict(m, fv(-1.0)) == -1

    @staticmethod
    def overlapping_1d():
        rng = np.random.default_rng(3)
        pos = rng.normal(+0.5, 1.0, 20)
        neg = rng.normal(-0.5, 1.0, 200)
        return pos, neg

    def train_ratio(self, ratio: float):
        pos, neg = self.overlapping_1d()
        data = [lv([v], +1) for v in pos] + [lv([v], -1) for v in neg]
        config = SvmConfig(alpha_pos=0.01 * ratio, alpha_neg=0.01, epochs=500, learning_rate=0.1)
        m = train_svm(data, config, identity(1))
        recall = sum(1 for v in pos if svm_predict(m, fv(v)) == +1) / len(pos)
        return recall, m

    def test_cost_sensitivity_ordering(self):
        recall_1, _ = self.train_ratio(1)
        recall_10, _ = self.train_ratio(10)
        assert recall_10 > recall_1

    def test_penalty_dominance_monotone(self):
        recalls = [self.train_ratio(r)[0] for r in (1, 3, 10)]
        assert recalls[0] <= recalls[1] <= recalls[2]

    def test_objective_history_non_increasing(self):
        _, m = self.train_ratio(10)
        history = np.asarray(m.objective_history)
        assert np.all(np.diff(history) <= 1e-6)

    def test_final_not_worse_than_zero_init(self):
        _, m = self.train_ratio(3)
        assert m.objective_history[-1] <= m.objective_history[0]

    def test_deterministic_bitwise(self):
        a = self.train_ratio(3)[1]
        b = self.train_ratio(3)[1]
        assert np.array_equal(a.weights, b.weights)
        assert a.bias == b.bias
        assert a.objective_history == b.objective_history

    def test_single_class_rejected(self):
        with pytest.raises(ValueError, match="single class"):
            train_svm([lv([1.0], 1), lv([2.0], 1)], SvmConfig(1.0, 1.0), identity(1))

    def test_non_finite_rejected(self):
        good = lv([1.0], 1)
        bad = LabeledVector(
            x=FeatureVector.__new__(FeatureVector), y=-1
        )
        # bypass FeatureVector validation to simulate corrupt input
        object.__setattr__(bad.x, "values", np.array([np.inf]))
        object.__setattr__(bad.x, "schema_id", "t")
        with pytest.raises(ValueError, match="non-finite"):
            train_svm([good, bad], SvmConfig(1.0, 1.0), identity(1))

    def test_grid_search_oracle_two_dim(self):
        points = [
            ((0.9, 0.7), +1), ((0.7, 0.9), +1), ((1.1, 0.5), +1), ((0.2, 0.3), +1),
            ((-0.8, -0.6), -1), ((-0.6, -0.9), -1), ((-1.0, -0.4), -1), ((-0.1, -0.2), -1),
        ]
        data = [lv(list(x), y) for x, y in points]
        config = SvmConfig(1.0, 1.0, epochs=4000, learning_rate=0.05, tolerance=1e-12)
        trained = train_svm(data, config, identity(2))
        trained_objective = svm_objective(trained, data)

        x = np.array([p for p, _ in points])
        y = np.array([label for _, label in points], dtype=np.float64)
        lattice = np.arange(-1.5, 1.5001, 0.01)
        w2, b = np.meshgrid(lattice, lattice, indexing="ij")
        best = np.inf
        for w1 in lattice:
            margins = y[None, None, :] * (
                w1 * x[None, None, :, 0] + w2[..., None] * x[None, None, :, 1] + b[..., None]
            )
            values = 0.5 * (w1 * w1 + w2**2) + np.maximum(0.0, 1.0 - margins).sum(axis=-1)
            best = min(best, float(values.min()))
        assert trained_objective <= best * 1.02


class TestPredict:
    def test_zero_model_tie_goes_positive(self):
        m = model([0.0, 0.0], 0.0)
        assert svm_decision(m, fv(3.0, -1.0)) == 0.0
        assert svm_predict(m, fv(3.0, -1.0)) == +1

    def test_affine_arithmetic(self):
        m = model([1.0, 0.0], -1.0)
        assert svm_decision(m, fv(3.0, 5.0)) == pytest.approx(2.0)
        assert svm_predict(m, fv(3.0, 5.0)) == +1

    def test_linearity_in_input(self):
        m = model([0.7, -0.3], 0.0)
        x = fv(1.5, 2.5)
        neg_x = fv(-1.5, -2.5)
        assert svm_decision(m, neg_x) == pytest.approx(-svm_decision(m, x))

    def test_scaler_applied_at_inference(self):
        scaler = Scaler(mean=np.array([1.0]), std=np.array([2.0]), schema_id="t")
        m = SvmModel(
            weights=np.array([1.0]), bias=0.0, scaler=scaler,
            config=SvmConfig(1.0, 1.0), schema_id="t",
        )
        assert svm_decision(m, fv(3.0)) == pytest.approx(1.0)

    def test_inference_ignores_training_set_changes(self):
        data = [lv([-1.0], -1), lv([+1.0], +1)]
        m = train_svm(data, SvmConfig(1.0, 1.0, epochs=100, learning_rate=0.1), identity(1))
        probe = fv(0.3)
        before = svm_predict(m, probe)
        data.append(lv([0.3], -1))  # duplicating/extending data cannot affect a trained model
        assert svm_predict(m, probe) == before


def test_inverse_frequency_alphas():
    alpha_pos, alpha_neg = inverse_frequency_alphas(10, 40)
    assert alpha_pos / alpha_neg == pytest.approx(4.0)
    with pytest.raises(ValueError):
        inverse_frequency_alphas(0, 5)


def test_config_validation():
    with pytest.raises(ValueError):
        SvmConfig(alpha_pos=0.0, alpha_neg=1.0)
    with pytest.raises(ValueError):
        SvmConfig(alpha_pos=1.0, alpha_neg=1.0, learning_rate=0.0)
    with pytest.raises(ValueError):
        LabeledVector(x=fv(1.0), y=0)
