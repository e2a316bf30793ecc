"""Cost-sensitive linear SVM trained by primal subgradient descent.

The objective is w.w/2 plus a per-class weighted hinge sum: examples of
the positive class are charged alpha_pos per unit of slack, negatives
alpha_neg. Slack variables are represented implicitly by the hinge loss.
Training is full-batch subgradient descent with step size lr/(1+epoch);
because the subgradient method is not a descent method, the best
parameters seen (by objective) are tracked and returned, which makes the
recorded per-epoch objective non-increasing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .features import FeatureVector, Scaler, apply_scaler


# epochs of sub-tolerance improvement tolerated before stopping early
_STALL_PATIENCE = 20


@dataclass(frozen=True)
class SvmConfig:
    alpha_pos: float
    alpha_neg: float
    epochs: int = 200
    learning_rate: float = 0.01
    seed: int = 0
    tolerance: float = 1e-6

    def __post_init__(self) -> None:
        if self.alpha_pos <= 0 or self.alpha_neg <= 0:
            raise ValueError("class penalties must be positive")
        if self.epochs < 1:
            raise ValueError("epochs must be a positive integer")
        if self.learning_rate <= 0:
            raise ValueError("learning rate must be positive")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")


@dataclass(frozen=True)
class LabeledVector:
    x: FeatureVector
    y: int

    def __post_init__(self) -> None:
        if self.y not in (+1, -1):
            raise ValueError(f"target must be +1 or -1, got {self.y}")


@dataclass(frozen=True)
class SvmModel:
    weights: np.ndarray
    bias: float
    scaler: Scaler
    config: SvmConfig
    schema_id: str
    objective_history: tuple[float, ...] = ()


def _stack(data, schema_id: str):
    xs = []
    ys = []
    for item in data:
        if item.x.schema_id != schema_id:
            raise ValueError(f"schema mismatch: {item.x.schema_id} != {schema_id}")
        xs.append(item.x.values)
        ys.append(item.y)
    x = np.stack(xs)
    y = np.asarray(ys, dtype=np.float64)
    if not np.all(np.isfinite(x)):
        raise ValueError("non-finite feature value in training data")
    return x, y


def _objective(w: np.ndarray, b: float, x: np.ndarray, y: np.ndarray, alphas: np.ndarray) -> float:
    margins = y * (x @ w + b)
    hinge = np.maximum(0.0, 1.0 - margins)
    return float(0.5 * w @ w + alphas @ hinge)


def _class_alphas(y: np.ndarray, config: SvmConfig) -> np.ndarray:
    return np.where(y > 0, config.alpha_pos, config.alpha_neg)


def svm_objective(model: SvmModel, data, config: SvmConfig | None = None) -> float:
    """Eq-style primal objective on already-scaled labeled vectors."""
    config = config or model.config
    x, y = _stack(data, model.schema_id)
    return _objective(model.weights, model.bias, x, y, _class_alphas(y, config))


def train_svm(data, config: SvmConfig, scaler: Scaler) -> SvmModel:
    """Train on scaled vectors; deterministic given config.

    Both classes must be present. The returned model carries the scaler so
    that inference accepts raw feature vectors.
    """
    data = list(data)
    if not data:
        raise ValueError("empty training set")
    schema_id = data[0].x.schema_id
    x, y = _stack(data, schema_id)
    if not (np.any(y > 0) and np.any(y < 0)):
        raise ValueError("training data contains a single class; need both +1 and -1")
    alphas = _class_alphas(y, config)
    ay = alphas * y

    w = np.zeros(x.shape[1], dtype=np.float64)
    b = 0.0
    best_w, best_b = w.copy(), b
    best = _objective(w, b, x, y, alphas)
    history = [best]
    stalled = 0

    for epoch in range(config.epochs):
        lr = config.learning_rate / (1.0 + epoch)
        margins = y * (x @ w + b)
        active = margins < 1.0
        grad_w = w - x[active].T @ ay[active]
        grad_b = -float(ay[active].sum())
        w = w - lr * grad_w
        b = b - lr * grad_b
        objective = _objective(w, b, x, y, alphas)
        if objective < best - config.tolerance:
            best = objective
            best_w, best_b = w.copy(), b
            stalled = 0
        else:
            if objective < best:
                best = objective
                best_w, best_b = w.copy(), b
            stalled += 1
        history.append(best)
        if stalled >= _STALL_PATIENCE:
            break

    return SvmModel(
        weights=best_w,
        bias=best_b,
        scaler=scaler,
        config=config,
        schema_id=schema_id,
        objective_history=tuple(history),
    )


def svm_decision(model: SvmModel, x: FeatureVector) -> float:
    scaled = apply_scaler(model.scaler, x)
    return float(model.weights @ scaled.values + model.bias)


def svm_predict(model: SvmModel, x: FeatureVector) -> int:
    """+1 at and above the boundary: ties go to the class the cascade
    must not starve."""
    return +1 if svm_decision(model, x) >= 0.0 else -1


def inverse_frequency_alphas(n_pos: int, n_neg: int) -> tuple[float, float]:
    """Default class penalties: inverse class frequency, scaled so each
    class contributes O(1) total hinge weight."""
    if n_pos < 1 or n_neg < 1:
        raise ValueError("both classes need at least one instance")
    return 1.0 / (2.0 * n_pos), 1.0 / (2.0 * n_neg)
