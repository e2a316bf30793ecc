"""Two-branch text CNN for neutral-vs-stance classification.

Claim and document are embedded into fixed-size matrices, passed through
separate single-width convolution banks with ReLU and global max-pooling,
merged with their four sentiment scores, pushed through two separate
dense ReLU layers, concatenated, and classified by a softmax pair of
logits. Forward and backward passes are handwritten numpy; gradients are
exact for the cross-entropy loss plus (lambda/2)*||params||^2.

Embeddings are frozen inputs, not parameters. All floating point work is
float64 and every reduction has a fixed order, so training is bitwise
deterministic for a fixed seed.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .embeddings import EmbeddingTable
from .sentiment import SentimentLexicon, analyze
from .textproc import tokenize, truncate_sentences

CLASS_NEUTRAL = 0
CLASS_STANCE = 1

_LOSS_FLOOR = 1e-12


@dataclass(frozen=True)
class CnnConfig:
    d: int                      # embedding dimension
    eta: int = 3                # filter width in words
    filters: int = 64           # filters per branch
    claim_len: int = 32         # claim cap in tokens
    doc_len: int = 256          # document cap in tokens (after sentence truncation)
    hidden: int = 64            # dense-layer width per branch
    l2_lambda: float = 1e-4
    learning_rate: float = 0.01
    epochs: int = 20
    batch_size: int = 32
    seed: int = 0

    def __post_init__(self) -> None:
        for name in ("d", "eta", "filters", "claim_len", "doc_len", "hidden", "epochs", "batch_size"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be a positive integer")
        if self.eta > self.claim_len or self.eta > self.doc_len:
            raise ValueError("filter width cannot exceed the claim or document length cap")
        if self.l2_lambda < 0:
            raise ValueError("l2_lambda must be >= 0")
        if self.learning_rate < 0:
            raise ValueError("learning rate must be >= 0")


# parameter tensor names in declaration (and serialization) order
PARAM_NAMES = (
    "conv_claim_w", "conv_claim_b",
    "conv_doc_w", "conv_doc_b",
    "dense_claim_w", "dense_claim_b",
    "dense_doc_w", "dense_doc_b",
    "out_w", "out_b",
)


@dataclass
class CnnModel:
    params: dict[str, np.ndarray]
    config: CnnConfig
    loss_history: tuple[float, ...] = ()

    def copy_params(self) -> dict[str, np.ndarray]:
        return {name: tensor.copy() for name, tensor in self.params.items()}


def param_shapes(config: CnnConfig) -> dict[str, tuple[int, ...]]:
    f, eta, d, m = config.filters, config.eta, config.d, config.hidden
    merged = f + 4
    return {
        "conv_claim_w": (f, eta, d), "conv_claim_b": (f,),
        "conv_doc_w": (f, eta, d), "conv_doc_b": (f,),
        "dense_claim_w": (m, merged), "dense_claim_b": (m,),
        "dense_doc_w": (m, merged), "dense_doc_b": (m,),
        "out_w": (2, 2 * m), "out_b": (2,),
    }


def init_cnn(config: CnnConfig) -> CnnModel:
    """Scaled-uniform weight init (biases zero), seeded and reproducible."""
    rng = np.random.default_rng(config.seed)
    params: dict[str, np.ndarray] = {}
    for name, shape in param_shapes(config).items():
        if name.endswith("_b"):
            params[name] = np.zeros(shape, dtype=np.float64)
            continue
        if name.startswith("conv"):
            fan_in, fan_out = shape[1] * shape[2], shape[0]
        else:
            fan_in, fan_out = shape[1], shape[0]
        limit = np.sqrt(6.0 / (fan_in + fan_out))
        params[name] = rng.uniform(-limit, limit, size=shape).astype(np.float64)
    return CnnModel(params=params, config=config)


def embed_inputs(
    table: EmbeddingTable,
    claim: str,
    body: str,
    config: CnnConfig,
    lexicon: SentimentLexicon | None = None,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Build the embedded claim/document matrices and sentiment arrays.

    The body is truncated to its first 10 sentences before tokenization.
    Token sequences are cut to the configured caps and right-padded with
    zero rows; out-of-vocabulary tokens are zero rows too.
    """
    if table.dimension != config.d:
        raise ValueError(
            f"embedding table dimension {table.dimension} != configured d {config.d}"
        )
    truncated = truncate_sentences(body)

    def matrix(text: str, cap: int) -> np.ndarray:
        out = np.zeros((cap, config.d), dtype=np.float64)
        for row, token in enumerate(tokenize(text).tokens[:cap]):
            vec = table.get(token)
            if vec is not None:
                out[row] = vec
        return out

    s_claim = analyze(claim, lexicon).as_array()
    s_doc = analyze(truncated, lexicon).as_array()
    return matrix(claim, config.claim_len), matrix(truncated, config.doc_len), s_claim, s_doc


@dataclass
class ForwardTrace:
    c: np.ndarray
    d: np.ndarray
    s_c: np.ndarray
    s_d: np.ndarray
    windows_c: np.ndarray
    windows_d: np.ndarray
    h1_pre: np.ndarray
    h1: np.ndarray
    h2_pre: np.ndarray
    h2: np.ndarray
    r_c: np.ndarray
    r_d: np.ndarray
    argmax_c: np.ndarray
    argmax_d: np.ndarray
    f1: np.ndarray
    f2: np.ndarray
    dnc_pre: np.ndarray
    dnc: np.ndarray
    dnd_pre: np.ndarray
    dnd: np.ndarray
    logits: np.ndarray
    probs: np.ndarray


def _conv_windows(x: np.ndarray, eta: int) -> np.ndarray:
    # (T, d) -> (T - eta + 1, eta * d), one flattened window per stride
    t, d = x.shape
    return sliding_window_view(x, (eta, d)).reshape(t - eta + 1, eta * d)


def _softmax(z: np.ndarray) -> np.ndarray:
    # non-finite params yield nan here; the isfinite check below reports it
    with np.errstate(over="ignore", invalid="ignore"):
        e = np.exp(z - np.max(z))
        return e / e.sum()


def cnn_forward(model: CnnModel, c, d, s_c, s_d) -> ForwardTrace:
    """Full forward pass; the trace keeps every intermediate needed by the
    backward pass, including max-pool argmax positions."""
    cfg = model.config
    p = model.params
    if c.shape != (cfg.claim_len, cfg.d) or d.shape != (cfg.doc_len, cfg.d):
        raise ValueError(
            f"input shapes {c.shape}/{d.shape} do not match config "
            f"({cfg.claim_len},{cfg.d})/({cfg.doc_len},{cfg.d})"
        )
    f = cfg.filters

    with np.errstate(over="ignore", invalid="ignore"):
        windows_c = _conv_windows(np.asarray(c, dtype=np.float64), cfg.eta)
        windows_d = _conv_windows(np.asarray(d, dtype=np.float64), cfg.eta)
        h1_pre = windows_c @ p["conv_claim_w"].reshape(f, -1).T + p["conv_claim_b"]
        h2_pre = windows_d @ p["conv_doc_w"].reshape(f, -1).T + p["conv_doc_b"]
        h1 = np.maximum(h1_pre, 0.0)
        h2 = np.maximum(h2_pre, 0.0)

        argmax_c = h1.argmax(axis=0)
        argmax_d = h2.argmax(axis=0)
        r_c = h1[argmax_c, np.arange(f)]
        r_d = h2[argmax_d, np.arange(f)]

        f1 = np.concatenate([r_c, np.asarray(s_c, dtype=np.float64)])
        f2 = np.concatenate([r_d, np.asarray(s_d, dtype=np.float64)])

        dnc_pre = p["dense_claim_w"] @ f1 + p["dense_claim_b"]
        dnd_pre = p["dense_doc_w"] @ f2 + p["dense_doc_b"]
        dnc = np.maximum(dnc_pre, 0.0)
        dnd = np.maximum(dnd_pre, 0.0)

        logits = p["out_w"] @ np.concatenate([dnc, dnd]) + p["out_b"]
    probs = _softmax(logits)
    if not np.all(np.isfinite(probs)):
        raise FloatingPointError("non-finite activation in forward pass")

    return ForwardTrace(
        c=c, d=d, s_c=s_c, s_d=s_d,
        windows_c=windows_c, windows_d=windows_d,
        h1_pre=h1_pre, h1=h1, h2_pre=h2_pre, h2=h2,
        r_c=r_c, r_d=r_d, argmax_c=argmax_c, argmax_d=argmax_d,
        f1=f1, f2=f2,
        dnc_pre=dnc_pre, dnc=dnc, dnd_pre=dnd_pre, dnd=dnd,
        logits=logits, probs=probs,
    )


def cnn_loss(probs, target: int) -> float:
    """Negative log likelihood of the target class, clamped away from
    infinity at -ln(1e-12)."""
    if target not in (0, 1):
        raise ValueError(f"target must be 0 or 1, got {target}")
    return float(-np.log(max(float(probs[target]), _LOSS_FLOOR)))


def cnn_regularizer(model: CnnModel) -> float:
    lam = model.config.l2_lambda
    if lam == 0.0:
        return 0.0
    return 0.5 * lam * sum(float(np.sum(t * t)) for t in model.params.values())


def cnn_backward(model: CnnModel, trace: ForwardTrace, target: int) -> dict[str, np.ndarray]:
    """Exact gradients of cnn_loss + (lambda/2)*||params||^2.

    Max-pool routes gradient only to the recorded argmax stride; ReLU
    gates on the stored pre-activations.
    """
    if target not in (0, 1):
        raise ValueError(f"target must be 0 or 1, got {target}")
    cfg = model.config
    p = model.params
    f, m = cfg.filters, cfg.hidden
    if trace.h1.shape != (cfg.claim_len - cfg.eta + 1, f):
        raise ValueError("trace does not match model configuration")

    dlogits = trace.probs.copy()
    dlogits[target] -= 1.0

    merged = np.concatenate([trace.dnc, trace.dnd])
    grads: dict[str, np.ndarray] = {}
    grads["out_w"] = np.outer(dlogits, merged)
    grads["out_b"] = dlogits.copy()

    dmerged = p["out_w"].T @ dlogits
    ddnc_pre = dmerged[:m] * (trace.dnc_pre > 0.0)
    ddnd_pre = dmerged[m:] * (trace.dnd_pre > 0.0)

    grads["dense_claim_w"] = np.outer(ddnc_pre, trace.f1)
    grads["dense_claim_b"] = ddnc_pre.copy()
    grads["dense_doc_w"] = np.outer(ddnd_pre, trace.f2)
    grads["dense_doc_b"] = ddnd_pre.copy()

    dr_c = (p["dense_claim_w"].T @ ddnc_pre)[:f]
    dr_d = (p["dense_doc_w"].T @ ddnd_pre)[:f]

    def conv_grads(dr, argmax, h_pre, windows):
        dh = np.zeros_like(h_pre)
        dh[argmax, np.arange(f)] = dr
        dh_pre = dh * (h_pre > 0.0)
        gw = (dh_pre.T @ windows).reshape(f, cfg.eta, cfg.d)
        gb = dh_pre.sum(axis=0)
        return gw, gb

    grads["conv_claim_w"], grads["conv_claim_b"] = conv_grads(
        dr_c, trace.argmax_c, trace.h1_pre, trace.windows_c
    )
    grads["conv_doc_w"], grads["conv_doc_b"] = conv_grads(
        dr_d, trace.argmax_d, trace.h2_pre, trace.windows_d
    )

    if cfg.l2_lambda:
        for name in PARAM_NAMES:
            grads[name] = grads[name] + cfg.l2_lambda * p[name]
    return grads


@dataclass(frozen=True)
class _Embedded:
    c: np.ndarray
    d: np.ndarray
    s_c: np.ndarray
    s_d: np.ndarray
    target: int


def _example_pass(model: CnnModel, ex: _Embedded) -> tuple[float, dict[str, np.ndarray]]:
    trace = cnn_forward(model, ex.c, ex.d, ex.s_c, ex.s_d)
    loss = cnn_loss(trace.probs, ex.target) + cnn_regularizer(model)
    grads = cnn_backward(model, trace, ex.target)
    return loss, grads


def train_cnn(
    data,
    table: EmbeddingTable,
    config: CnnConfig,
    lexicon: SentimentLexicon | None = None,
    validation_data=None,
    loss_csv: str | Path | None = None,
) -> CnnModel:
    """Mini-batch gradient descent over (claim, body, label) triples.

    label is 0 (neutral) or 1 (stance). The shuffle schedule and the
    within-batch reduction order are fixed, so results are bitwise
    reproducible. With a validation set, the parameters from the best
    validation-loss epoch are returned; otherwise the final epoch's.
    """
    examples = [
        _Embedded(*embed_inputs(table, claim, body, config, lexicon), target=int(label))
        for claim, body, label in data
    ]
    if not examples:
        raise ValueError("empty training set")
    targets = {ex.target for ex in examples}
    if not targets <= {0, 1}:
        raise ValueError(f"labels must be 0 or 1, got {sorted(targets)}")
    if len(targets) < 2:
        raise ValueError("training data contains a single class")
    holdout = None
    if validation_data is not None:
        holdout = [
            _Embedded(*embed_inputs(table, claim, body, config, lexicon), target=int(label))
            for claim, body, label in validation_data
        ]

    model = init_cnn(config)
    rng = np.random.default_rng(config.seed)
    history: list[float] = []
    best_val = np.inf
    best_params: dict[str, np.ndarray] | None = None

    for epoch in range(config.epochs):
        lr = config.learning_rate / (1.0 + epoch)
        order = rng.permutation(len(examples))
        epoch_losses: list[float] = []
        for start in range(0, len(order), config.batch_size):
            batch = order[start : start + config.batch_size]
            acc = {name: np.zeros_like(model.params[name]) for name in PARAM_NAMES}
            for idx in batch:
                try:
                    loss, grads = _example_pass(model, examples[idx])
                except FloatingPointError as exc:
                    raise RuntimeError(
                        f"training aborted at epoch {epoch}, example {idx}: {exc}; "
                        "try a smaller learning rate"
                    ) from exc
                if not np.isfinite(loss):
                    raise RuntimeError(
                        f"non-finite training loss at epoch {epoch}, example {idx}; "
                        "try a smaller learning rate"
                    )
                epoch_losses.append(loss)
                for name in PARAM_NAMES:
                    acc[name] += grads[name]
            scale = lr / len(batch)
            for name in PARAM_NAMES:
                model.params[name] -= scale * acc[name]
        history.append(float(np.mean(epoch_losses)))

        if holdout is not None:
            val = float(
                np.mean(
                    [
                        cnn_loss(cnn_forward(model, ex.c, ex.d, ex.s_c, ex.s_d).probs, ex.target)
                        for ex in holdout
                    ]
                )
            )
            if val < best_val:
                best_val = val
                best_params = model.copy_params()

    if best_params is not None:
        model.params = best_params
    model.loss_history = tuple(history)
    if loss_csv is not None:
        with Path(loss_csv).open("w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["epoch", "mean_train_loss"])
            for epoch, value in enumerate(history):
                writer.writerow([epoch, repr(value)])
    return model


def cnn_predict(
    model: CnnModel,
    claim: str,
    body: str,
    table: EmbeddingTable,
    lexicon: SentimentLexicon | None = None,
) -> tuple[int, float]:
    """(class, probability) with class CLASS_STANCE on the 0.5 tie."""
    c, d, s_c, s_d = embed_inputs(table, claim, body, model.config, lexicon)
    probs = cnn_forward(model, c, d, s_c, s_d).probs
    label = CLASS_STANCE if probs[CLASS_STANCE] >= probs[CLASS_NEUTRAL] else CLASS_NEUTRAL
    return label, float(probs.max())
