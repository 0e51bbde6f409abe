"""Four-layer view-transfer regression network.

Maps a view-specific trajectory histogram to the canonical-view histogram of the same
motion. Layers 1-3 are sigmoid units with inverted dropout during training; layer 4 is
affine. The concatenated activations of all four layers form the view-invariant RGB
feature.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from numpy.typing import ArrayLike
from scipy.special import expit

from ..core.config import FULL_WIDTHS, TrainConfig
from ..core.errors import InvalidInputError
from ..core.rng import Stream, derive_seed, make_rng
from ..data.matrix import read_matrix_blocks, write_matrix_blocks
from .codebook import Codebook, bow_encode

logger = logging.getLogger(__name__)

# Full-scale width presets; each sums to the 6000-dimensional RGB feature.
NETWORK_VARIANTS: dict[str, tuple[int, int, int, int]] = {
    "bottleneck": FULL_WIDTHS,
    "funnel": (2000, 1000, 1000, 2000),
    "uniform": (1500, 1500, 1500, 1500),
}

_PARAMS_MAGIC = "viewnet"


@dataclass(frozen=True)
class NetworkParams:
    """Weights (layer l: w_l x w_{l-1}, w_0 = input dim) and biases of the four layers."""

    weights: tuple[np.ndarray, ...]
    biases: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        if len(self.weights) != 4 or len(self.biases) != 4:
            raise InvalidInputError("Network needs exactly 4 weight matrices and 4 bias vectors")
        fan_in = self.weights[0].shape[1]
        for layer, (w, b) in enumerate(zip(self.weights, self.biases, strict=True), start=1):
            if w.ndim != 2 or w.shape[1] != fan_in or b.shape != (w.shape[0],):
                raise InvalidInputError(f"Layer {layer} shapes do not chain: {w.shape}, {b.shape}")
            if not (np.all(np.isfinite(w)) and np.all(np.isfinite(b))):
                raise InvalidInputError(f"Layer {layer} has non-finite parameters")
            fan_in = w.shape[0]

    @property
    def input_dim(self) -> int:
        return self.weights[0].shape[1]

    @property
    def widths(self) -> tuple[int, int, int, int]:
        w1, w2, w3, w4 = (w.shape[0] for w in self.weights)
        return (w1, w2, w3, w4)

    @property
    def feature_length(self) -> int:
        return sum(self.widths)


@dataclass(frozen=True)
class TrainingPair:
    """A view-specific histogram and the canonical-view code it should regress to."""

    input: np.ndarray
    target: np.ndarray


def init_params(
    seed: int,
    input_dim: int,
    widths: Sequence[int] = FULL_WIDTHS,
) -> NetworkParams:
    """Xavier-uniform weights with averaged fan, zero biases.

    Each weight is drawn from U(-sqrt(3/n), sqrt(3/n)) with n = (fan_in + fan_out) / 2.
    """
    widths = tuple(int(w) for w in widths)
    if len(widths) != 4 or any(w < 1 for w in widths) or input_dim < 1:
        raise InvalidInputError(f"Invalid network shape: input {input_dim}, widths {widths}")
    rng = make_rng(seed, Stream.NETWORK_INIT)
    weights = []
    fan_in = input_dim
    for fan_out in widths:
        bound = np.sqrt(3.0 / ((fan_in + fan_out) / 2.0))
        weights.append(rng.uniform(-bound, bound, size=(fan_out, fan_in)))
        fan_in = fan_out
    biases = tuple(np.zeros(w) for w in widths)
    return NetworkParams(weights=tuple(weights), biases=biases)


def _dropout_masks(
    seed: int, batch: int, widths: Sequence[int], rate: float
) -> list[np.ndarray]:
    """Scaled keep-masks (batch x w_l) for the three sigmoid layers."""
    if rate == 0:
        return [np.ones((batch, w)) for w in widths[:3]]
    rng = make_rng(seed, Stream.DROPOUT)
    scale = 1.0 / (1.0 - rate)
    return [(rng.random((batch, w)) >= rate) * scale for w in widths[:3]]


def _check_input(params: NetworkParams, inputs: np.ndarray) -> None:
    if inputs.shape[-1] != params.input_dim:
        raise InvalidInputError(
            f"Input dimension {inputs.shape[-1]} does not match network input {params.input_dim}"
        )


def _forward_batch(
    params: NetworkParams,
    inputs: np.ndarray,
    masks: list[np.ndarray] | None,
) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Return (sigmoid outputs before dropout, layer outputs after dropout) for N x in inputs."""
    sigmoids: list[np.ndarray] = []
    outputs: list[np.ndarray] = []
    current = inputs
    for layer, (w, b) in enumerate(zip(params.weights, params.biases, strict=True)):
        z = current @ w.T + b
        if layer < 3:
            s = expit(z)
            sigmoids.append(s)
            current = s * masks[layer] if masks is not None else s
        else:
            current = z
        outputs.append(current)
    return sigmoids, outputs


def forward(
    params: NetworkParams,
    x: ArrayLike,
    mode: str = "infer",
    dropout_mask_seed: int = 0,
    dropout_rate: float = 0.5,
) -> list[np.ndarray]:
    """Per-layer activations of one input vector.

    In ``train`` mode, inverted dropout with a mask seeded by ``dropout_mask_seed`` is
    applied to the sigmoid layers; ``infer`` mode ignores the seed.
    """
    vector = np.asarray(x, dtype=np.float64)
    if vector.ndim != 1:
        raise InvalidInputError(f"Expected an input vector, got shape {vector.shape}")
    _check_input(params, vector)
    if mode == "train":
        masks = _dropout_masks(dropout_mask_seed, 1, params.widths, dropout_rate)
    elif mode == "infer":
        masks = None
    else:
        raise InvalidInputError(f"Invalid mode '{mode}'. Allowed values: train, infer.")
    _, outputs = _forward_batch(params, vector[np.newaxis, :], masks)
    return [out[0] for out in outputs]


def _loss_and_gradients(
    params: NetworkParams,
    inputs: np.ndarray,
    targets: np.ndarray,
    masks: list[np.ndarray] | None,
) -> tuple[float, list[np.ndarray], list[np.ndarray]]:
    n = inputs.shape[0]
    sigmoids, outputs = _forward_batch(params, inputs, masks)
    residual = outputs[3] - targets
    loss = float(np.sum(residual * residual) / (2.0 * n))

    grad_w: list[np.ndarray] = [np.empty(0)] * 4
    grad_b: list[np.ndarray] = [np.empty(0)] * 4
    delta = residual / n
    for layer in range(3, -1, -1):
        below = outputs[layer - 1] if layer > 0 else inputs
        grad_w[layer] = delta.T @ below
        grad_b[layer] = delta.sum(axis=0)
        if layer == 0:
            break
        upstream = delta @ params.weights[layer]
        if masks is not None:
            upstream = upstream * masks[layer - 1]
        s = sigmoids[layer - 1]
        delta = upstream * s * (1.0 - s)
    return loss, grad_w, grad_b


def _stack_pairs(params: NetworkParams, batch: Sequence[TrainingPair]) -> tuple[np.ndarray, ...]:
    if not batch:
        raise InvalidInputError("Training batch is empty")
    inputs = np.stack([np.asarray(p.input, dtype=np.float64) for p in batch])
    targets = np.stack([np.asarray(p.target, dtype=np.float64) for p in batch])
    _check_input(params, inputs)
    if targets.shape[1] != params.widths[3]:
        raise InvalidInputError(
            f"Target length {targets.shape[1]} does not match output width {params.widths[3]}"
        )
    return inputs, targets


def loss_and_gradients(
    params: NetworkParams,
    batch: Sequence[TrainingPair],
    dropout_seed: int | None = None,
    dropout_rate: float = 0.5,
) -> tuple[float, NetworkParams]:
    """Half mean squared error over the batch and its gradients.

    With ``dropout_seed`` set, pair i uses row i of the masks drawn from that seed, so a
    single-pair batch sees the same mask as ``forward(..., "train", dropout_seed)``. Without
    it the loss is evaluated dropout-free. Weight decay is not part of this loss.
    """
    inputs, targets = _stack_pairs(params, batch)
    masks = (
        _dropout_masks(dropout_seed, len(batch), params.widths, dropout_rate)
        if dropout_seed is not None
        else None
    )
    loss, grad_w, grad_b = _loss_and_gradients(params, inputs, targets, masks)
    return loss, NetworkParams(weights=tuple(grad_w), biases=tuple(grad_b))


def lr_at(cfg: TrainConfig, iteration: int) -> float:
    """Step schedule: initial rate divided by the drop factor every ``lr_drop_every`` steps."""
    return cfg.initial_lr / cfg.lr_drop_factor ** (iteration // cfg.lr_drop_every)


def sgd_train(
    pairs: Sequence[TrainingPair],
    cfg: TrainConfig,
    seed: int,
    widths: Sequence[int] = FULL_WIDTHS,
) -> tuple[NetworkParams, list[float]]:
    """Train from scratch with momentum SGD; return the parameters and per-iteration loss.

    Update rule: v <- mu*v - lr*(g + decay*w); w <- w + v (no decay on biases). Batches
    come from a seeded shuffle, so ``(pairs, cfg, seed)`` determine the result bit-exactly.
    """
    cfg.validate()
    if not pairs:
        raise InvalidInputError("Need at least one training pair")
    input_dim = len(pairs[0].input)
    params = init_params(derive_seed(seed, Stream.NETWORK_INIT), input_dim, widths)
    inputs, targets = _stack_pairs(params, pairs)

    rng = make_rng(seed, Stream.NETWORK_TRAIN)
    weights = [w.copy() for w in params.weights]
    biases = [b.copy() for b in params.biases]
    vel_w = [np.zeros_like(w) for w in weights]
    vel_b = [np.zeros_like(b) for b in biases]

    n = inputs.shape[0]
    batch_size = min(cfg.batch_size, n)
    order = rng.permutation(n)
    position = 0
    trace: list[float] = []
    for iteration in range(cfg.total_iters):
        if position + batch_size > n:
            order = rng.permutation(n)
            position = 0
        # sorted so a full batch always sums in the same order
        idx = np.sort(order[position : position + batch_size])
        position += batch_size

        current = NetworkParams(weights=tuple(weights), biases=tuple(biases))
        masks = _dropout_masks(
            int(rng.integers(0, 2**63 - 1)), batch_size, current.widths, cfg.dropout_rate
        )
        loss, grad_w, grad_b = _loss_and_gradients(current, inputs[idx], targets[idx], masks)
        trace.append(loss)

        lr = lr_at(cfg, iteration)
        for layer in range(4):
            vel_w[layer] = cfg.momentum * vel_w[layer] - lr * (
                grad_w[layer] + cfg.weight_decay * weights[layer]
            )
            vel_b[layer] = cfg.momentum * vel_b[layer] - lr * grad_b[layer]
            weights[layer] = weights[layer] + vel_w[layer]
            biases[layer] = biases[layer] + vel_b[layer]

        if (iteration + 1) % 1000 == 0:
            logger.info("iter %d: loss %.6g (lr %.3g)", iteration + 1, loss, lr)

    trained = NetworkParams(weights=tuple(weights), biases=tuple(biases))
    return trained, trace


def extract_feature(params: NetworkParams, x: ArrayLike) -> np.ndarray:
    """View-invariant feature: inference-mode activations of all layers, concatenated."""
    return np.concatenate(forward(params, x, mode="infer"))


def extract_features(params: NetworkParams, xs: ArrayLike) -> np.ndarray:
    """Row-wise ``extract_feature`` for an N x input matrix; returns N x feature_length."""
    inputs = np.asarray(xs, dtype=np.float64)
    if inputs.ndim != 2:
        raise InvalidInputError(f"Expected an N x input matrix, got shape {inputs.shape}")
    _check_input(params, inputs)
    _, outputs = _forward_batch(params, inputs, None)
    return np.concatenate(outputs, axis=1)


def make_training_pairs(
    set_pairs: Iterable[tuple[ArrayLike, ArrayLike]],
    codebook: Codebook,
) -> list[TrainingPair]:
    """BoW-encode (view-specific, canonical) trajectory-set pairs."""
    return [
        TrainingPair(input=bow_encode(specific, codebook), target=bow_encode(canonical, codebook))
        for specific, canonical in set_pairs
    ]


def save_params(params: NetworkParams, path: Path | str) -> None:
    """One text file: ``viewnet <input_dim> w1 w2 w3 w4`` then W1, b1, ..., W4, b4."""
    header = " ".join([_PARAMS_MAGIC, str(params.input_dim), *map(str, params.widths)])
    blocks: list[np.ndarray] = []
    for w, b in zip(params.weights, params.biases, strict=True):
        blocks.extend([w, b[:, np.newaxis]])
    write_matrix_blocks(header, blocks, path)


def load_params(path: Path | str) -> NetworkParams:
    header, blocks = read_matrix_blocks(path)
    tokens = header.split(" ")
    if len(tokens) != 6 or tokens[0] != _PARAMS_MAGIC or not all(t.isdigit() for t in tokens[1:]):
        raise InvalidInputError(f"{path}: not a network parameter file (header {header!r})")
    if len(blocks) != 8:
        raise InvalidInputError(f"{path}: expected 8 parameter blocks, found {len(blocks)}")
    params = NetworkParams(
        weights=tuple(blocks[0::2]),
        biases=tuple(b[:, 0] for b in blocks[1::2]),
    )
    expected = (int(tokens[1]), *(int(t) for t in tokens[2:]))
    if (params.input_dim, *params.widths) != expected:
        raise InvalidInputError(f"{path}: header {header!r} does not match the stored blocks")
    return params
