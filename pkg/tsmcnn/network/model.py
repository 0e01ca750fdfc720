"""
The multi-scale convolutional network: assembly from a configuration, forward pass,
end-to-end backward pass and prediction by majority vote over the slices of a series.
"""

from __future__ import annotations

import logging
from copy import deepcopy
from dataclasses import dataclass, field

import numpy as np

from tsmcnn.core.numerics import FilterBank, softmax
from tsmcnn.core.transform import build_branch_batch, window_slices
from tsmcnn.exceptions import DimensionError
from tsmcnn.inputvalidators import validate_series
from tsmcnn.network.config import McnnConfig, geometry
from tsmcnn.nn.activations import Activation
from tsmcnn.nn.layers import (
    ConvLayer,
    DenseLayer,
    ForwardCache,
    conv_backward,
    conv_forward,
    dense_backward,
    dense_forward,
    maxpool_backward,
    maxpool_forward,
)
from tsmcnn.nn.loss import softmax_cross_entropy

logger = logging.getLogger(__name__)

PREDICTION_CHUNK_SIZE = 256
"""Number of slices pushed through the network at once when predicting."""


@dataclass
class McnnModel:
    """
    All learned parameters of a network together with the configuration that shaped them.

    Attributes
    ----------
        config : McnnConfig
            The configuration.
        seed : int | None
            The seed used to initialise the parameters.
        branch_names : list[str]
            Names of the branches, in order.
        local_layers : list[ConvLayer]
            One convolutional layer per branch.
        full_layers : list[ConvLayer]
            The layers of the full convolution stage.
        dense : DenseLayer
            The hidden fully connected layer.
        output : DenseLayer
            The output layer producing one logit per class.
        class_labels : list | None
            The original label of each class index, if known.
    """

    config: McnnConfig
    seed: int | None
    branch_names: list
    local_layers: list
    full_layers: list
    dense: DenseLayer
    output: DenseLayer
    class_labels: list | None = None

    @property
    def full_layer(self) -> ConvLayer:
        """The first layer of the full convolution stage."""
        return self.full_layers[0]

    def parameters(self) -> dict:
        """
        The parameter arrays, by name, in the fixed order used by the model file format:
        local layers in branch order, full-stage layers, hidden dense layer, output layer; the
        weights of a layer come before its bias. The arrays are the ones stored in the layers,
        not copies.
        """
        params = {}
        for name, layer in zip(self.branch_names, self.local_layers):
            params[f"local_{name}_weights"] = layer.bank.weights
            params[f"local_{name}_bias"] = layer.bank.bias
        for i, layer in enumerate(self.full_layers):
            params[f"full_{i}_weights"] = layer.bank.weights
            params[f"full_{i}_bias"] = layer.bank.bias
        params["dense_weights"] = self.dense.weights
        params["dense_bias"] = self.dense.bias
        params["output_weights"] = self.output.weights
        params["output_bias"] = self.output.bias
        return params

    def copy(self) -> McnnModel:
        return deepcopy(self)


@dataclass
class NetworkCache:
    """
    Everything a forward pass over a batch keeps for :py:func:`backward`.
    """

    local: list = field(default_factory=list)
    local_pool: list = field(default_factory=list)
    branch_channels: list = field(default_factory=list)
    full: list = field(default_factory=list)
    full_pool: list = field(default_factory=list)
    pooled_shape: tuple = ()
    dense: ForwardCache = None
    output: ForwardCache = None
    logits: np.ndarray = None


def _glorot(rng: np.random.Generator, shape: tuple, fan_in: int, fan_out: int) -> np.ndarray:
    limit = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-limit, limit, size=shape)


def assemble(config: McnnConfig, seed: int = None) -> McnnModel:
    """
    Builds a network with freshly initialised parameters. Weights are drawn uniformly in
    :code:`[-sqrt(6 / (fan_in + fan_out)), sqrt(6 / (fan_in + fan_out))]`, biases are 0. The
    same configuration and seed always yield the same parameters.

    Parameters
    ----------
        config : McnnConfig
            The configuration.
        seed : int, default: :code:`None`
            Seed for numpy random number generator.

    Returns
    -------
        McnnModel
            The network.

    Raises
    ------
        GeometryError
            When the configuration cannot be realised, naming the branch at fault.

    Examples
    --------

        .. testcode::

            from tsmcnn.network import McnnConfig, assemble

            model = assemble(McnnConfig(num_classes=2, input_length=64, local_filters=4,
                                        full_filters=4, dense_units=8), seed=3)
            assert model.output.weights.shape == (2, 8)
    """
    geo = geometry(config)
    rng = np.random.default_rng(seed)
    m = geo.filter_length
    local_layers = []
    for branch in geo.branches:
        shape = (config.local_filters, branch.channels, m)
        weights = _glorot(rng, shape, branch.channels * m, config.local_filters * m)
        local_layers.append(
            ConvLayer(FilterBank(weights, np.zeros(config.local_filters)), config.activation)
        )
    full_layers = []
    for layer in geo.full_layers:
        shape = (config.full_filters, layer.in_channels, layer.filter_length)
        weights = _glorot(
            rng,
            shape,
            layer.in_channels * layer.filter_length,
            config.full_filters * layer.filter_length,
        )
        full_layers.append(
            ConvLayer(FilterBank(weights, np.zeros(config.full_filters)), config.activation)
        )
    dense_weights = _glorot(
        rng, (config.dense_units, geo.dense_input), geo.dense_input, config.dense_units
    )
    output_weights = _glorot(
        rng, (config.num_classes, config.dense_units), config.dense_units, config.num_classes
    )
    return McnnModel(
        config=config,
        seed=seed,
        branch_names=[b.name for b in geo.branches],
        local_layers=local_layers,
        full_layers=full_layers,
        dense=DenseLayer(dense_weights, np.zeros(config.dense_units), config.activation),
        output=DenseLayer(output_weights, np.zeros(config.num_classes), Activation.IDENTITY),
    )


def deep_concat(maps: list) -> np.ndarray:
    """
    Stacks feature maps of equal length along the channel axis, in the given order.

    Parameters
    ----------
        maps : list[np.ndarray]
            Signals of shape :code:`(..., channels_i, length)`.

    Returns
    -------
        np.ndarray
            Signal of shape :code:`(..., sum(channels_i), length)`.
    """
    if len(maps) == 0:
        raise ValueError("There needs to be at least one feature map to concatenate.")
    maps = [np.asarray(m, dtype=np.float64) for m in maps]
    reference = maps[0].shape
    for m in maps[1:]:
        if m.ndim != len(reference):
            raise DimensionError("rank", len(reference), m.ndim, "deep_concat")
        if m.shape[-1] != reference[-1]:
            raise DimensionError("length", reference[-1], m.shape[-1], "deep_concat")
        if m.shape[:-2] != reference[:-2]:
            raise DimensionError("batch", reference[:-2], m.shape[:-2], "deep_concat")
    return np.concatenate(maps, axis=-2)


def forward_batch(model: McnnModel, batch: np.ndarray) -> tuple[np.ndarray, NetworkCache]:
    """
    Forward pass of a batch of slices.

    Parameters
    ----------
        model : McnnModel
            The network.
        batch : np.ndarray
            Array of shape :code:`(batch_size, slice_length)`.

    Returns
    -------
        tuple[np.ndarray, NetworkCache]
            The class probabilities, of shape :code:`(batch_size, num_classes)`, and the cache
            for :py:func:`backward`.
    """
    batch = np.asarray(batch, dtype=np.float64)
    if batch.ndim != 2:
        raise DimensionError("rank", 2, batch.ndim, "forward_batch")
    expected = model.config.slice_length
    if batch.shape[1] != expected:
        raise DimensionError("length", expected, batch.shape[1], "forward")
    p = model.config.pooling_factor
    cache = NetworkCache()
    pooled_maps = []
    for layer, signal in zip(model.local_layers, build_branch_batch(batch, model.config.branch_spec)):
        conv_out, conv_cache = conv_forward(layer, signal)
        pooled, pool_cache = maxpool_forward(conv_out, p)
        cache.local.append(conv_cache)
        cache.local_pool.append(pool_cache)
        cache.branch_channels.append(pooled.shape[1])
        pooled_maps.append(pooled)

    current = deep_concat(pooled_maps)
    for layer in model.full_layers:
        conv_out, conv_cache = conv_forward(layer, current)
        current, pool_cache = maxpool_forward(conv_out, min(p, conv_out.shape[-1]))
        cache.full.append(conv_cache)
        cache.full_pool.append(pool_cache)

    cache.pooled_shape = current.shape
    hidden, cache.dense = dense_forward(model.dense, current.reshape(len(batch), -1))
    logits, cache.output = dense_forward(model.output, hidden)
    cache.logits = logits
    return softmax(logits), cache


def backward(model: McnnModel, cache: NetworkCache, logit_grad: np.ndarray) -> dict:
    """
    Backward pass through the whole network.

    Parameters
    ----------
        model : McnnModel
            The network used for the forward pass.
        cache : NetworkCache
            The cache returned by :py:func:`forward_batch`.
        logit_grad : np.ndarray
            Gradient of the loss with respect to the logits.

    Returns
    -------
        dict
            The gradient of every parameter, under the names of :py:meth:`McnnModel.parameters`.
    """
    grads = {}
    output_grads, hidden_grad = dense_backward(model.output, cache.output, logit_grad)
    dense_grads, flat_grad = dense_backward(model.dense, cache.dense, hidden_grad)
    current = flat_grad.reshape(cache.pooled_shape)
    full_grads = []
    for i in reversed(range(len(model.full_layers))):
        current = maxpool_backward(cache.full_pool[i], current)
        layer_grads, current = conv_backward(model.full_layers[i], cache.full[i], current)
        full_grads.append((i, layer_grads))

    splits = np.cumsum(cache.branch_channels)[:-1]
    branch_grads = np.split(current, splits, axis=1)
    for name, layer, conv_cache, pool_cache, upstream in zip(
        model.branch_names, model.local_layers, cache.local, cache.local_pool, branch_grads
    ):
        conv_grad = maxpool_backward(pool_cache, upstream)
        layer_grads, _ = conv_backward(layer, conv_cache, conv_grad)
        grads[f"local_{name}_weights"] = layer_grads.weights
        grads[f"local_{name}_bias"] = layer_grads.bias
    for i, layer_grads in sorted(full_grads, key=lambda x: x[0]):
        grads[f"full_{i}_weights"] = layer_grads.weights
        grads[f"full_{i}_bias"] = layer_grads.bias
    grads["dense_weights"] = dense_grads.weights
    grads["dense_bias"] = dense_grads.bias
    grads["output_weights"] = output_grads.weights
    grads["output_bias"] = output_grads.bias
    return grads


def loss_and_gradients(model: McnnModel, batch: np.ndarray, labels: np.ndarray) -> tuple[float, dict]:
    """
    Mean cross-entropy of a batch of slices and its gradient with respect to every parameter.
    """
    _, cache = forward_batch(model, batch)
    loss, logit_grad = softmax_cross_entropy(cache.logits, labels)
    return loss, backward(model, cache, logit_grad)


def gradient_fragment(model: McnnModel, batch: np.ndarray, labels: np.ndarray):
    """
    Wraps the network and a batch into a fragment for :py:func:`~tsmcnn.nn.grad_check`.

    Returns
    -------
        tuple[Callable, dict]
            The fragment and the parameters it depends on.
    """

    def fragment():
        return loss_and_gradients(model, batch, labels)

    return fragment, model.parameters()


def predict_proba_batch(model: McnnModel, batch: np.ndarray) -> np.ndarray:
    """
    Class probabilities of many slices, computed in chunks of
    :py:data:`PREDICTION_CHUNK_SIZE` slices.
    """
    batch = np.asarray(batch, dtype=np.float64)
    chunks = [
        forward_batch(model, batch[i : i + PREDICTION_CHUNK_SIZE])[0]
        for i in range(0, len(batch), PREDICTION_CHUNK_SIZE)
    ]
    return np.concatenate(chunks, axis=0)


def forward(model: McnnModel, series) -> np.ndarray:
    """
    Class probabilities of a single series whose length is the slice length of the model.

    Parameters
    ----------
        model : McnnModel
            The network.
        series : np.ndarray
            The series, of length :code:`model.config.slice_length`.

    Returns
    -------
        np.ndarray
            The probability of each class.

    Raises
    ------
        DimensionError
            When the series does not have the slice length.
    """
    series = validate_series(series)
    return forward_batch(model, series[np.newaxis, :])[0][0]


@dataclass
class VoteResult:
    """
    Outcome of :py:func:`predict_with_vote`.

    Attributes
    ----------
        label : int
            The predicted class index.
        probability_sums : np.ndarray
            The probabilities of each class summed over the slices.
        votes : np.ndarray
            Number of slices whose most probable class is each class.
    """

    label: int
    probability_sums: np.ndarray
    votes: np.ndarray


def vote(probabilities: np.ndarray) -> VoteResult:
    """
    Majority vote over slice-level class probabilities (one row per slice). Ties between the
    most voted classes go to the largest summed probability, then to the lowest class index.
    """
    probabilities = np.asarray(probabilities, dtype=np.float64)
    num_classes = probabilities.shape[1]
    votes = np.bincount(np.argmax(probabilities, axis=1), minlength=num_classes)
    sums = probabilities.sum(axis=0)
    candidates = np.flatnonzero(votes == votes.max())
    winner = int(candidates[0])
    for c in candidates[1:]:
        if sums[c] > sums[winner]:
            winner = int(c)
    return VoteResult(winner, sums, votes)


def predict_with_vote(model: McnnModel, series) -> VoteResult:
    """
    Predicts the class of a series at least as long as the slice length: every slice of the
    series is classified and the slices vote, see :py:func:`vote`.

    Parameters
    ----------
        model : McnnModel
            The network.
        series : np.ndarray
            The series, of length at least :code:`model.config.slice_length`.

    Returns
    -------
        VoteResult
            The predicted class and the vote details.
    """
    series = validate_series(series)
    s = model.config.slice_length
    if len(series) < s:
        raise DimensionError("length", f"at least {s}", len(series), "predict_with_vote")
    return vote(predict_proba_batch(model, window_slices(series, s)))
