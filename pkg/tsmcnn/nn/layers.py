"""
Trainable layers with their forward and backward passes. Forward functions return the output
together with a :py:class:`ForwardCache`; the matching backward function consumes the cache and
returns the gradients of the loss with respect to the parameters and to the input.

Inputs may carry leading batch axes; parameter gradients are then summed over the batch.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from tsmcnn.core.numerics import FilterBank, conv1d, dense, maxpool_by_factor
from tsmcnn.exceptions import DimensionError
from tsmcnn.nn.activations import (
    Activation,
    activate,
    activation_derivative,
    as_activation,
)


@dataclass
class ConvLayer:
    """
    A 1-dimensional convolutional layer: a filter bank followed by an activation.

    Parameters
    ----------
        bank : FilterBank
            The filters and their biases.
        activation : Activation, default: :code:`Activation.RELU`
            The activation applied to the convolution output.
    """

    bank: FilterBank
    activation: Activation = Activation.RELU

    def __post_init__(self):
        self.activation = as_activation(self.activation)

    def copy(self) -> ConvLayer:
        return ConvLayer(self.bank.copy(), self.activation)


@dataclass
class DenseLayer:
    """
    A fully connected layer computing :code:`activation(W x + b)`.

    Parameters
    ----------
        weights : np.ndarray
            Matrix of shape :code:`(units, input_size)`.
        bias : np.ndarray
            Vector of shape :code:`(units,)`.
        activation : Activation, default: :code:`Activation.IDENTITY`
            The activation.
    """

    weights: np.ndarray
    bias: np.ndarray
    activation: Activation = Activation.IDENTITY

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=np.float64)
        self.bias = np.asarray(self.bias, dtype=np.float64)
        self.activation = as_activation(self.activation)
        if self.weights.ndim != 2:
            raise DimensionError("rank", 2, self.weights.ndim, "DenseLayer weights")
        if self.bias.shape != (self.weights.shape[0],):
            raise DimensionError("units", self.weights.shape[0], self.bias.shape, "DenseLayer bias")

    def copy(self) -> DenseLayer:
        return DenseLayer(self.weights.copy(), self.bias.copy(), self.activation)


@dataclass
class ParamGrads:
    """
    Gradients of the loss with respect to the weights and bias of a layer; same shapes as the
    parameters.
    """

    weights: np.ndarray
    bias: np.ndarray


@dataclass
class ForwardCache:
    """
    What a forward pass saves for the backward pass: the layer input, the pre-activation
    values and, for pooling, the argmax indices. A cache can only be consumed once.
    """

    inputs: np.ndarray | None = None
    pre_activation: np.ndarray | None = None
    argmax: np.ndarray | None = None
    input_shape: tuple | None = None
    consumed: bool = False

    def consume(self):
        if self.consumed:
            raise ValueError("This forward cache has already been used by a backward pass.")
        self.consumed = True


def _check_upstream(upstream: np.ndarray, expected_shape: tuple, context: str) -> np.ndarray:
    upstream = np.asarray(upstream, dtype=np.float64)
    if upstream.shape != expected_shape:
        raise DimensionError("output", expected_shape, upstream.shape, context)
    return upstream


def conv_forward(layer: ConvLayer, inputs: np.ndarray) -> tuple[np.ndarray, ForwardCache]:
    """
    Forward pass of a convolutional layer: :code:`activation(conv1d(inputs, bank))`.

    Parameters
    ----------
        layer : ConvLayer
            The layer.
        inputs : np.ndarray
            Input of shape :code:`(..., in_channels, length)`.

    Returns
    -------
        tuple[np.ndarray, ForwardCache]
            The output of shape :code:`(..., num_filters, length - filter_length + 1)` and the
            cache for :py:func:`conv_backward`.
    """
    inputs = np.asarray(inputs, dtype=np.float64)
    pre_activation = conv1d(inputs, layer.bank)
    return activate(pre_activation, layer.activation), ForwardCache(
        inputs=inputs, pre_activation=pre_activation
    )


def conv_backward(
    layer: ConvLayer, cache: ForwardCache, upstream: np.ndarray
) -> tuple[ParamGrads, np.ndarray]:
    """
    Backward pass of a convolutional layer.

    Parameters
    ----------
        layer : ConvLayer
            The layer used in the forward pass.
        cache : ForwardCache
            The cache returned by :py:func:`conv_forward`.
        upstream : np.ndarray
            Gradient of the loss with respect to the layer output.

    Returns
    -------
        tuple[ParamGrads, np.ndarray]
            Gradients with respect to the filters and biases (summed over batch axes) and the
            gradient with respect to the input.
    """
    upstream = _check_upstream(upstream, cache.pre_activation.shape, "conv_backward")
    cache.consume()
    delta = upstream * activation_derivative(cache.pre_activation, layer.activation)

    weights = layer.bank.weights
    num_filters, num_channels, filter_length = weights.shape
    length = cache.inputs.shape[-1]
    inputs = cache.inputs.reshape(-1, num_channels, length)
    delta = delta.reshape(-1, num_filters, length - filter_length + 1)

    windows = sliding_window_view(inputs, filter_length, axis=-1)
    grad_flipped = np.tensordot(delta, windows, axes=([0, 2], [0, 2]))
    grad_weights = np.ascontiguousarray(grad_flipped[:, :, ::-1])
    grad_bias = delta.sum(axis=(0, 2))

    padded = np.pad(delta, ((0, 0), (0, 0), (filter_length - 1, filter_length - 1)))
    padded_windows = sliding_window_view(padded, filter_length, axis=-1)
    input_grad = np.tensordot(padded_windows, weights, axes=([1, 3], [0, 2]))
    input_grad = np.moveaxis(input_grad, -1, -2).reshape(cache.inputs.shape)
    return ParamGrads(grad_weights, grad_bias), input_grad


def maxpool_forward(inputs: np.ndarray, pooling_factor: int) -> tuple[np.ndarray, ForwardCache]:
    """
    Forward pass of a max pooling by factor, see
    :py:func:`~tsmcnn.core.numerics.maxpool_by_factor`.
    """
    inputs = np.asarray(inputs, dtype=np.float64)
    pooled, argmax = maxpool_by_factor(inputs, pooling_factor)
    return pooled, ForwardCache(argmax=argmax, input_shape=inputs.shape)


def maxpool_backward(cache: ForwardCache, upstream: np.ndarray) -> np.ndarray:
    """
    Backward pass of the max pooling: each upstream value is routed to the position of the
    maximum of its window, every other position receives 0.
    """
    if cache.argmax is None:
        raise ValueError("The cache does not come from a pooling forward pass.")
    upstream = _check_upstream(upstream, cache.argmax.shape, "maxpool_backward")
    cache.consume()
    input_grad = np.zeros(cache.input_shape, dtype=np.float64)
    np.put_along_axis(input_grad, cache.argmax, upstream, axis=-1)
    return input_grad


def dense_forward(layer: DenseLayer, inputs: np.ndarray) -> tuple[np.ndarray, ForwardCache]:
    """
    Forward pass of a fully connected layer.
    """
    inputs = np.asarray(inputs, dtype=np.float64)
    pre_activation = dense(inputs, layer.weights, layer.bias)
    return activate(pre_activation, layer.activation), ForwardCache(
        inputs=inputs, pre_activation=pre_activation
    )


def dense_backward(
    layer: DenseLayer, cache: ForwardCache, upstream: np.ndarray
) -> tuple[ParamGrads, np.ndarray]:
    """
    Backward pass of a fully connected layer. Parameter gradients are summed over the leading
    batch axes.
    """
    upstream = _check_upstream(upstream, cache.pre_activation.shape, "dense_backward")
    cache.consume()
    delta = upstream * activation_derivative(cache.pre_activation, layer.activation)
    flat_delta = delta.reshape(-1, layer.weights.shape[0])
    flat_inputs = cache.inputs.reshape(-1, layer.weights.shape[1])
    grad_weights = flat_delta.T @ flat_inputs
    grad_bias = flat_delta.sum(axis=0)
    input_grad = delta @ layer.weights
    return ParamGrads(grad_weights, grad_bias), input_grad
