"""
Dense numeric kernels shared by every layer of the package: 1-dimensional convolution, max
pooling by factor, affine maps and softmax.

Signals are float64 numpy arrays of shape :code:`(channels, length)`. All kernels also accept
any number of leading batch axes, i.e., arrays of shape :code:`(..., channels, length)`, which
is how mini-batches flow through the network. The kernels are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from tsmcnn.exceptions import DimensionError

Signal = np.ndarray
"""A float64 array of shape :code:`(channels, length)` (possibly with leading batch axes)."""


def as_signal(values, num_channels: int = None) -> Signal:
    """
    Validates and converts values into a signal. A 1-dimensional input is read as a single
    channel.

    Parameters
    ----------
        values:
            The values, 1- or 2-dimensional.
        num_channels: int, default: :code:`None`
            If given, the number of channels the signal must have.

    Returns
    -------
        np.ndarray
            A float64 array of shape :code:`(channels, length)`.

    Examples
    --------

        .. testcode::

            from tsmcnn.core import as_signal

            signal = as_signal([1, 3, 6])
            assert signal.shape == (1, 3)
    """
    signal = np.array(values, dtype=np.float64)
    if signal.ndim == 1:
        signal = signal[np.newaxis, :]
    if signal.ndim != 2:
        raise DimensionError("rank", 2, signal.ndim, "as_signal")
    if signal.shape[0] < 1:
        raise DimensionError("channels", "at least 1", signal.shape[0], "as_signal")
    if signal.shape[1] < 1:
        raise DimensionError("length", "at least 1", signal.shape[1], "as_signal")
    if num_channels is not None and signal.shape[0] != num_channels:
        raise DimensionError("channels", num_channels, signal.shape[0], "as_signal")
    if not np.all(np.isfinite(signal)):
        raise ValueError("A signal cannot contain NaN or infinite values.")
    return signal


@dataclass
class FilterBank:
    """
    A bank of 1-dimensional convolution filters.

    Parameters
    ----------
        weights : np.ndarray
            Array of shape :code:`(num_filters, in_channels, filter_length)`.
        bias : np.ndarray
            Array of shape :code:`(num_filters,)`.
    """

    weights: np.ndarray
    bias: np.ndarray

    def __post_init__(self):
        self.weights = np.asarray(self.weights, dtype=np.float64)
        self.bias = np.asarray(self.bias, dtype=np.float64)
        if self.weights.ndim != 3:
            raise DimensionError("rank", 3, self.weights.ndim, "FilterBank weights")
        if self.weights.shape[2] < 1:
            raise DimensionError("filter_length", "at least 1", self.weights.shape[2], "FilterBank")
        if self.bias.shape != (self.weights.shape[0],):
            raise DimensionError("filters", self.weights.shape[0], self.bias.shape, "FilterBank bias")
        if not (np.all(np.isfinite(self.weights)) and np.all(np.isfinite(self.bias))):
            raise ValueError("The weights and bias of a filter bank need to be finite.")

    @property
    def num_filters(self) -> int:
        return self.weights.shape[0]

    @property
    def in_channels(self) -> int:
        return self.weights.shape[1]

    @property
    def filter_length(self) -> int:
        return self.weights.shape[2]

    def copy(self) -> FilterBank:
        return FilterBank(self.weights.copy(), self.bias.copy())


def conv1d(signal: Signal, bank: FilterBank) -> Signal:
    """
    Valid (no padding) 1-dimensional discrete convolution of a multichannel signal with a filter
    bank. The filter is index-reversed, that is, for a filter of length :code:`m` the output is

    .. math::

        y_{f, i} = \\sum_c \\sum_{j=1}^{m} w_{f, c, m + 1 - j} \\, x_{c, i + j - 1} + b_f

    which makes :code:`[1, -1]` the forward difference filter. The computation unfolds the input
    into its sliding windows (im2col) and contracts them with the flipped filters.

    Parameters
    ----------
        signal : np.ndarray
            Input of shape :code:`(..., in_channels, length)`.
        bank : FilterBank
            The filters.

    Returns
    -------
        np.ndarray
            Output of shape :code:`(..., num_filters, length - filter_length + 1)`.

    Raises
    ------
        DimensionError
            When the channels do not match or the signal is shorter than the filters.

    Examples
    --------

        .. testcode::

            import numpy as np
            from tsmcnn.core import conv1d, FilterBank

            bank = FilterBank(np.array([[[1., -1.]]]), np.zeros(1))
            assert conv1d(np.array([[1., 3., 6.]]), bank).tolist() == [[2., 3.]]
    """
    signal = np.asarray(signal, dtype=np.float64)
    if signal.ndim < 2:
        raise DimensionError("rank", "at least 2", signal.ndim, "conv1d")
    if signal.shape[-2] != bank.in_channels:
        raise DimensionError("channels", bank.in_channels, signal.shape[-2], "conv1d")
    if signal.shape[-1] < bank.filter_length:
        raise DimensionError(
            "length", f"at least {bank.filter_length}", signal.shape[-1], "conv1d"
        )
    windows = sliding_window_view(signal, bank.filter_length, axis=-1)
    flipped = bank.weights[:, :, ::-1]
    # windows: (..., C, L, m), flipped: (F, C, m) -> (..., L, F)
    out = np.tensordot(windows, flipped, axes=([-3, -1], [1, 2]))
    out = np.moveaxis(out, -1, -2)
    return out + bank.bias[:, np.newaxis]


def pooling_windows(length: int, pooling_factor: int) -> list[tuple[int, int]]:
    """
    Returns the half-open windows :code:`[floor(i * n / p), floor((i + 1) * n / p))` used by
    :py:func:`~tsmcnn.core.numerics.maxpool_by_factor`. They tile :code:`range(length)` exactly.
    """
    return [
        ((i * length) // pooling_factor, ((i + 1) * length) // pooling_factor)
        for i in range(pooling_factor)
    ]


def maxpool_by_factor(signal: Signal, pooling_factor: int) -> tuple[Signal, np.ndarray]:
    """
    Max pooling where the pooling factor is the number of outputs per channel: the input of
    length :code:`n` is cut into :code:`p` windows of size about :code:`n / p` and the maximum of
    each window is kept. Ties go to the lowest index.

    Parameters
    ----------
        signal : np.ndarray
            Input of shape :code:`(..., channels, length)`.
        pooling_factor : int
            The number of outputs per channel, between 1 and the length.

    Returns
    -------
        tuple[np.ndarray, np.ndarray]
            The pooled signal of shape :code:`(..., channels, pooling_factor)` and, for each
            output cell, the index in the input of the maximum.

    Examples
    --------

        .. testcode::

            from tsmcnn.core import maxpool_by_factor

            pooled, argmax = maxpool_by_factor([[3, 1, 4, 1, 5, 9, 2]], 3)
            assert pooled.tolist() == [[3, 4, 9]]
            assert argmax.tolist() == [[0, 2, 5]]
    """
    signal = np.asarray(signal, dtype=np.float64)
    length = signal.shape[-1]
    if int(pooling_factor) != pooling_factor or pooling_factor < 1:
        raise ValueError(f"The pooling factor needs to be a positive integer (got {pooling_factor}).")
    if pooling_factor > length:
        raise ValueError(
            f"The pooling factor ({pooling_factor}) cannot exceed the signal length ({length})."
        )
    pooled = np.empty(signal.shape[:-1] + (pooling_factor,), dtype=np.float64)
    argmax = np.empty(signal.shape[:-1] + (pooling_factor,), dtype=np.intp)
    for i, (start, end) in enumerate(pooling_windows(length, pooling_factor)):
        window = signal[..., start:end]
        local = np.argmax(window, axis=-1)
        argmax[..., i] = start + local
        pooled[..., i] = np.take_along_axis(window, local[..., np.newaxis], axis=-1)[..., 0]
    return pooled, argmax


def softmax(logits: np.ndarray) -> np.ndarray:
    """
    Softmax along the last axis, computed after subtracting the maximum logit.

    Parameters
    ----------
        logits : np.ndarray
            Finite logits of shape :code:`(..., num_classes)`.

    Returns
    -------
        np.ndarray
            Probabilities of the same shape, summing to 1 along the last axis.
    """
    logits = np.asarray(logits, dtype=np.float64)
    if not np.all(np.isfinite(logits)):
        raise ValueError("The logits need to be finite.")
    shifted = logits - np.max(logits, axis=-1, keepdims=True)
    exp = np.exp(shifted)
    return exp / np.sum(exp, axis=-1, keepdims=True)


def dense(inputs: np.ndarray, weights: np.ndarray, bias: np.ndarray) -> np.ndarray:
    """
    Affine map :code:`W x + b` applied to the last axis of the input.

    Parameters
    ----------
        inputs : np.ndarray
            Array of shape :code:`(..., d)`.
        weights : np.ndarray
            Matrix of shape :code:`(h, d)`.
        bias : np.ndarray
            Vector of shape :code:`(h,)`.

    Returns
    -------
        np.ndarray
            Array of shape :code:`(..., h)`.
    """
    inputs = np.asarray(inputs, dtype=np.float64)
    weights = np.asarray(weights, dtype=np.float64)
    bias = np.asarray(bias, dtype=np.float64)
    if weights.ndim != 2:
        raise DimensionError("rank", 2, weights.ndim, "dense weights")
    if inputs.shape[-1] != weights.shape[1]:
        raise DimensionError("features", weights.shape[1], inputs.shape[-1], "dense")
    if bias.shape != (weights.shape[0],):
        raise DimensionError("units", weights.shape[0], bias.shape, "dense bias")
    return inputs @ weights.T + bias
