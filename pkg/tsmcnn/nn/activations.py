from __future__ import annotations

from enum import Enum

import numpy as np


class Activation(Enum):
    """
    Constants for the element-wise activation functions of the layers.
    """

    RELU = "relu"
    """
    Rectified linear unit :code:`max(0, x)`. The derivative at 0 is taken to be 0.
    """
    IDENTITY = "identity"
    """
    No activation, the layer is affine.
    """
    SIGMOID = "sigmoid"
    """
    Logistic function :code:`1 / (1 + exp(-x))`.
    """


def as_activation(activation: Activation | str) -> Activation:
    """Casts a string or an enumeration member into an :py:class:`Activation`."""
    try:
        if isinstance(activation, Enum):
            return Activation(activation.value)
        return Activation(activation)
    except ValueError as e:
        raise ValueError(
            f"Unknown activation {activation!r}. Choices are: "
            + ", ".join(a.value for a in Activation)
            + "."
        ) from e


def activate(values: np.ndarray, activation: Activation) -> np.ndarray:
    if activation == Activation.RELU:
        return np.maximum(values, 0.0)
    if activation == Activation.IDENTITY:
        return values
    if activation == Activation.SIGMOID:
        return 0.5 * (1.0 + np.tanh(0.5 * values))
    raise ValueError(f"Unknown activation {activation!r}.")


def activation_derivative(pre_activation: np.ndarray, activation: Activation) -> np.ndarray:
    """
    Derivative of the activation evaluated at the pre-activation values.
    """
    if activation == Activation.RELU:
        return (pre_activation > 0).astype(np.float64)
    if activation == Activation.IDENTITY:
        return np.ones_like(pre_activation)
    if activation == Activation.SIGMOID:
        s = activate(pre_activation, Activation.SIGMOID)
        return s * (1.0 - s)
    raise ValueError(f"Unknown activation {activation!r}.")
