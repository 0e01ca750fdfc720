from tsmcnn.nn.activations import Activation, activate, activation_derivative, as_activation
from tsmcnn.nn.layers import (
    ConvLayer,
    DenseLayer,
    ParamGrads,
    ForwardCache,
    conv_forward,
    conv_backward,
    maxpool_forward,
    maxpool_backward,
    dense_forward,
    dense_backward,
)
from tsmcnn.nn.loss import softmax_cross_entropy
from tsmcnn.nn.gradcheck import GradCheckReport, grad_check, relative_error

__all__ = [
    "Activation",
    "activate",
    "activation_derivative",
    "as_activation",
    "ConvLayer",
    "DenseLayer",
    "ParamGrads",
    "ForwardCache",
    "conv_forward",
    "conv_backward",
    "maxpool_forward",
    "maxpool_backward",
    "dense_forward",
    "dense_backward",
    "softmax_cross_entropy",
    "GradCheckReport",
    "grad_check",
    "relative_error",
]
