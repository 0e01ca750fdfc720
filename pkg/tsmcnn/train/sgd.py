"""
Mini-batch stochastic gradient descent with momentum and the configuration of a training run.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from tsmcnn.exceptions import DimensionError
from tsmcnn.inputvalidators import validate_float, validate_int


@dataclass(frozen=True)
class TrainConfig:
    """
    Hyperparameters of a training run.

    Parameters
    ----------
        learning_rate : float, default: :code:`0.01`
            Step size, positive.
        momentum : float, default: :code:`0.9`
            Momentum coefficient, in [0, 1).
        batch_size : int, default: :code:`32`
            Number of slices per mini-batch.
        max_epochs : int, default: :code:`200`
            Maximum number of epochs.
        patience : int, default: :code:`20`
            Number of consecutive epochs without improvement of the validation error after
            which training stops. With 0, a single epoch runs.
        seed : int, default: :code:`None`
            Seed for the initialisation, the validation split and the shuffling.
        val_fraction : float, default: :code:`0.2`
            Proportion of every class held out for validation, in (0, 1).
    """

    learning_rate: float = 0.01
    momentum: float = 0.9
    batch_size: int = 32
    max_epochs: int = 200
    patience: int = 20
    seed: int = None
    val_fraction: float = 0.2

    def __post_init__(self):
        validate_float(self.learning_rate, "learning rate", 0, lower_open=True)
        validate_float(self.momentum, "momentum", 0, 1, upper_open=True)
        validate_int(self.batch_size, "batch size", lower_bound=1)
        validate_int(self.max_epochs, "maximum number of epochs", lower_bound=1)
        validate_int(self.patience, "patience", lower_bound=0)
        if self.seed is not None:
            validate_int(self.seed, "seed", lower_bound=0)
        validate_float(self.val_fraction, "validation fraction", 0, 1, True, True)


@dataclass
class SgdState:
    """
    Velocity of every parameter, by parameter name.
    """

    velocities: dict = field(default_factory=dict)

    @classmethod
    def zeros_like(cls, params: dict) -> SgdState:
        return cls({name: np.zeros_like(values) for name, values in params.items()})


def sgd_momentum_step(
    params: dict, grads: dict, state: SgdState, learning_rate: float, momentum: float
) -> None:
    """
    One update of stochastic gradient descent with momentum, in place, parameter by parameter:
    :code:`v = momentum * v - learning_rate * g` and then :code:`theta = theta + v`.

    Parameters
    ----------
        params : dict
            Parameter arrays, by name. Updated in place.
        grads : dict
            Gradients, by name, with the shapes of the parameters.
        state : SgdState
            The velocities. Updated in place.
        learning_rate : float
            The step size.
        momentum : float
            The momentum coefficient.

    Raises
    ------
        DimensionError
            When a gradient or a velocity does not have the shape of its parameter.
        KeyError
            When a parameter has no gradient or no velocity.

    Examples
    --------

        .. testcode::

            import numpy as np
            from tsmcnn.train import SgdState, sgd_momentum_step

            params = {"theta": np.zeros(1)}
            state = SgdState.zeros_like(params)
            for _ in range(2):
                sgd_momentum_step(params, {"theta": np.ones(1)}, state, 0.1, 0.9)
            assert np.isclose(params["theta"][0], -0.29)
    """
    for name, values in params.items():
        grad = grads[name]
        velocity = state.velocities[name]
        if grad.shape != values.shape:
            raise DimensionError("parameter", values.shape, grad.shape, f"gradient of {name}")
        if velocity.shape != values.shape:
            raise DimensionError("parameter", values.shape, velocity.shape, f"velocity of {name}")
        velocity *= momentum
        velocity -= learning_rate * grad
        values += velocity
