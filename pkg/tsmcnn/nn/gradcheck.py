"""
Finite-difference checks of analytic gradients.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from tsmcnn.exceptions import DimensionError


@dataclass
class GradCheckReport:
    """
    Outcome of :py:func:`grad_check`.

    Attributes
    ----------
        max_relative_error : float
            The largest relative error over all checked entries.
        worst_parameter : str | None
            Name of the parameter holding the worst entry.
        worst_index : tuple | None
            Index of the worst entry within that parameter.
        num_checked : int
            Number of entries that were checked.
        tolerance : float
            The tolerance the check was run with.
    """

    max_relative_error: float
    worst_parameter: str | None
    worst_index: tuple | None
    num_checked: int
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_relative_error < self.tolerance


def relative_error(analytic: float, numeric: float, floor: float = 1e-4) -> float:
    """
    Relative error :code:`|a - n| / max(|a|, |n|, floor)`. The floor keeps entries whose
    gradient is (close to) zero from blowing up the ratio.
    """
    return abs(analytic - numeric) / max(abs(analytic), abs(numeric), floor)


def grad_check(
    fragment: Callable[[], tuple[float, dict]],
    parameters: dict,
    tolerance: float = 1e-6,
    epsilon: float = 1e-5,
    floor: float = 1e-4,
    max_entries: int = None,
    seed: int = None,
) -> GradCheckReport:
    """
    Compares the analytic gradients returned by a differentiable fragment with central finite
    differences :code:`(L(x + eps) - L(x - eps)) / (2 eps)`.

    The fragment is a callable without arguments returning the scalar loss and a dictionary of
    analytic gradients, computed from the current values of the arrays in :code:`parameters`.
    The check perturbs these arrays in place (and restores them).

    Parameters
    ----------
        fragment : Callable[[], tuple[float, dict]]
            Computes the loss and the gradients.
        parameters : dict
            The arrays to check, by name. Gradients are looked up under the same names.
        tolerance : float, default: :code:`1e-6`
            Maximal accepted relative error.
        epsilon : float, default: :code:`1e-5`
            Perturbation size.
        floor : float, default: :code:`1e-4`
            Floor of the denominator of the relative error.
        max_entries : int, default: :code:`None`
            If set, at most this many entries are checked per parameter, drawn at random.
        seed : int, default: :code:`None`
            Seed for numpy random number generator used to draw the entries.

    Returns
    -------
        GradCheckReport
            The largest relative error and where it occurred.

    Examples
    --------

        .. testcode::

            import numpy as np
            from tsmcnn.nn import grad_check

            x = np.array([1.0, -2.0])

            def fragment():
                return float(np.sum(x ** 2)), {"x": 2 * x}

            assert grad_check(fragment, {"x": x}).passed
    """
    rng = np.random.default_rng(seed)
    _, analytic = fragment()
    analytic = {name: np.array(analytic[name], dtype=np.float64) for name in parameters}

    worst, worst_name, worst_index, checked = 0.0, None, None, 0
    for name, values in parameters.items():
        if analytic[name].shape != values.shape:
            raise DimensionError("parameter", values.shape, analytic[name].shape, f"grad_check {name}")
        indices = list(np.ndindex(values.shape))
        if max_entries is not None and len(indices) > max_entries:
            chosen = rng.choice(len(indices), size=max_entries, replace=False)
            indices = [indices[i] for i in sorted(chosen)]
        for index in indices:
            original = values[index]
            values[index] = original + epsilon
            loss_plus, _ = fragment()
            values[index] = original - epsilon
            loss_minus, _ = fragment()
            values[index] = original
            numeric = (loss_plus - loss_minus) / (2 * epsilon)
            error = relative_error(float(analytic[name][index]), numeric, floor)
            checked += 1
            if error > worst or worst_name is None:
                worst, worst_name, worst_index = error, name, index
    return GradCheckReport(worst, worst_name, worst_index, checked, tolerance)
