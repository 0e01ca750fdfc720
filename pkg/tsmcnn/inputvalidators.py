from __future__ import annotations

from collections.abc import Iterable
from functools import wraps

import numpy as np


def validate_int(
    value, value_descr: str = "value", lower_bound: int = None, upper_bound: int = None
):
    """
    Validates that the input value is an int. Lower and upper bounds on the value of the int can be
    provided.

    Parameters
    ----------
        value:
            The value to validate
        value_descr: str, default: :code:`"value"`
            A description of the value used in the message of the exceptions raised when the value
            is not a valid input.
        lower_bound: int, default: :code:`None`
            A lower bound on the value, the value cannot be strictly smaller than the bound.
        upper_bound: int, default: :code:`None`
            An upper bound on the value, the value cannot be strictly larger than the bound.

    Raises
    ------
        TypeError
            When the value is not an int or cannot be cast as an int.
        ValueError
            When the value is either strictly smaller than the lower bound or strictly greater than
            the upper bound.
    """
    if isinstance(value, bool):
        raise TypeError(f"The {value_descr} needs to be an integer.")
    try:
        int(value)
    except (ValueError, TypeError):
        raise TypeError(f"The {value_descr} needs to be an integer.")
    if int(value) != value:
        raise TypeError(f"The {value_descr} needs to be an integer.")
    if lower_bound is not None and value < lower_bound:
        raise ValueError(f"The {value_descr} needs to be {lower_bound} or more.")
    if upper_bound is not None and value > upper_bound:
        raise ValueError(f"The {value_descr} needs to be {upper_bound} or less.")


def validate_float(
    value,
    value_descr: str = "value",
    lower_bound: float = None,
    upper_bound: float = None,
    lower_open: bool = False,
    upper_open: bool = False,
):
    """
    Validates that the input value is a finite real number, optionally within bounds. Each bound
    can be open (the bound itself is excluded) or closed.

    Parameters
    ----------
        value:
            The value to validate
        value_descr: str, default: :code:`"value"`
            A description of the value used in the messages of the exceptions.
        lower_bound: float, default: :code:`None`
            A lower bound on the value.
        upper_bound: float, default: :code:`None`
            An upper bound on the value.
        lower_open: bool, default: :code:`False`
            If :code:`True`, the value cannot be equal to the lower bound.
        upper_open: bool, default: :code:`False`
            If :code:`True`, the value cannot be equal to the upper bound.

    Raises
    ------
        TypeError
            When the value cannot be cast as a float.
        ValueError
            When the value is not finite or lies outside the bounds.
    """
    if isinstance(value, bool):
        raise TypeError(f"The {value_descr} needs to be a real number.")
    try:
        value = float(value)
    except (ValueError, TypeError):
        raise TypeError(f"The {value_descr} needs to be a real number.")
    if not np.isfinite(value):
        raise ValueError(f"The {value_descr} needs to be finite (got {value}).")
    if lower_bound is not None:
        if value < lower_bound or (lower_open and value == lower_bound):
            relation = "strictly larger than" if lower_open else "at least"
            raise ValueError(
                f"The {value_descr} needs to be {relation} {lower_bound} (got {value})."
            )
    if upper_bound is not None:
        if value > upper_bound or (upper_open and value == upper_bound):
            relation = "strictly smaller than" if upper_open else "at most"
            raise ValueError(
                f"The {value_descr} needs to be {relation} {upper_bound} (got {value})."
            )


def validate_increasing_ints(
    values: Iterable[int], value_descr: str = "values", lower_bound: int = None
) -> tuple[int, ...]:
    """
    Validates a collection of integers that must be strictly increasing, each of them being
    at least :code:`lower_bound`.

    Returns
    -------
        tuple[int, ...]
            The values as a tuple of Python ints.
    """
    if isinstance(values, (str, bytes)) or not isinstance(values, Iterable):
        raise TypeError(f"The {value_descr} need to be an iterable of integers.")
    values = tuple(values)
    for v in values:
        validate_int(v, f"element of the {value_descr}", lower_bound=lower_bound)
    values = tuple(int(v) for v in values)
    if any(a >= b for a, b in zip(values, values[1:])):
        raise ValueError(
            f"The {value_descr} need to be strictly increasing (got {list(values)})."
        )
    return values


def validate_series(series, series_descr: str = "series", min_length: int = 1) -> np.ndarray:
    """
    Validates a univariate time series and returns it as a 1-dimensional float64 array.

    Parameters
    ----------
        series:
            Anything numpy can turn into a 1-dimensional array of reals.
        series_descr: str, default: :code:`"series"`
            Description used in the exception messages.
        min_length: int, default: :code:`1`
            Minimal number of points of the series.

    Returns
    -------
        np.ndarray
            The series as a contiguous float64 array.

    Raises
    ------
        TypeError
            When the series cannot be converted to an array of reals.
        ValueError
            When the series is not 1-dimensional, too short, or contains NaN/Inf.
    """
    try:
        array = np.ascontiguousarray(series, dtype=np.float64)
    except (ValueError, TypeError) as e:
        raise TypeError(f"The {series_descr} needs to be a sequence of reals.") from e
    if array.ndim != 1:
        raise ValueError(
            f"The {series_descr} needs to be 1-dimensional (got {array.ndim} dimensions)."
        )
    if len(array) < min_length:
        raise ValueError(
            f"The {series_descr} needs at least {min_length} points (got {len(array)})."
        )
    if not np.all(np.isfinite(array)):
        raise ValueError(f"The {series_descr} contains non-finite values.")
    return array


def validate_series_argument(func):
    """
    Decorator that validates the first argument of the function as a time series (see
    :py:func:`~tsmcnn.inputvalidators.validate_series`) and passes it on as a float64 array. A
    leading batch axis is accepted: 2-dimensional inputs are treated as one series per row.

    Parameters
    ----------
    func: Callable
        The decorated function

    """

    @wraps(func)
    def wrapper(series, *args, **kwargs):
        try:
            array = np.asarray(series, dtype=np.float64)
        except (ValueError, TypeError) as e:
            raise TypeError("The series needs to be a sequence of reals.") from e
        if array.ndim == 2:
            if array.shape[1] < 1 or not np.all(np.isfinite(array)):
                raise ValueError("The batch of series needs finite values and length 1 or more.")
        else:
            array = validate_series(array)
        return func(array, *args, **kwargs)

    return wrapper
