"""
Euclidean distance between a series and a sliding pattern expressed with a convolution. A
learned convolution filter thereby plays the role of a shapelet: the closer a subsequence is
to the (reversed) filter, the smaller the distance.
"""

from __future__ import annotations

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from tsmcnn.core.numerics import FilterBank, conv1d
from tsmcnn.exceptions import DimensionError
from tsmcnn.inputvalidators import validate_series


def euclidean_via_conv(series, pattern) -> np.ndarray:
    """
    Squared Euclidean distance between every window of the series and the reversed pattern,
    computed as the sliding sum of squares of the series plus the squared norm of the pattern
    minus twice their convolution.

    Parameters
    ----------
        series : np.ndarray
            The series, of length :code:`n`.
        pattern : np.ndarray
            The filter, of length :code:`m <= n`.

    Returns
    -------
        np.ndarray
            The :code:`n - m + 1` distances.

    Raises
    ------
        DimensionError
            When the pattern is longer than the series.

    Examples
    --------

        .. testcode::

            from tsmcnn.baseline import euclidean_via_conv

            assert euclidean_via_conv([1, 2, 3], [0, 1]).tolist() == [4, 10]
    """
    series = validate_series(series)
    pattern = validate_series(pattern, "pattern")
    m = len(pattern)
    if m > len(series):
        raise DimensionError("length", f"at most {len(series)}", m, "euclidean_via_conv")
    sliding_squares = sliding_window_view(series**2, m).sum(axis=-1)
    bank = FilterBank(pattern[np.newaxis, np.newaxis, :], np.zeros(1))
    convolution = conv1d(series[np.newaxis, :], bank)[0]
    return sliding_squares + np.dot(pattern, pattern) - 2 * convolution


def shapelet_distances(series, shapelet) -> np.ndarray:
    """Squared Euclidean distance between every window of the series and the shapelet."""
    shapelet = validate_series(shapelet, "shapelet")
    return euclidean_via_conv(series, shapelet[::-1])


def shapelet_distance(series, shapelet) -> float:
    """
    Distance between a series and a shapelet: the smallest squared Euclidean distance between
    the shapelet and a window of the series. Negative rounding residues are clipped to 0.
    """
    return max(0.0, float(np.min(shapelet_distances(series, shapelet))))


def locate_shapelet(series, shapelet) -> int:
    """Offset of the window of the series closest to the shapelet (the first one on ties)."""
    return int(np.argmin(shapelet_distances(series, shapelet)))


def shapelet_transform(batch, shapelets: list) -> np.ndarray:
    """
    Shapelet features of many series: entry :code:`(i, k)` is the distance between series
    :code:`i` and shapelet :code:`k`.

    Parameters
    ----------
        batch : np.ndarray
            The series, one per row.
        shapelets : list[np.ndarray]
            The shapelets, possibly of different lengths.

    Returns
    -------
        np.ndarray
            Array of shape :code:`(num_series, num_shapelets)`.
    """
    batch = np.atleast_2d(np.asarray(batch, dtype=np.float64))
    return np.array([[shapelet_distance(s, k) for k in shapelets] for s in batch])
