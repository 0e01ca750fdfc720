"""
Dynamic time warping (DTW) with an optional Sakoe-Chiba band, the 1-nearest-neighbour classifier
built on it, and the choice of the band by leave-one-out cross-validation.

The cost of aligning two points is their squared difference, the warping path moves
diagonally, up or left, and the distance is the accumulated cost (no square root).
"""

from __future__ import annotations

import logging
import math
from multiprocessing import Pool
from dataclasses import dataclass
from functools import partial

import numpy as np

from tsmcnn.baseline.euclidean import (
    check_lengths,
    nearest_neighbor_error,
    squared_euclidean,
)
from tsmcnn.data.ucr import Dataset
from tsmcnn.inputvalidators import validate_float, validate_int, validate_series

logger = logging.getLogger(__name__)

CV_WINDOWS = tuple(k / 100 for k in range(11))
"""Candidate windows of :py:func:`dtw_cv_window`: 0% to 10% of the length, by steps of 1%."""


@dataclass(frozen=True)
class DtwParams:
    """
    Parameters of the DTW distance.

    Parameters
    ----------
        window : float | None, default: :code:`None`
            Radius of the Sakoe-Chiba band as a fraction of the series length, in [0, 1].
            :code:`None` leaves the warping unconstrained.
    """

    window: float = None

    def __post_init__(self):
        if self.window is not None:
            validate_float(self.window, "warping window", 0, 1)

    def radius(self, length_a: int, length_b: int) -> int | None:
        """
        Band radius for two series: :code:`ceil(window * n)` with :code:`n` the larger
        length, widened to the length difference so that the last cells can be reached.
        """
        if self.window is None:
            return None
        radius = math.ceil(self.window * max(length_a, length_b))
        return max(radius, abs(length_a - length_b))


def dtw_batch(query: np.ndarray, references: np.ndarray, radius: int = None) -> np.ndarray:
    """
    DTW distances between a series and every row of a matrix. The cumulative cost is
    computed one anti-diagonal at a time, for all the references at once.

    Parameters
    ----------
        query : np.ndarray
            A series of length :code:`n`.
        references : np.ndarray
            The references, of shape :code:`(N, m)`.
        radius : int, default: :code:`None`
            The band radius: only the cells with :code:`|i - j| <= radius` are used.

    Returns
    -------
        np.ndarray
            The :code:`N` distances.
    """
    query = np.asarray(query, dtype=np.float64)
    references = np.atleast_2d(np.asarray(references, dtype=np.float64))
    num_refs, m = references.shape
    n = len(query)
    if radius is not None and radius < abs(n - m):
        radius = abs(n - m)
    if radius == 0:
        return squared_euclidean(query, references)

    # Column k + 1 holds row k of the cost matrix on a diagonal, column 0 stays infinite.
    before_previous = np.full((num_refs, n + 1), np.inf)
    previous = np.full((num_refs, n + 1), np.inf)
    for diagonal in range(n + m - 1):
        rows = np.arange(max(0, diagonal - m + 1), min(n - 1, diagonal) + 1)
        if radius is not None:
            rows = rows[np.abs(2 * rows - diagonal) <= radius]
        current = np.full((num_refs, n + 1), np.inf)
        columns = diagonal - rows
        cost = (query[rows][np.newaxis, :] - references[:, columns]) ** 2
        if diagonal == 0:
            current[:, rows + 1] = cost
        else:
            up = previous[:, rows]
            left = previous[:, rows + 1]
            diag = before_previous[:, rows]
            current[:, rows + 1] = cost + np.minimum(np.minimum(diag, up), left)
        before_previous, previous = previous, current
    return previous[:, n]


def dtw_distance(a, b, params: DtwParams = DtwParams()) -> float:
    """
    DTW distance between two series.

    Parameters
    ----------
        a : np.ndarray
            First series.
        b : np.ndarray
            Second series.
        params : DtwParams, default: :code:`DtwParams()`
            The warping window.

    Returns
    -------
        float
            The accumulated squared cost of the best warping path.

    Examples
    --------

        .. testcode::

            from tsmcnn.baseline import dtw_distance

            assert dtw_distance([1, 2, 3], [2, 3]) == 1
    """
    a = validate_series(a, "first series")
    b = validate_series(b, "second series")
    return float(dtw_batch(a, b[np.newaxis, :], params.radius(len(a), len(b)))[0])


def _nearest(query: np.ndarray, references: np.ndarray, radius: int | None) -> int:
    return int(np.argmin(dtw_batch(query, references, radius)))


def dtw_1nn(
    train: Dataset, test: Dataset, params: DtwParams = DtwParams(), num_workers: int = 1
) -> float:
    """
    Error rate of the 1-nearest-neighbour classifier with the DTW distance. Ties go to the
    training series that comes first.

    Parameters
    ----------
        train : Dataset
            The training series.
        test : Dataset
            The test series, same length as the training ones.
        params : DtwParams, default: :code:`DtwParams()`
            The warping window.
        num_workers : int, default: :code:`1`
            Number of processes classifying test series at the same time.

    Returns
    -------
        float
            The error rate, in [0, 1].
    """
    validate_int(num_workers, "number of workers", lower_bound=1)
    length = check_lengths(train, test, "dtw_1nn")
    references = train.values()
    nearest = partial(
        _nearest, references=references, radius=params.radius(length, length)
    )
    queries = [item.values for item in test]
    if num_workers == 1:
        indices = [nearest(q) for q in queries]
    else:
        with Pool(processes=num_workers) as pool:
            indices = pool.map(nearest, queries, chunksize=8)
    error = nearest_neighbor_error(train.labels[indices], test)
    logger.info("1-NN DTW (window %s) error on %r: %.4f", params.window, test.name, error)
    return error


def loocv_accuracy(train: Dataset, params: DtwParams) -> float:
    """
    Leave-one-out accuracy of the 1-nearest-neighbour DTW classifier on a training set.
    """
    references = train.values()
    labels = train.labels
    length = references.shape[1]
    radius = params.radius(length, length)
    correct = 0
    for i in range(len(references)):
        distances = dtw_batch(references[i], references, radius)
        distances[i] = np.inf
        correct += int(labels[int(np.argmin(distances))] == labels[i])
    return correct / len(references)


def dtw_cv_window(train: Dataset, windows=CV_WINDOWS) -> float:
    """
    Chooses the warping window with the best leave-one-out 1-NN accuracy on the training set.
    Ties go to the smallest window.

    Parameters
    ----------
        train : Dataset
            The training series, at least 2 of the same length.
        windows : Iterable[float], default: :py:data:`CV_WINDOWS`
            The candidate windows.

    Returns
    -------
        float
            The selected window.
    """
    if len(train) < 2:
        raise ValueError("Cross-validating the warping window needs at least 2 series.")
    candidates = sorted(set(windows))
    if not candidates:
        raise ValueError("At least one candidate window is needed.")
    best_window, best_accuracy = None, -1.0
    for window in candidates:
        accuracy = loocv_accuracy(train, DtwParams(window))
        logger.debug("Window %.2f: leave-one-out accuracy %.4f", window, accuracy)
        if accuracy > best_accuracy:
            best_window, best_accuracy = window, accuracy
    logger.info("Selected warping window %.2f (accuracy %.4f).", best_window, best_accuracy)
    return best_window
