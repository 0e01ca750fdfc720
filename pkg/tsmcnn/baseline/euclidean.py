"""
One-nearest-neighbour classification with the squared Euclidean distance.
"""

from __future__ import annotations

import logging

import numpy as np

from tsmcnn.data.ucr import Dataset
from tsmcnn.exceptions import DimensionError

logger = logging.getLogger(__name__)


def squared_euclidean(query: np.ndarray, references: np.ndarray) -> np.ndarray:
    """Squared Euclidean distance between a series and every row of a matrix."""
    return np.sum((references - query[np.newaxis, :]) ** 2, axis=1)


def check_lengths(train: Dataset, test: Dataset, context: str) -> int:
    """
    Returns the common length of the series of both datasets.

    Raises
    ------
        ValueError
            When a dataset is empty.
        DimensionError
            When the series do not all have the same length.
    """
    if len(train) == 0 or len(test) == 0:
        raise ValueError(f"{context}: the training and test sets cannot be empty.")
    train_length, test_length = train.series_length, test.series_length
    if train_length is None or test_length is None:
        raise DimensionError("length", "a single length", "ragged series", context)
    if train_length != test_length:
        raise DimensionError("length", train_length, test_length, context)
    return train_length


def nearest_neighbor_error(predicted: np.ndarray, test: Dataset) -> float:
    """Proportion of the test series whose predicted label differs from their label."""
    return np.count_nonzero(np.asarray(predicted) != test.labels) / len(test)


def euclidean_1nn(train: Dataset, test: Dataset) -> float:
    """
    Error rate of the 1-nearest-neighbour classifier with the squared Euclidean distance. Each
    test series gets the label of its closest training series, ties going to the training
    series that comes first.

    Parameters
    ----------
        train : Dataset
            The training series.
        test : Dataset
            The test series, same length as the training ones.

    Returns
    -------
        float
            The error rate, in [0, 1].

    Raises
    ------
        DimensionError
            When the lengths of the series differ.
    """
    check_lengths(train, test, "euclidean_1nn")
    references = train.values()
    labels = train.labels
    predicted = [
        labels[int(np.argmin(squared_euclidean(item.values, references)))] for item in test
    ]
    error = nearest_neighbor_error(predicted, test)
    logger.info("1-NN Euclidean error on %r: %.4f", test.name, error)
    return error
