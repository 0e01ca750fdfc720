"""
Preprocessing of datasets: z-normalisation, stratified splits and augmentation by window
slicing.
"""

from __future__ import annotations

import logging
from enum import Enum

import numpy as np

from tsmcnn.core.transform import slice_length, window_slices
from tsmcnn.data.ucr import Dataset, LabeledSeries
from tsmcnn.inputvalidators import validate_float

logger = logging.getLogger(__name__)

Z_NORMALISED_DATASETS = frozenset({"beef", "coffee", "fish", "osuleaf", "oliveoil"})
"""Datasets (lower case) that are z-normalised when :code:`ZNormalisation.AUTO` is used."""


class ZNormalisation(Enum):
    """
    Constants deciding whether series are z-normalised when a dataset is loaded.
    """

    AUTO = "auto"
    """
    Only the datasets listed in :py:data:`Z_NORMALISED_DATASETS` are z-normalised.
    """
    ON = "on"
    """
    Always z-normalise.
    """
    OFF = "off"
    """
    Never z-normalise.
    """


def z_normalize(series) -> np.ndarray:
    """
    Rescales a series to mean 0 and (population) standard deviation 1. A constant series,
    i.e., one whose standard deviation is at most :code:`1e-12 * max(1, |mean|)`, is mapped to
    zeros.

    Parameters
    ----------
        series : np.ndarray
            The series, at least 2 points (or a batch, one series per row).

    Returns
    -------
        np.ndarray
            The normalised series.

    Examples
    --------

        .. testcode::

            from tsmcnn.data import z_normalize

            assert z_normalize([5, 5, 5]).tolist() == [0, 0, 0]
    """
    series = np.asarray(series, dtype=np.float64)
    if series.shape[-1] < 2:
        raise ValueError("z-normalisation needs series of at least 2 points.")
    mean = series.mean(axis=-1, keepdims=True)
    std = series.std(axis=-1, keepdims=True)
    constant = std <= 1e-12 * np.maximum(1.0, np.abs(mean))
    safe_std = np.where(constant, 1.0, std)
    return np.where(constant, 0.0, (series - mean) / safe_std)


def should_z_normalize(name: str, mode: ZNormalisation | str = ZNormalisation.AUTO) -> bool:
    """
    Decides whether a dataset is z-normalised. Dataset names are compared case-insensitively.
    """
    mode = ZNormalisation(mode.value if isinstance(mode, Enum) else mode)
    if mode == ZNormalisation.ON:
        return True
    if mode == ZNormalisation.OFF:
        return False
    return name.lower() in Z_NORMALISED_DATASETS


def z_normalize_dataset(dataset: Dataset) -> Dataset:
    """
    A copy of the dataset where every series is z-normalised.
    """
    items = [
        LabeledSeries(item.label, z_normalize(item.values), item.provenance, item.offset)
        for item in dataset
    ]
    return dataset.with_items(items)


def preprocess(dataset: Dataset, mode: ZNormalisation | str = ZNormalisation.AUTO) -> Dataset:
    """
    Applies the z-normalisation decided by :py:func:`should_z_normalize` and logs the decision.
    """
    if should_z_normalize(dataset.name, mode):
        logger.info("z-normalising the series of %r.", dataset.name)
        return z_normalize_dataset(dataset)
    logger.info("Keeping the raw series of %r.", dataset.name)
    return dataset


def stratified_split(dataset: Dataset, fraction: float, seed: int = None) -> tuple[Dataset, Dataset]:
    """
    Splits a dataset class by class. From every class, :code:`max(1, round(fraction * count))`
    series, drawn at random, go to the second part and the rest to the first part. Both parts
    keep the original order of the series and the label map of the dataset.

    Parameters
    ----------
        dataset : Dataset
            The dataset.
        fraction : float
            Proportion of every class that goes to the second part, in [0, 1). With 0, the
            second part is empty.
        seed : int, default: :code:`None`
            Seed for numpy random number generator.

    Returns
    -------
        tuple[Dataset, Dataset]
            The two parts.

    Raises
    ------
        ValueError
            When the fraction is positive and a class has fewer than 2 series.
    """
    validate_float(fraction, "split fraction", 0, 1, upper_open=True)
    if fraction == 0:
        return dataset.with_items(dataset.items), dataset.with_items([])

    rng = np.random.default_rng(seed)
    labels = dataset.labels
    second = set()
    for label in range(dataset.num_classes):
        members = np.flatnonzero(labels == label)
        if len(members) == 0:
            continue
        if len(members) < 2:
            raise ValueError(
                f"The class {dataset.original_label(label)!r} has a single series, it cannot "
                f"be split."
            )
        count = max(1, int(np.floor(fraction * len(members) + 0.5)))
        second.update(int(i) for i in rng.permutation(members)[:count])
    first_items = [item for i, item in enumerate(dataset.items) if i not in second]
    second_items = [item for i, item in enumerate(dataset.items) if i in second]
    return dataset.with_items(first_items), dataset.with_items(second_items)


def augment_by_slicing(dataset: Dataset, slice_ratio: float) -> Dataset:
    """
    Replaces every series by all its slices of length :code:`round(slice_ratio * n)`. Every
    slice keeps the label and provenance of its parent and records its offset, so a dataset of
    :code:`N` series of length :code:`n` yields :code:`N * (n - s + 1)` slices.

    Parameters
    ----------
        dataset : Dataset
            A dataset whose series share a length.
        slice_ratio : float
            Slice length relative to the series length, in (0, 1].

    Returns
    -------
        Dataset
            The slices.
    """
    n = dataset.series_length
    if n is None:
        raise ValueError("Slicing for training needs series of equal length.")
    s = slice_length(n, slice_ratio)
    items = []
    for item in dataset:
        for offset, values in enumerate(window_slices(item.values, s)):
            items.append(LabeledSeries(item.label, values, item.provenance, offset))
    return dataset.with_items(items)
