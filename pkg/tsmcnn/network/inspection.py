"""
Inspection of the learned local filters: the max-pooled response of a filter over whole
series, and how well a single threshold on that response separates two classes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from tsmcnn.core.numerics import conv1d
from tsmcnn.core.transform import build_branches
from tsmcnn.data.ucr import Dataset
from tsmcnn.inputvalidators import validate_int
from tsmcnn.network.model import McnnModel
from tsmcnn.nn.activations import activate


def _branch_position(model: McnnModel, branch: str) -> int:
    if branch not in model.branch_names:
        raise ValueError(
            f"The network has no branch {branch!r}, its branches are {model.branch_names}."
        )
    return model.branch_names.index(branch)


def pooled_responses(
    model: McnnModel, dataset: Dataset, branch: str, activated: bool = True
) -> np.ndarray:
    """
    Maximum over time of the response of every local filter of a branch, for every series of
    the dataset. The series are used whole, they do not need to have the slice length.

    Parameters
    ----------
        model : McnnModel
            The network.
        dataset : Dataset
            The series.
        branch : str
            Name of the branch, one of :code:`model.branch_names`.
        activated : bool, default: :code:`True`
            Whether the activation of the layer is applied before pooling, as in the network.

    Returns
    -------
        np.ndarray
            Array of shape :code:`(len(dataset), local_filters)`.
    """
    position = _branch_position(model, branch)
    layer = model.local_layers[position]
    spec = model.config.branch_spec
    res = np.empty((len(dataset), layer.bank.num_filters))
    for i, item in enumerate(dataset):
        signal = build_branches(item.values, spec).signals()[position]
        response = conv1d(signal, layer.bank)
        if activated:
            response = activate(response, layer.activation)
        res[i] = response.max(axis=-1)
    return res


def filter_activation(
    model: McnnModel, dataset: Dataset, branch: str, filter_index: int, activated: bool = True
) -> np.ndarray:
    """
    Max-pooled response of one local filter for every series of the dataset, see
    :py:func:`pooled_responses`.

    Returns
    -------
        np.ndarray
            One value per series, in dataset order.

    Examples
    --------

        .. testcode::

            import numpy as np
            from tsmcnn.data import Dataset, LabeledSeries
            from tsmcnn.network import McnnConfig, assemble, filter_activation

            model = assemble(McnnConfig(num_classes=2, input_length=40, local_filters=4,
                                        full_filters=4, dense_units=8), seed=0)
            data = Dataset([LabeledSeries(i % 2, np.sin(np.arange(40) + i), i)
                            for i in range(6)], {0: 0, 1: 1})
            assert filter_activation(model, data, "scale_2", 3).shape == (6,)
    """
    num_filters = model.config.local_filters
    validate_int(filter_index, "filter index", lower_bound=0, upper_bound=num_filters - 1)
    return pooled_responses(model, dataset, branch, activated)[:, filter_index]


@dataclass(frozen=True)
class ThresholdSplit:
    """
    A classifier of two classes by thresholding one value: values strictly above the threshold
    go to :code:`above`, the others to :code:`below`.
    """

    threshold: float
    above: int
    below: int
    error: float


def best_threshold(values, labels) -> ThresholdSplit:
    """
    The threshold on the values that best separates the two classes of the labels. The
    candidate thresholds are the midpoints between consecutive distinct values, plus one below
    the smallest value. Ties go to the lowest threshold, with the larger class index above.

    Parameters
    ----------
        values : np.ndarray
            One value per series.
        labels : np.ndarray
            The class index of every series, exactly two distinct classes.

    Returns
    -------
        ThresholdSplit
            The best split and its error rate.
    """
    values = np.asarray(values, dtype=np.float64)
    labels = np.asarray(labels)
    if values.ndim != 1 or values.shape != labels.shape or len(values) == 0:
        raise ValueError("There needs to be exactly one label per value.")
    classes = np.unique(labels)
    if len(classes) != 2:
        raise ValueError(f"Thresholding separates two classes, got {len(classes)}.")
    distinct = np.unique(values)
    candidates = np.concatenate([[distinct[0] - 1.0], (distinct[:-1] + distinct[1:]) / 2])
    is_above = values[np.newaxis, :] > candidates[:, np.newaxis]
    high, low = int(classes[1]), int(classes[0])
    # Mistakes when the larger class index is above the threshold.
    mistakes = np.sum(is_above != (labels == high)[np.newaxis, :], axis=1)
    flipped = len(values) - mistakes
    best_straight = int(np.argmin(mistakes))
    best_flipped = int(np.argmin(flipped))
    if flipped[best_flipped] < mistakes[best_straight]:
        return ThresholdSplit(
            float(candidates[best_flipped]), low, high, float(flipped[best_flipped] / len(values))
        )
    return ThresholdSplit(
        float(candidates[best_straight]), high, low, float(mistakes[best_straight] / len(values))
    )


def rank_filters(model: McnnModel, dataset: Dataset, branch: str) -> list[tuple[int, ThresholdSplit]]:
    """
    Best single-threshold split of every local filter of a branch on a two-class dataset,
    sorted by increasing error (ties by filter index).

    Returns
    -------
        list[tuple[int, ThresholdSplit]]
            The filter index and its split.
    """
    responses = pooled_responses(model, dataset, branch)
    labels = dataset.labels
    splits = [(f, best_threshold(responses[:, f], labels)) for f in range(responses.shape[1])]
    return sorted(splits, key=lambda x: (x[1].error, x[0]))
