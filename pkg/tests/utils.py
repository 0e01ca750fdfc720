import os

import numpy as np

from tsmcnn.core import BranchSpec
from tsmcnn.data import Dataset, LabeledSeries
from tsmcnn.network import McnnConfig
from tsmcnn.nn import Activation


def ramp_dataset(num_series=20, length=32, noise=0.05, seed=0, name="ramps") -> Dataset:
    """
    Up-ramps (original label 1) alternating with down-ramps (original label 2), plus a little
    Gaussian noise. The two classes are linearly separable.
    """
    rng = np.random.default_rng(seed)
    base = np.linspace(-1, 1, length)
    items = []
    for i in range(num_series):
        label = i % 2
        values = (base if label == 0 else -base) + noise * rng.standard_normal(length)
        items.append(LabeledSeries(label, values, i))
    return Dataset(items, {1: 0, 2: 1}, name)


def tiny_config(**overrides) -> McnnConfig:
    """A network small enough to train in a test: three branches and a few filters."""
    params = dict(
        num_classes=2,
        input_length=32,
        branch_spec=BranchSpec(downsample_rates=(2,), ma_windows=(3,)),
        local_filters=4,
        full_filters=4,
        filter_ratio=0.1,
        pooling_factor=3,
        dense_units=8,
        slice_ratio=0.9,
        activation=Activation.RELU,
    )
    params.update(overrides)
    return McnnConfig(**params)


def direct_conv1d(signal, weights, bias):
    """Convolution computed with explicit loops, the filter being index-reversed."""
    num_filters, num_channels, m = weights.shape
    n = signal.shape[-1]
    out = np.zeros((num_filters, n - m + 1))
    for f in range(num_filters):
        for i in range(n - m + 1):
            total = bias[f]
            for c in range(num_channels):
                for j in range(m):
                    total += weights[f, c, m - 1 - j] * signal[c, i + j]
            out[f, i] = total
    return out


def direct_sliding_distance(series, pattern):
    """Squared Euclidean distance between every window of the series and the pattern."""
    m = len(pattern)
    return np.array(
        [np.sum((series[i : i + m] - pattern) ** 2) for i in range(len(series) - m + 1)]
    )


def naive_dtw(a, b, radius=None):
    """Textbook DTW with squared costs and an optional band :code:`|i - j| <= radius`."""
    n, m = len(a), len(b)
    cost = np.full((n + 1, m + 1), np.inf)
    cost[0, 0] = 0
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            if radius is not None and abs(i - j) > radius:
                continue
            cost[i, j] = (a[i - 1] - b[j - 1]) ** 2 + min(
                cost[i - 1, j - 1], cost[i - 1, j], cost[i, j - 1]
            )
    return cost[n, m]


def write_ucr_file(path, dataset: Dataset):
    """Writes a dataset in the comma separated UCR format."""
    with open(path, "w") as f:
        for item in dataset:
            label = dataset.original_label(item.label)
            f.write(",".join([str(label)] + [repr(float(v)) for v in item.values]) + "\n")
    return path


def ucr_archive_path(name: str, split: str):
    """
    Path of a UCR archive file under the directory given by the :code:`UCR_ARCHIVE`
    environment variable, :code:`None` if there is no such file.
    """
    root = os.environ.get("UCR_ARCHIVE")
    if not root:
        return None
    for candidate in [
        os.path.join(root, name, f"{name}_{split}.tsv"),
        os.path.join(root, name, f"{name}_{split}"),
        os.path.join(root, f"{name}_{split}.tsv"),
        os.path.join(root, f"{name}_{split}"),
    ]:
        if os.path.isfile(candidate):
            return candidate
    return None
