"""
Transformations applied to a raw series before it enters the network: down-sampling (the
multi-scale branch), moving average smoothing (the multi-frequency branch) and window slicing
(data augmentation). Every function works on the last axis so a batch of series, one per row,
can be transformed at once.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from tsmcnn.exceptions import GeometryError
from tsmcnn.inputvalidators import (
    validate_float,
    validate_increasing_ints,
    validate_int,
    validate_series_argument,
)


def round_half_up(value: float) -> int:
    """Rounds to the nearest integer, halves going up."""
    return int(np.floor(value + 0.5))


def slice_length(series_length: int, slice_ratio: float) -> int:
    """
    Length of the slices cut from a series of the given length: :code:`round(ratio * n)`.

    Raises
    ------
        ValueError
            When the ratio is not in (0, 1] or the slice length would be smaller than 2.
    """
    validate_int(series_length, "series length", lower_bound=1)
    validate_float(slice_ratio, "slice ratio", 0, 1, lower_open=True)
    length = round_half_up(slice_ratio * series_length)
    if length < 2:
        raise ValueError(
            f"A slice ratio of {slice_ratio} on series of length {series_length} yields slices "
            f"of length {length}, slices need at least 2 points."
        )
    return length


@validate_series_argument
def downsample(series: np.ndarray, rate: int) -> np.ndarray:
    """
    Keeps every :code:`rate`-th point of the series, starting with the first one. The output
    has :code:`floor((n - 1) / rate) + 1` points.

    Parameters
    ----------
        series : np.ndarray
            The series (or a batch of series, one per row).
        rate : int
            The down-sampling rate, at least 1.

    Returns
    -------
        np.ndarray
            The down-sampled series.

    Examples
    --------

        .. testcode::

            from tsmcnn.core import downsample

            assert downsample([10, 20, 30, 40, 50, 60, 70], 3).tolist() == [10, 40, 70]
    """
    validate_int(rate, "down-sampling rate", lower_bound=1)
    return np.ascontiguousarray(series[..., :: int(rate)])


@validate_series_argument
def moving_average(series: np.ndarray, window: int) -> np.ndarray:
    """
    Moving average of the series over windows of :code:`window` consecutive points, one output
    per valid offset, i.e., :code:`n - window + 1` outputs.

    Parameters
    ----------
        series : np.ndarray
            The series (or a batch of series, one per row).
        window : int
            The window size, between 1 and the length of the series.

    Returns
    -------
        np.ndarray
            The smoothed series.

    Examples
    --------

        .. testcode::

            from tsmcnn.core import moving_average

            assert moving_average([2, 4, 6, 8], 2).tolist() == [3, 5, 7]
    """
    validate_int(window, "moving average window", lower_bound=1)
    if window > series.shape[-1]:
        raise ValueError(
            f"The moving average window ({window}) cannot exceed the series length "
            f"({series.shape[-1]})."
        )
    return sliding_window_view(series, int(window), axis=-1).sum(axis=-1) / window


@validate_series_argument
def window_slices(series: np.ndarray, length: int) -> np.ndarray:
    """
    All contiguous slices of the given length, in order of their starting point. A series of
    length :code:`n` yields :code:`n - length + 1` slices.

    Parameters
    ----------
        series : np.ndarray
            The series.
        length : int
            The slice length, between 1 and the length of the series.

    Returns
    -------
        np.ndarray
            Array of shape :code:`(n - length + 1, length)`, one slice per row. The rows are
            copies, not views on the series.
    """
    validate_int(length, "slice length", lower_bound=1)
    if series.ndim != 1:
        raise ValueError("Window slicing applies to a single series.")
    if length > len(series):
        raise ValueError(
            f"The slice length ({length}) cannot exceed the series length ({len(series)})."
        )
    return sliding_window_view(series, int(length)).copy()


@dataclass(frozen=True)
class BranchSpec:
    """
    Describes the branches built from a series.

    Parameters
    ----------
        downsample_rates : tuple[int, ...], default: :code:`(2, 3)`
            One multi-scale branch per rate. Rates are strictly increasing and at least 2.
        ma_windows : tuple[int, ...], default: :code:`(3, 5)`
            Moving average windows stacked as the channels of the multi-frequency branch.
            Windows are strictly increasing and at least 2. Empty means no such branch.
        include_identity : bool, default: :code:`True`
            Whether the raw series is a branch of its own.
    """

    downsample_rates: tuple = (2, 3)
    ma_windows: tuple = (3, 5)
    include_identity: bool = True

    def __post_init__(self):
        rates = validate_increasing_ints(self.downsample_rates, "down-sampling rates", 2)
        windows = validate_increasing_ints(self.ma_windows, "moving average windows", 2)
        object.__setattr__(self, "downsample_rates", rates)
        object.__setattr__(self, "ma_windows", windows)
        if not self.include_identity and not rates and not windows:
            raise ValueError("A branch specification needs at least one branch.")

    @classmethod
    def identity_only(cls) -> BranchSpec:
        return cls(downsample_rates=(), ma_windows=(), include_identity=True)

    def branch_names(self) -> list[str]:
        """Names of the branches, in the order in which they are built."""
        names = ["identity"] if self.include_identity else []
        names += [f"scale_{k}" for k in self.downsample_rates]
        if self.ma_windows:
            names.append("frequency")
        return names

    def branch_shapes(self, series_length: int) -> list[tuple[str, int, int]]:
        """
        Closed-form :code:`(name, channels, length)` of every branch for a series of the given
        length.

        Raises
        ------
            GeometryError
                When a moving average window is longer than the series.
        """
        shapes = []
        if self.include_identity:
            shapes.append(("identity", 1, series_length))
        for k in self.downsample_rates:
            shapes.append((f"scale_{k}", 1, (series_length - 1) // k + 1))
        if self.ma_windows:
            common = series_length - max(self.ma_windows) + 1
            if common < 1:
                raise GeometryError(
                    "frequency",
                    f"the moving average window {max(self.ma_windows)} is longer than the "
                    f"series ({series_length} points).",
                )
            shapes.append(("frequency", len(self.ma_windows), common))
        return shapes


@dataclass
class BranchInputs:
    """
    The transformed views of a series, one signal per branch.

    Attributes
    ----------
        identity : np.ndarray | None
            The raw series as a 1-channel signal.
        scales : list[np.ndarray]
            One 1-channel signal per down-sampling rate.
        frequency : np.ndarray | None
            The smoothed series stacked as channels, all truncated to a common length.
    """

    identity: np.ndarray | None = None
    scales: list = field(default_factory=list)
    frequency: np.ndarray | None = None

    def signals(self) -> list[np.ndarray]:
        """The signals in branch order: identity, scales by increasing rate, frequency."""
        res = [] if self.identity is None else [self.identity]
        res += list(self.scales)
        if self.frequency is not None:
            res.append(self.frequency)
        return res


def build_branch_batch(batch: np.ndarray, spec: BranchSpec) -> list[np.ndarray]:
    """
    Builds the branch signals of a batch of equal-length series.

    Parameters
    ----------
        batch : np.ndarray
            Array of shape :code:`(batch_size, n)`.
        spec : BranchSpec
            The branches to build.

    Returns
    -------
        list[np.ndarray]
            One array of shape :code:`(batch_size, channels, length)` per branch, in branch order.
    """
    batch = np.asarray(batch, dtype=np.float64)
    length = batch.shape[-1]
    spec.branch_shapes(length)
    signals = []
    if spec.include_identity:
        signals.append(batch[:, np.newaxis, :])
    for k in spec.downsample_rates:
        signals.append(downsample(batch, k)[:, np.newaxis, :])
    if spec.ma_windows:
        common = length - max(spec.ma_windows) + 1
        channels = [moving_average(batch, w)[:, :common] for w in spec.ma_windows]
        signals.append(np.stack(channels, axis=1))
    return signals


@validate_series_argument
def build_branches(series: np.ndarray, spec: BranchSpec) -> BranchInputs:
    """
    Builds the inputs of every branch for a single series: the identity branch, one
    down-sampled series per rate and the multi-frequency branch whose channel :code:`c` is the
    moving average with the :code:`c`-th window, left-aligned and truncated to the common length
    :code:`n - max(windows) + 1`.

    Parameters
    ----------
        series : np.ndarray
            The series.
        spec : BranchSpec
            The branches to build.

    Returns
    -------
        BranchInputs
            The branch signals.

    Examples
    --------

        .. testcode::

            from tsmcnn.core import build_branches, BranchSpec

            inputs = build_branches(range(8), BranchSpec(downsample_rates=(2,), ma_windows=(2, 3)))
            assert inputs.scales[0].shape == (1, 4)
            assert inputs.frequency.shape == (2, 6)
    """
    if series.ndim != 1:
        raise ValueError("build_branches applies to a single series, use build_branch_batch.")
    signals = [s[0] for s in build_branch_batch(series[np.newaxis, :], spec)]
    inputs = BranchInputs()
    position = 0
    if spec.include_identity:
        inputs.identity = signals[position]
        position += 1
    for _ in spec.downsample_rates:
        inputs.scales.append(signals[position])
        position += 1
    if spec.ma_windows:
        inputs.frequency = signals[position]
    return inputs
