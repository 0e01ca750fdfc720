from tsmcnn.core.numerics import (
    Signal,
    FilterBank,
    as_signal,
    conv1d,
    maxpool_by_factor,
    pooling_windows,
    softmax,
    dense,
)
from tsmcnn.core.transform import (
    BranchSpec,
    BranchInputs,
    downsample,
    moving_average,
    window_slices,
    build_branches,
    build_branch_batch,
    slice_length,
    round_half_up,
)

__all__ = [
    "Signal",
    "FilterBank",
    "as_signal",
    "conv1d",
    "maxpool_by_factor",
    "pooling_windows",
    "softmax",
    "dense",
    "BranchSpec",
    "BranchInputs",
    "downsample",
    "moving_average",
    "window_slices",
    "build_branches",
    "build_branch_batch",
    "slice_length",
    "round_half_up",
]
