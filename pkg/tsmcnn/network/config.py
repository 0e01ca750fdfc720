"""
Architecture description of a multi-scale convolutional network and the closed-form
propagation of shapes through it.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from enum import Enum

from tsmcnn.core.transform import BranchSpec, round_half_up, slice_length
from tsmcnn.exceptions import GeometryError
from tsmcnn.inputvalidators import validate_float, validate_int
from tsmcnn.nn.activations import Activation, as_activation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class McnnConfig:
    """
    Full description of a network.

    Parameters
    ----------
        num_classes : int
            Number of classes, at least 2.
        input_length : int
            Length of the (training) series. The network itself consumes slices of length
            :code:`round(slice_ratio * input_length)`.
        branch_spec : BranchSpec, default: :code:`BranchSpec()`
            The branches of the transformation stage.
        local_filters : int, default: :code:`256`
            Number of filters of the local convolution of each branch.
        full_filters : int, default: :code:`256`
            Number of filters of each full-stage convolution.
        filter_ratio : float, default: :code:`0.1`
            Filter length relative to the slice length, in (0, 1]. The local filter length is
            :code:`max(2, round(filter_ratio * slice_length))` for every branch.
        pooling_factor : int, default: :code:`3`
            Number of outputs of every max pooling.
        dense_units : int, default: :code:`256`
            Width of the hidden fully connected layer.
        slice_ratio : float, default: :code:`0.9`
            Slice length relative to the series length, in (0, 1].
        activation : Activation, default: :code:`Activation.RELU`
            Activation of the convolutional and hidden dense layers.
        full_depth : int, default: :code:`1`
            Number of convolutional layers of the full convolution stage.
    """

    num_classes: int
    input_length: int
    branch_spec: BranchSpec = field(default_factory=BranchSpec)
    local_filters: int = 256
    full_filters: int = 256
    filter_ratio: float = 0.1
    pooling_factor: int = 3
    dense_units: int = 256
    slice_ratio: float = 0.9
    activation: Activation = Activation.RELU
    full_depth: int = 1

    def __post_init__(self):
        validate_int(self.num_classes, "number of classes", lower_bound=2)
        validate_int(self.input_length, "input length", lower_bound=2)
        validate_int(self.local_filters, "number of local filters", lower_bound=1)
        validate_int(self.full_filters, "number of full-stage filters", lower_bound=1)
        validate_float(self.filter_ratio, "filter ratio", 0, 1, lower_open=True)
        validate_int(self.pooling_factor, "pooling factor", lower_bound=1)
        validate_int(self.dense_units, "number of dense units", lower_bound=1)
        validate_float(self.slice_ratio, "slice ratio", 0, 1, lower_open=True)
        validate_int(self.full_depth, "full-stage depth", lower_bound=1)
        if not isinstance(self.branch_spec, BranchSpec):
            raise TypeError("The branch specification needs to be a BranchSpec.")
        object.__setattr__(self, "activation", as_activation(self.activation))

    @property
    def slice_length(self) -> int:
        return slice_length(self.input_length, self.slice_ratio)

    @property
    def filter_length(self) -> int:
        return max(2, round_half_up(self.filter_ratio * self.slice_length))

    def to_dict(self) -> dict:
        """Flat dictionary of the configuration with plain Python values."""
        return {
            "num_classes": self.num_classes,
            "input_length": self.input_length,
            "downsample_rates": list(self.branch_spec.downsample_rates),
            "ma_windows": list(self.branch_spec.ma_windows),
            "include_identity": self.branch_spec.include_identity,
            "local_filters": self.local_filters,
            "full_filters": self.full_filters,
            "filter_ratio": self.filter_ratio,
            "pooling_factor": self.pooling_factor,
            "dense_units": self.dense_units,
            "slice_ratio": self.slice_ratio,
            "activation": self.activation.value,
            "full_depth": self.full_depth,
        }

    @classmethod
    def from_dict(cls, values: dict) -> McnnConfig:
        values = dict(values)
        spec = BranchSpec(
            downsample_rates=tuple(values.pop("downsample_rates")),
            ma_windows=tuple(values.pop("ma_windows")),
            include_identity=bool(values.pop("include_identity")),
        )
        return cls(branch_spec=spec, **values)


@dataclass(frozen=True)
class BranchGeometry:
    """Shapes along one branch of the local convolution stage."""

    name: str
    channels: int
    length: int
    conv_length: int
    pooled_length: int


@dataclass(frozen=True)
class FullLayerGeometry:
    """Shapes along one layer of the full convolution stage."""

    in_channels: int
    in_length: int
    filter_length: int
    conv_length: int
    pooled_length: int


@dataclass(frozen=True)
class NetworkGeometry:
    """
    Closed-form shapes of every intermediate signal of a network, see :py:func:`geometry`.
    """

    slice_length: int
    filter_length: int
    branches: tuple
    concat_channels: int
    full_layers: tuple
    dense_input: int


def geometry(config: McnnConfig) -> NetworkGeometry:
    """
    Propagates the shapes through the network described by the configuration.

    Every branch is convolved with filters of the same length and pooled to
    :code:`pooling_factor` outputs, so the branch maps can be stacked. Each full-stage layer
    uses filters of length :code:`max(2, round(filter_ratio * l))`, with :code:`l` the length of its
    input (:code:`pooling_factor` for the first one), and pools to
    :code:`min(pooling_factor, convolution_length)` outputs.

    Parameters
    ----------
        config : McnnConfig
            The configuration.

    Returns
    -------
        NetworkGeometry
            The shapes.

    Raises
    ------
        GeometryError
            When a branch is shorter than the filter, or the pooling factor is larger than a
            convolution output. The error names the branch.
    """
    s = config.slice_length
    m = config.filter_length
    p = config.pooling_factor
    branches = []
    for name, channels, length in config.branch_spec.branch_shapes(s):
        if length < m:
            raise GeometryError(
                name,
                f"the branch has {length} points but the filter length is {m} (slice length "
                f"{s}, filter ratio {config.filter_ratio}).",
            )
        conv_length = length - m + 1
        if p > conv_length:
            raise GeometryError(
                name,
                f"the pooling factor {p} exceeds the convolution output length {conv_length}.",
            )
        branches.append(BranchGeometry(name, channels, length, conv_length, p))

    in_channels = len(branches) * config.local_filters
    concat_channels = in_channels
    in_length = p
    full_layers = []
    for depth in range(config.full_depth):
        full_m = max(2, round_half_up(config.filter_ratio * in_length))
        if in_length < full_m:
            raise GeometryError(
                f"full_{depth}",
                f"the full-stage input has {in_length} points but the filter length is {full_m}; "
                f"increase the pooling factor or reduce the full-stage depth.",
            )
        conv_length = in_length - full_m + 1
        pooled = min(p, conv_length)
        full_layers.append(
            FullLayerGeometry(in_channels, in_length, full_m, conv_length, pooled)
        )
        in_channels = config.full_filters
        in_length = pooled

    res = NetworkGeometry(
        slice_length=s,
        filter_length=m,
        branches=tuple(branches),
        concat_channels=concat_channels,
        full_layers=tuple(full_layers),
        dense_input=config.full_filters * in_length,
    )
    logger.debug("Network geometry: %s", res)
    return res


def count_parameters(config: McnnConfig) -> int:
    """
    Number of learned parameters (weights and biases) of the network.
    """
    geo = geometry(config)
    total = 0
    for branch in geo.branches:
        total += config.local_filters * (branch.channels * geo.filter_length + 1)
    for layer in geo.full_layers:
        total += config.full_filters * (layer.in_channels * layer.filter_length + 1)
    total += config.dense_units * (geo.dense_input + 1)
    total += config.num_classes * (config.dense_units + 1)
    return total


def matched_cnn_config(config: McnnConfig) -> McnnConfig:
    """
    The plain convolutional network used as a comparator: same configuration but only the
    identity branch, with the number of local filters chosen so that the parameter count is as
    close as possible to that of the multi-scale network (ties go to fewer filters).

    Parameters
    ----------
        config : McnnConfig
            The multi-scale configuration.

    Returns
    -------
        McnnConfig
            The single-branch configuration.
    """
    target = count_parameters(config)
    base = replace(config, branch_spec=BranchSpec.identity_only())
    best_filters, best_gap = 1, None
    filters = 1
    while True:
        count = count_parameters(replace(base, local_filters=filters))
        gap = abs(count - target)
        if best_gap is None or gap < best_gap:
            best_filters, best_gap = filters, gap
        if count >= target:
            break
        filters += 1
    return replace(base, local_filters=best_filters)


class Architecture(Enum):
    """
    Constants for the network families that can be trained.
    """

    MCNN = "mcnn"
    """
    The multi-scale network, with all the branches of its configuration.
    """
    CNN = "cnn"
    """
    The plain convolutional network of :py:func:`matched_cnn_config`.
    """


def resolve_architecture(config: McnnConfig, architecture: Architecture | str) -> McnnConfig:
    """The configuration actually trained for an architecture."""
    architecture = Architecture(
        architecture.value if isinstance(architecture, Enum) else architecture
    )
    if architecture == Architecture.CNN:
        cnn_config = matched_cnn_config(config)
        logger.info(
            "Plain network with %d local filters (%d parameters against %d).",
            cnn_config.local_filters,
            count_parameters(cnn_config),
            count_parameters(config),
        )
        return cnn_config
    return config
