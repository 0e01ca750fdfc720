from tsmcnn.network.config import (
    McnnConfig,
    NetworkGeometry,
    BranchGeometry,
    FullLayerGeometry,
    geometry,
    count_parameters,
    matched_cnn_config,
    Architecture,
    resolve_architecture,
)
from tsmcnn.network.model import (
    McnnModel,
    NetworkCache,
    VoteResult,
    assemble,
    deep_concat,
    forward,
    forward_batch,
    backward,
    loss_and_gradients,
    gradient_fragment,
    predict_proba_batch,
    predict_with_vote,
    vote,
)
from tsmcnn.network.serialization import save_model, load_model
from tsmcnn.network.inspection import (
    ThresholdSplit,
    pooled_responses,
    filter_activation,
    best_threshold,
    rank_filters,
)

__all__ = [
    "McnnConfig",
    "NetworkGeometry",
    "BranchGeometry",
    "FullLayerGeometry",
    "geometry",
    "count_parameters",
    "matched_cnn_config",
    "Architecture",
    "resolve_architecture",
    "McnnModel",
    "NetworkCache",
    "VoteResult",
    "assemble",
    "deep_concat",
    "forward",
    "forward_batch",
    "backward",
    "loss_and_gradients",
    "gradient_fragment",
    "predict_proba_batch",
    "predict_with_vote",
    "vote",
    "save_model",
    "load_model",
    "ThresholdSplit",
    "pooled_responses",
    "filter_activation",
    "best_threshold",
    "rank_filters",
]
