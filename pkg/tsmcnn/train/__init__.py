from tsmcnn.train.sgd import TrainConfig, SgdState, sgd_momentum_step
from tsmcnn.train.report import EpochRecord, FitReport
from tsmcnn.train.fit import fit, evaluate, predict_labels
from tsmcnn.train.grid import GridSpec, GridEntry, GridResult, grid_search

__all__ = [
    "TrainConfig",
    "SgdState",
    "sgd_momentum_step",
    "EpochRecord",
    "FitReport",
    "fit",
    "evaluate",
    "predict_labels",
    "GridSpec",
    "GridEntry",
    "GridResult",
    "grid_search",
]
