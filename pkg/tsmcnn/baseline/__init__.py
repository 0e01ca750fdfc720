from tsmcnn.baseline.euclidean import euclidean_1nn, squared_euclidean
from tsmcnn.baseline.dtw import (
    CV_WINDOWS,
    DtwParams,
    dtw_batch,
    dtw_distance,
    dtw_1nn,
    loocv_accuracy,
    dtw_cv_window,
)
from tsmcnn.baseline.shapelet import (
    euclidean_via_conv,
    shapelet_distances,
    shapelet_distance,
    locate_shapelet,
    shapelet_transform,
)
from tsmcnn.baseline.methods import BaselineMethod, run_baseline

__all__ = [
    "euclidean_1nn",
    "squared_euclidean",
    "CV_WINDOWS",
    "DtwParams",
    "dtw_batch",
    "dtw_distance",
    "dtw_1nn",
    "loocv_accuracy",
    "dtw_cv_window",
    "euclidean_via_conv",
    "shapelet_distances",
    "shapelet_distance",
    "locate_shapelet",
    "shapelet_transform",
    "BaselineMethod",
    "run_baseline",
]
