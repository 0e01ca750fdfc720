"""
The reference classifiers by name.
"""

from __future__ import annotations

from enum import Enum

from tsmcnn.baseline.dtw import CV_WINDOWS, DtwParams, dtw_1nn, dtw_cv_window
from tsmcnn.baseline.euclidean import euclidean_1nn
from tsmcnn.data.ucr import Dataset


class BaselineMethod(Enum):
    """
    Constants for the reference classifiers.
    """

    ED = "ed"
    """
    1-NN with the Euclidean distance.
    """
    DTW = "dtw"
    """
    1-NN with DTW, with the given warping window (unconstrained by default).
    """
    DTWCV = "dtwcv"
    """
    1-NN with DTW, the warping window being chosen by leave-one-out cross-validation.
    """


def run_baseline(
    method: BaselineMethod | str,
    train: Dataset,
    test: Dataset,
    window: float = None,
    num_workers: int = 1,
) -> tuple[float, float | None]:
    """
    Runs a reference classifier.

    Parameters
    ----------
        method : BaselineMethod | str
            The classifier.
        train : Dataset
            The training series.
        test : Dataset
            The test series.
        window : float, default: :code:`None`
            Warping window for :code:`DTW`; ignored by the other methods.
        num_workers : int, default: :code:`1`
            Number of processes for the DTW classifiers.

    Returns
    -------
        tuple[float, float | None]
            The test error and the warping window used (:code:`None` for ED).
    """
    method = BaselineMethod(method.value if isinstance(method, Enum) else method)
    if method == BaselineMethod.ED:
        return euclidean_1nn(train, test), None
    if method == BaselineMethod.DTWCV:
        window = dtw_cv_window(train, CV_WINDOWS)
    return dtw_1nn(train, test, DtwParams(window), num_workers=num_workers), window
