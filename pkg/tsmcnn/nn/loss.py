from __future__ import annotations

import numpy as np

from tsmcnn.core.numerics import softmax
from tsmcnn.exceptions import DimensionError


def softmax_cross_entropy(logits: np.ndarray, labels) -> tuple[float, np.ndarray]:
    """
    Softmax followed by the cross-entropy loss :code:`-log softmax(logits)[label]`. For a batch
    of logits (one row per instance) the loss is the mean over the instances, which keeps the
    scale of the gradient independent of the batch size.

    Parameters
    ----------
        logits : np.ndarray
            Logits of shape :code:`(num_classes,)` or :code:`(batch_size, num_classes)`.
        labels : int | np.ndarray
            The class index, or one class index per row of the logits.

    Returns
    -------
        tuple[float, np.ndarray]
            The (mean) loss and its gradient with respect to the logits, that is,
            :code:`(softmax(logits) - onehot(labels)) / batch_size`.

    Examples
    --------

        .. testcode::

            import math
            from tsmcnn.nn import softmax_cross_entropy

            loss, grad = softmax_cross_entropy([0., 0.], 1)
            assert abs(loss - math.log(2)) < 1e-12
            assert grad.tolist() == [0.5, -0.5]
    """
    logits = np.asarray(logits, dtype=np.float64)
    single = logits.ndim == 1
    if single:
        logits = logits[np.newaxis, :]
    if logits.ndim != 2:
        raise DimensionError("rank", "1 or 2", logits.ndim, "softmax_cross_entropy")
    labels = np.atleast_1d(np.asarray(labels))
    if labels.shape != (logits.shape[0],):
        raise DimensionError("batch", logits.shape[0], labels.shape, "softmax_cross_entropy")
    if not np.issubdtype(labels.dtype, np.integer):
        if np.any(labels != np.round(labels)):
            raise TypeError("The labels need to be class indices.")
        labels = labels.astype(np.intp)
    num_classes = logits.shape[1]
    if np.any(labels < 0) or np.any(labels >= num_classes):
        raise ValueError(
            f"The labels need to be class indices between 0 and {num_classes - 1} "
            f"(got {labels.tolist()})."
        )

    batch_size = logits.shape[0]
    rows = np.arange(batch_size)
    top = np.max(logits, axis=1)
    log_normaliser = top + np.log(np.sum(np.exp(logits - top[:, np.newaxis]), axis=1))
    losses = log_normaliser - logits[rows, labels]

    grad = softmax(logits)
    grad[rows, labels] -= 1.0
    grad /= batch_size
    if single:
        grad = grad[0]
    return float(np.mean(losses)), grad
