"""
Training loop of the multi-scale network: stratified validation split of the original series,
augmentation of the training side by slicing, mini-batch SGD with momentum and early stopping
on the validation error.
"""

from __future__ import annotations

import logging
import time

import numpy as np

from tsmcnn.data.preprocessing import augment_by_slicing, stratified_split
from tsmcnn.data.ucr import Dataset
from tsmcnn.exceptions import DimensionError, TrainingError
from tsmcnn.network.config import McnnConfig, geometry
from tsmcnn.network.model import McnnModel, assemble, loss_and_gradients, predict_with_vote
from tsmcnn.train.report import EpochRecord, FitReport
from tsmcnn.train.sgd import SgdState, TrainConfig, sgd_momentum_step

logger = logging.getLogger(__name__)


def predict_labels(model: McnnModel, dataset: Dataset) -> np.ndarray:
    """
    Predicted class index of every series of the dataset, by majority vote over its slices.
    """
    return np.array(
        [predict_with_vote(model, item.values).label for item in dataset], dtype=np.intp
    )


def evaluate(model: McnnModel, dataset: Dataset) -> float:
    """
    Error rate of the model on a dataset: the proportion of series whose voted class differs
    from their label.

    Parameters
    ----------
        model : McnnModel
            The network.
        dataset : Dataset
            The labelled series, mapped with the label map of the training data.

    Returns
    -------
        float
            The error rate, in [0, 1].

    Raises
    ------
        ValueError
            When the dataset is empty.
    """
    if len(dataset) == 0:
        raise ValueError("Cannot evaluate a model on an empty dataset.")
    wrong = np.count_nonzero(predict_labels(model, dataset) != dataset.labels)
    return wrong / len(dataset)


def _check_training_data(config: McnnConfig, train_data: Dataset) -> None:
    if len(train_data) == 0:
        raise ValueError("The training data is empty.")
    if train_data.num_classes != config.num_classes:
        raise ValueError(
            f"The configuration has {config.num_classes} classes but the training data has "
            f"{train_data.num_classes}."
        )
    if train_data.series_length != config.input_length:
        raise DimensionError(
            "length", config.input_length, train_data.series_length, "fit"
        )
    missing = set(range(config.num_classes)) - set(train_data.labels.tolist())
    if missing:
        raise ValueError(
            f"The classes {sorted(train_data.original_label(c) for c in missing)} have no "
            f"training series."
        )


def fit(
    config: McnnConfig, train_data: Dataset, tcfg: TrainConfig, test_data: Dataset = None
) -> tuple[McnnModel, FitReport]:
    """
    Trains a network.

    The original series are split into a training and a validation side, stratified by class.
    Only the training side is sliced into training instances. Each epoch shuffles the slices,
    runs the mini-batches and measures the vote error on the original series of both sides. The
    model of the first epoch reaching the lowest validation error is kept. Training stops once
    :code:`patience` consecutive epochs do not improve on it, or after :code:`max_epochs`.

    Parameters
    ----------
        config : McnnConfig
            The network configuration; its input length is the length of the training series.
        train_data : Dataset
            The training series.
        tcfg : TrainConfig
            The training hyperparameters.
        test_data : Dataset, default: :code:`None`
            If given, the kept model is evaluated on it and the error stored in the report.

    Returns
    -------
        tuple[McnnModel, FitReport]
            The kept model and the report of the run.

    Raises
    ------
        GeometryError
            When the configuration cannot be assembled.
        ValueError
            When a class is missing from the training data or from its training side.
        TrainingError
            When the loss becomes non-finite, or validation series leak into training.
    """
    _check_training_data(config, train_data)
    geometry(config)

    train_side, val_side = stratified_split(train_data, tcfg.val_fraction, seed=tcfg.seed)
    missing = set(range(config.num_classes)) - set(train_side.labels.tolist())
    if missing:
        raise ValueError(
            f"After the validation split, the classes "
            f"{sorted(train_data.original_label(c) for c in missing)} have no training series."
        )
    train_provenance = frozenset(train_side.provenance.tolist())
    validation_provenance = frozenset(val_side.provenance.tolist())
    if train_provenance & validation_provenance:
        raise TrainingError(None, "Series are on both sides of the validation split.")

    slices = augment_by_slicing(train_side, config.slice_ratio)
    if not frozenset(slices.provenance.tolist()) <= train_provenance:
        raise TrainingError(None, "Training slices come from validation series.")
    inputs = slices.values()
    targets = slices.labels
    logger.info(
        "Training on %d slices of %d series, validating on %d series.",
        len(slices),
        len(train_side),
        len(val_side),
    )

    model = assemble(config, seed=tcfg.seed)
    model.class_labels = train_data.class_labels()
    params = model.parameters()
    state = SgdState.zeros_like(params)
    rng = np.random.default_rng(tcfg.seed)

    report = FitReport(
        train_provenance=train_provenance, validation_provenance=validation_provenance
    )
    best_model = model.copy()
    stale_epochs = 0
    for epoch in range(1, tcfg.max_epochs + 1):
        start = time.perf_counter()
        order = rng.permutation(len(inputs))
        total_loss = 0.0
        for first in range(0, len(order), tcfg.batch_size):
            batch = order[first : first + tcfg.batch_size]
            loss, grads = loss_and_gradients(model, inputs[batch], targets[batch])
            if not np.isfinite(loss):
                raise TrainingError(epoch, f"the loss is not finite ({loss}).")
            sgd_momentum_step(params, grads, state, tcfg.learning_rate, tcfg.momentum)
            total_loss += loss * len(batch)

        train_err = evaluate(model, train_side)
        val_err = evaluate(model, val_side)
        record = EpochRecord(
            epoch,
            total_loss / len(inputs),
            train_err,
            val_err,
            time.perf_counter() - start,
        )
        logger.info(
            "Epoch %d: loss %.5f, training error %.4f, validation error %.4f (%.2fs).",
            record.epoch,
            record.train_loss,
            record.train_err,
            record.val_err,
            record.seconds,
        )
        if report.record(record):
            best_model = model.copy()
            stale_epochs = 0
        else:
            stale_epochs += 1
        if stale_epochs >= tcfg.patience:
            logger.info("Early stopping after epoch %d.", epoch)
            break

    logger.info(
        "Kept the model of epoch %d (validation error %.4f).",
        report.best_epoch,
        report.best_validation_error,
    )
    if test_data is not None:
        report.test_error = evaluate(best_model, test_data)
        logger.info("Test error %.4f.", report.test_error)
    return best_model, report
