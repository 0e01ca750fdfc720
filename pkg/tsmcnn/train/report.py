"""
Per-epoch record of a training run.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field


@dataclass(frozen=True)
class EpochRecord:
    """
    Losses and errors measured at the end of an epoch (1-based). The duration of the epoch
    is ignored when comparing records.
    """

    epoch: int
    train_loss: float
    train_err: float
    val_err: float
    seconds: float = field(default=0.0, compare=False)


@dataclass
class FitReport:
    """
    Outcome of :py:func:`~tsmcnn.train.fit`.

    Attributes
    ----------
        epochs : list[EpochRecord]
            One record per epoch that ran.
        best_epoch : int
            Epoch whose model was kept, the first one reaching the lowest validation error.
        best_validation_error : float
            Validation error of the kept model.
        test_error : float | None
            Error of the kept model on the test set, if one was given.
        train_provenance : frozenset
            Provenance of the original series used for training.
        validation_provenance : frozenset
            Provenance of the original series held out for validation.
    """

    epochs: list = field(default_factory=list)
    best_epoch: int = 0
    best_validation_error: float = float("inf")
    test_error: float = None
    train_provenance: frozenset = frozenset()
    validation_provenance: frozenset = frozenset()

    def record(self, record: EpochRecord) -> bool:
        """Appends a record and returns whether it improves the validation error."""
        self.epochs.append(record)
        if record.val_err < self.best_validation_error:
            self.best_validation_error = record.val_err
            self.best_epoch = record.epoch
            return True
        return False

    def to_records(self) -> list[dict]:
        return [
            {
                "epoch": r.epoch,
                "train_loss": r.train_loss,
                "train_err": r.train_err,
                "val_err": r.val_err,
                "seconds": r.seconds,
            }
            for r in self.epochs
        ]

    def to_dict(self) -> dict:
        return {
            "best_epoch": self.best_epoch,
            "best_validation_error": self.best_validation_error,
            "test_error": self.test_error,
            "epochs": self.to_records(),
        }

    def write_csv(self, path: str) -> None:
        """Writes one line per epoch, fields separated by :code:`;`."""
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.DictWriter(
                f,
                fieldnames=["epoch", "train_loss", "train_err", "val_err", "seconds"],
                delimiter=";",
            )
            writer.writeheader()
            writer.writerows(self.to_records())
