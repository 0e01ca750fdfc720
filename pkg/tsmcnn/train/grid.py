"""
Grid search over the filter ratio, the pooling factor and the batch size.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from itertools import product
from multiprocessing import Pool

from tsmcnn.data.ucr import Dataset
from tsmcnn.exceptions import GeometryError
from tsmcnn.inputvalidators import validate_float, validate_int
from tsmcnn.network.config import McnnConfig, geometry
from tsmcnn.network.model import McnnModel
from tsmcnn.train.fit import fit
from tsmcnn.train.report import FitReport
from tsmcnn.train.sgd import TrainConfig

logger = logging.getLogger(__name__)


def _unique(values) -> tuple:
    return tuple(dict.fromkeys(values))


@dataclass(frozen=True)
class GridSpec:
    """
    The values tried by :py:func:`grid_search`. Duplicates are dropped, the order is kept.

    Parameters
    ----------
        filter_ratios : tuple[float, ...], default: :code:`(0.05, 0.1, 0.2)`
            Filter ratios, in (0, 1].
        pooling_factors : tuple[int, ...], default: :code:`(2, 3, 5)`
            Pooling factors, positive.
        batch_sizes : tuple[int, ...], default: :code:`(16, 32)`
            Batch sizes, positive.
    """

    filter_ratios: tuple = (0.05, 0.1, 0.2)
    pooling_factors: tuple = (2, 3, 5)
    batch_sizes: tuple = (16, 32)

    def __post_init__(self):
        for name in ("filter_ratios", "pooling_factors", "batch_sizes"):
            values = _unique(getattr(self, name))
            if not values:
                raise ValueError(f"The grid needs at least one value for {name}.")
            object.__setattr__(self, name, values)
        for r in self.filter_ratios:
            validate_float(r, "filter ratio", 0, 1, lower_open=True)
        for p in self.pooling_factors:
            validate_int(p, "pooling factor", lower_bound=1)
        for b in self.batch_sizes:
            validate_int(b, "batch size", lower_bound=1)

    def points(self) -> list[tuple[float, int, int]]:
        """The grid points, filter ratios varying slowest and batch sizes fastest."""
        return list(product(self.filter_ratios, self.pooling_factors, self.batch_sizes))

    def __len__(self) -> int:
        return len(self.filter_ratios) * len(self.pooling_factors) * len(self.batch_sizes)


@dataclass(frozen=True)
class GridEntry:
    """
    One line of the leaderboard. Infeasible points have no errors and give the reason they were
    skipped.
    """

    filter_ratio: float
    pooling_factor: int
    batch_size: int
    validation_error: float = None
    best_epoch: int = None
    skipped: str = None

    @property
    def feasible(self) -> bool:
        return self.skipped is None


@dataclass
class GridResult:
    """
    Outcome of :py:func:`grid_search`: the selected point and the leaderboard in grid order.
    """

    config: McnnConfig
    train_config: TrainConfig
    model: McnnModel
    report: FitReport
    leaderboard: list


def _train_point(task: tuple) -> tuple[McnnModel, FitReport]:
    config, data, tcfg = task
    return fit(config, data, tcfg)


def grid_search(
    base_config: McnnConfig,
    grid: GridSpec,
    data: Dataset,
    tcfg: TrainConfig,
    num_workers: int = 1,
) -> GridResult:
    """
    Trains one network per feasible grid point, all with the seed of :code:`tcfg`, and selects
    the one with the lowest validation error. Ties go to the first point in grid order.

    Parameters
    ----------
        base_config : McnnConfig
            The configuration whose filter ratio and pooling factor are varied.
        grid : GridSpec
            The values to try.
        data : Dataset
            The training data, split for validation by every run in the same way.
        tcfg : TrainConfig
            The training configuration whose batch size is varied.
        num_workers : int, default: :code:`1`
            Number of processes training grid points at the same time.

    Returns
    -------
        GridResult
            The selected configuration, model and report together with the leaderboard.

    Raises
    ------
        GeometryError
            When no grid point is feasible.
    """
    validate_int(num_workers, "number of workers", lower_bound=1)
    leaderboard = []
    tasks, task_positions = [], []
    for filter_ratio, pooling_factor, batch_size in grid.points():
        config = replace(base_config, filter_ratio=filter_ratio, pooling_factor=pooling_factor)
        try:
            geometry(config)
        except GeometryError as e:
            logger.warning(
                "Skipping filter ratio %s, pooling factor %d: %s",
                filter_ratio,
                pooling_factor,
                e,
            )
            leaderboard.append(GridEntry(filter_ratio, pooling_factor, batch_size, skipped=str(e)))
            continue
        task_positions.append(len(leaderboard))
        leaderboard.append(GridEntry(filter_ratio, pooling_factor, batch_size))
        tasks.append((config, data, replace(tcfg, batch_size=batch_size)))

    if not tasks:
        raise GeometryError(
            "all", f"none of the {len(grid)} grid points gives a feasible network."
        )
    logger.info("Grid search over %d feasible points of %d.", len(tasks), len(grid))

    if num_workers == 1:
        outcomes = [_train_point(task) for task in tasks]
    else:
        with Pool(processes=num_workers) as pool:
            outcomes = pool.map(_train_point, tasks)

    best = None
    for position, task, (model, report) in zip(task_positions, tasks, outcomes):
        entry = leaderboard[position]
        leaderboard[position] = replace(
            entry,
            validation_error=report.best_validation_error,
            best_epoch=report.best_epoch,
        )
        logger.info(
            "Filter ratio %s, pooling factor %d, batch size %d: validation error %.4f.",
            entry.filter_ratio,
            entry.pooling_factor,
            entry.batch_size,
            report.best_validation_error,
        )
        if best is None or report.best_validation_error < best[3].best_validation_error:
            best = (task[0], task[2], model, report)
    return GridResult(*best, leaderboard=leaderboard)
