from unittest import TestCase
from unittest.mock import patch

from tsmcnn.exceptions import GeometryError
from tsmcnn.train import FitReport, GridSpec, TrainConfig, grid_search
from tests.utils import ramp_dataset, tiny_config


class TestGridSpec(TestCase):
    def test_points(self):
        grid = GridSpec(filter_ratios=(0.1, 0.2, 0.1), pooling_factors=(2, 3), batch_sizes=(8,))
        self.assertEqual(grid.filter_ratios, (0.1, 0.2))
        self.assertEqual(len(grid), 4)
        self.assertEqual(grid.points(), [(0.1, 2, 8), (0.1, 3, 8), (0.2, 2, 8), (0.2, 3, 8)])
        self.assertEqual(len(GridSpec()), 18)

    def test_invalid(self):
        with self.assertRaises(ValueError):
            GridSpec(batch_sizes=())
        with self.assertRaises(ValueError):
            GridSpec(filter_ratios=(0.0,))
        with self.assertRaises(ValueError):
            GridSpec(pooling_factors=(0,))


class TestGridSearch(TestCase):
    def setUp(self):
        self.data = ramp_dataset(num_series=12)
        self.tcfg = TrainConfig(max_epochs=2, seed=0)

    def test_skips_infeasible(self):
        grid = GridSpec(filter_ratios=(0.1,), pooling_factors=(3, 10000, 2), batch_sizes=(8,))
        with self.assertLogs("tsmcnn.train.grid", level="WARNING"):
            result = grid_search(tiny_config(), grid, self.data, self.tcfg)
        board = result.leaderboard
        self.assertEqual([e.pooling_factor for e in board], [3, 10000, 2])
        self.assertEqual([e.feasible for e in board], [True, False, True])
        self.assertIsNone(board[1].validation_error)
        self.assertIn("identity", board[1].skipped)

        feasible = [e for e in board if e.feasible]
        best = min(e.validation_error for e in feasible)
        first_best = next(e for e in feasible if e.validation_error == best)
        self.assertEqual(result.config.pooling_factor, first_best.pooling_factor)
        self.assertEqual(result.report.best_validation_error, best)
        self.assertEqual(result.train_config.batch_size, 8)

    def test_all_infeasible(self):
        grid = GridSpec(filter_ratios=(0.1,), pooling_factors=(10000,), batch_sizes=(8,))
        with self.assertLogs("tsmcnn.train.grid", level="WARNING"):
            with self.assertRaises(GeometryError) as context:
                grid_search(tiny_config(), grid, self.data, self.tcfg)
        self.assertEqual(context.exception.branch, "all")

    def test_workers(self):
        grid = GridSpec(filter_ratios=(0.1,), pooling_factors=(2, 3), batch_sizes=(8,))
        serial = grid_search(tiny_config(), grid, self.data, self.tcfg)
        parallel = grid_search(tiny_config(), grid, self.data, self.tcfg, num_workers=2)
        self.assertEqual(serial.leaderboard, parallel.leaderboard)

    def test_selects_planted_point(self):
        errors = {(0.1, 2, 4): 0.3, (0.1, 2, 8): 0.2, (0.1, 3, 4): 0.05, (0.1, 3, 8): 0.05}
        errors.update({(0.2, 2, 4): 0.4, (0.2, 2, 8): 0.1, (0.2, 3, 4): 0.5, (0.2, 3, 8): 0.6})

        def fake_fit(config, data, tcfg):
            key = (config.filter_ratio, config.pooling_factor, tcfg.batch_size)
            return key, FitReport(best_epoch=1, best_validation_error=errors[key])

        grid = GridSpec(filter_ratios=(0.1, 0.2), pooling_factors=(2, 3), batch_sizes=(4, 8))
        with patch("tsmcnn.train.grid.fit", side_effect=fake_fit):
            result = grid_search(tiny_config(), grid, self.data, self.tcfg)
        self.assertEqual(result.model, (0.1, 3, 4))
        self.assertEqual(result.config.filter_ratio, 0.1)
        self.assertEqual(result.config.pooling_factor, 3)
        self.assertEqual(result.train_config.batch_size, 4)
        self.assertEqual(
            [e.validation_error for e in result.leaderboard],
            [errors[point] for point in grid.points()],
        )
