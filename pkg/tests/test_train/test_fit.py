from unittest import TestCase
import importlib
from unittest.mock import patch

import numpy as np

from tsmcnn.data import Dataset, LabeledSeries, stratified_split
from tsmcnn.exceptions import DimensionError, GeometryError, TrainingError
from tsmcnn.network import assemble
from tsmcnn.train import TrainConfig, evaluate, fit
from tests.utils import ramp_dataset, tiny_config

# ``tsmcnn.train.fit`` resolves to the re-exported function, so patch the module object.
fit_module = importlib.import_module("tsmcnn.train.fit")


class TestEvaluate(TestCase):
    def test_error_rate(self):
        items = [LabeledSeries(i % 3, [0.0, 1.0], i) for i in range(150)]
        dataset = Dataset(items, {"a": 0, "b": 1, "c": 2})
        predicted = dataset.labels.copy()
        predicted[[4, 50, 149]] = (predicted[[4, 50, 149]] + 1) % 3
        with patch.object(fit_module, "predict_labels", return_value=predicted):
            self.assertAlmostEqual(evaluate(None, dataset), 0.02)

    def test_empty(self):
        model = assemble(tiny_config(), seed=0)
        with self.assertRaises(ValueError):
            evaluate(model, ramp_dataset().with_items([]))


class TestFit(TestCase):
    def test_learns_ramps(self):
        data = ramp_dataset(num_series=20, seed=1)
        test = ramp_dataset(num_series=10, seed=2)
        config = tiny_config(local_filters=8, full_filters=8, dense_units=16)
        tcfg = TrainConfig(batch_size=8, max_epochs=50, patience=50, seed=0)
        model, report = fit(config, data, tcfg, test_data=test)

        self.assertEqual(len(report.epochs), 50)
        self.assertEqual(min(r.train_err for r in report.epochs), 0.0)
        self.assertIsNotNone(report.test_error)
        self.assertEqual(model.class_labels, [1, 2])

        # The kept model is the one of the best epoch.
        _, val_side = stratified_split(data, tcfg.val_fraction, seed=tcfg.seed)
        self.assertEqual(evaluate(model, val_side), report.best_validation_error)
        best = [r for r in report.epochs if r.val_err == report.best_validation_error]
        self.assertEqual(best[0].epoch, report.best_epoch)

    def test_no_leakage(self):
        data = ramp_dataset(num_series=20)
        _, report = fit(tiny_config(), data, TrainConfig(max_epochs=1, seed=5))
        self.assertFalse(report.train_provenance & report.validation_provenance)
        self.assertEqual(report.train_provenance | report.validation_provenance, set(range(20)))
        self.assertEqual(len(report.validation_provenance), 4)

    def test_deterministic(self):
        data = ramp_dataset(num_series=12)
        tcfg = TrainConfig(max_epochs=2, batch_size=8, seed=3)
        first_model, first = fit(tiny_config(), data, tcfg)
        second_model, second = fit(tiny_config(), data, tcfg)
        self.assertEqual(first.epochs, second.epochs)
        for name, values in first_model.parameters().items():
            assert np.array_equal(values, second_model.parameters()[name])

    def test_patience(self):
        data = ramp_dataset(num_series=12)
        _, report = fit(tiny_config(), data, TrainConfig(max_epochs=30, patience=0, seed=0))
        self.assertEqual(len(report.epochs), 1)
        self.assertEqual(report.best_epoch, 1)

        _, report = fit(tiny_config(), data, TrainConfig(max_epochs=30, patience=2, seed=0))
        stale = len(report.epochs) - report.best_epoch
        self.assertTrue(stale == 2 or len(report.epochs) == 30)

    def test_non_finite_loss(self):
        with patch.object(
            fit_module, "loss_and_gradients", return_value=(float("nan"), {})
        ):
            with self.assertRaises(TrainingError) as context:
                fit(tiny_config(), ramp_dataset(), TrainConfig(max_epochs=3, seed=0))
        self.assertEqual(context.exception.epoch, 1)

    def test_bad_data(self):
        tcfg = TrainConfig(max_epochs=1, seed=0)
        with self.assertRaises(DimensionError):
            fit(tiny_config(), ramp_dataset(length=40), tcfg)
        with self.assertRaises(ValueError):
            fit(tiny_config(num_classes=3), ramp_dataset(), tcfg)
        data = ramp_dataset()
        only_up = data.with_items([item for item in data if item.label == 0])
        with self.assertRaises(ValueError):
            fit(tiny_config(), only_up, tcfg)
        with self.assertRaises(GeometryError):
            fit(tiny_config(pooling_factor=10000), data, tcfg)
