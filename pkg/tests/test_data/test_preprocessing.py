from unittest import TestCase

import numpy as np

from tsmcnn.data import (
    Dataset,
    LabeledSeries,
    ZNormalisation,
    augment_by_slicing,
    preprocess,
    should_z_normalize,
    stratified_split,
    z_normalize,
)
from tests.utils import ramp_dataset


class TestZNormalisation(TestCase):
    def test_moments(self):
        series = np.random.default_rng(0).uniform(-5, 20, 100)
        normalised = z_normalize(series)
        self.assertAlmostEqual(normalised.mean(), 0, delta=1e-12)
        self.assertAlmostEqual(normalised.std(), 1, delta=1e-12)

    def test_random_moments(self):
        rng = np.random.default_rng(17)
        for _ in range(50):
            n = int(rng.integers(2, 200))
            series = rng.normal(rng.uniform(-100, 100), rng.uniform(0.01, 50), n)
            normalised = z_normalize(series)
            self.assertAlmostEqual(normalised.mean(), 0, delta=1e-9)
            self.assertAlmostEqual(normalised.std(), 1, delta=1e-9)

    def test_idempotent(self):
        rng = np.random.default_rng(18)
        for series in [rng.uniform(-5, 20, 64), np.full(10, 2.5), rng.standard_normal((3, 12))]:
            once = z_normalize(series)
            assert np.allclose(z_normalize(once), once, atol=1e-12)

    def test_constant_and_batch(self):
        batch = np.array([[3.0, 3.0, 3.0], [1.0, 2.0, 3.0]])
        normalised = z_normalize(batch)
        assert np.all(normalised[0] == 0)
        assert np.allclose(normalised[1], [-np.sqrt(1.5), 0, np.sqrt(1.5)])
        with self.assertRaises(ValueError):
            z_normalize([1.0])

    def test_decision(self):
        self.assertTrue(should_z_normalize("Coffee"))
        self.assertTrue(should_z_normalize("OSULeaf", "auto"))
        self.assertFalse(should_z_normalize("GunPoint"))
        self.assertTrue(should_z_normalize("GunPoint", ZNormalisation.ON))
        self.assertFalse(should_z_normalize("Beef", "off"))
        with self.assertRaises(ValueError):
            should_z_normalize("Beef", "sometimes")

    def test_preprocess(self):
        dataset = ramp_dataset(num_series=4, length=8, name="Beef")
        with self.assertLogs("tsmcnn.data.preprocessing", level="INFO"):
            normalised = preprocess(dataset)
        assert np.allclose(normalised.values().std(axis=1), 1)
        self.assertIs(preprocess(dataset, ZNormalisation.OFF), dataset)


class TestStratifiedSplit(TestCase):
    def test_proportions(self):
        dataset = ramp_dataset(num_series=20)
        first, second = stratified_split(dataset, 0.2, seed=3)
        self.assertEqual(len(first), 16)
        self.assertEqual(len(second), 4)
        self.assertEqual(np.bincount(second.labels).tolist(), [2, 2])
        self.assertEqual(set(first.provenance) | set(second.provenance), set(range(20)))
        self.assertFalse(set(first.provenance) & set(second.provenance))
        self.assertEqual(first.provenance.tolist(), sorted(first.provenance.tolist()))
        self.assertEqual(second.label_map, dataset.label_map)

    def test_deterministic(self):
        dataset = ramp_dataset(num_series=30)
        first = stratified_split(dataset, 0.3, seed=9)[1].provenance.tolist()
        second = stratified_split(dataset, 0.3, seed=9)[1].provenance.tolist()
        self.assertEqual(first, second)

    def test_every_class_represented(self):
        dataset = ramp_dataset(num_series=6)
        first, second = stratified_split(dataset, 0.01, seed=0)
        self.assertEqual(np.bincount(second.labels, minlength=2).tolist(), [1, 1])
        self.assertEqual(len(first), 4)

    def test_edge_cases(self):
        dataset = ramp_dataset(num_series=6)
        first, second = stratified_split(dataset, 0, seed=0)
        self.assertEqual(len(first), 6)
        self.assertEqual(len(second), 0)
        with self.assertRaises(ValueError):
            stratified_split(dataset, 1, seed=0)
        single = Dataset(
            [LabeledSeries(0, [1, 2], 0), LabeledSeries(0, [2, 1], 1), LabeledSeries(1, [0, 1], 2)],
            {0: 0, 1: 1},
        )
        with self.assertRaises(ValueError):
            stratified_split(single, 0.5, seed=0)


class TestAugmentation(TestCase):
    def test_slices(self):
        dataset = ramp_dataset(num_series=3, length=10)
        slices = augment_by_slicing(dataset, 0.8)
        self.assertEqual(len(slices), 3 * 3)
        self.assertEqual(slices.series_length, 8)
        self.assertEqual(slices.provenance.tolist(), [0, 0, 0, 1, 1, 1, 2, 2, 2])
        self.assertEqual([item.offset for item in slices], [0, 1, 2] * 3)
        self.assertEqual(slices.labels.tolist(), [0, 0, 0, 1, 1, 1, 0, 0, 0])
        item = slices.items[4]
        assert np.array_equal(item.values, dataset.items[1].values[1:9])

    def test_ragged(self):
        dataset = Dataset([LabeledSeries(0, [1, 2, 3], 0), LabeledSeries(0, [1, 2], 1)], {0: 0})
        with self.assertRaises(ValueError):
            augment_by_slicing(dataset, 0.9)
