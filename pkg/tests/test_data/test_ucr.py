import os
import tempfile
from unittest import TestCase

import numpy as np

from tsmcnn.data import Dataset, LabeledSeries, dataset_name, load_ucr, save_ucr
from tsmcnn.exceptions import DataFormatError
from tests.utils import ramp_dataset


class TestLoadUcr(TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmp.cleanup()

    def write(self, name, content):
        path = os.path.join(self.tmp.name, name)
        with open(path, "w") as f:
            f.write(content)
        return path

    def test_comma_and_whitespace(self):
        comma = self.write("Toy_TRAIN.csv", "2,1.0,2.0,3.0\n-1,0.5,0.5,0.5\n\n2,3,2,1\n")
        tabs = self.write("Toy_TEST.tsv", "2.0000000e+00\t1.0\t2.0\t3.0\n-1\t0.5\t0.5\t0.5\n")
        train = load_ucr(comma)
        self.assertEqual(train.name, "Toy")
        self.assertEqual(train.label_map, {-1: 0, 2: 1})
        self.assertEqual(train.labels.tolist(), [1, 0, 1])
        self.assertEqual(train.provenance.tolist(), [0, 1, 2])
        self.assertEqual(train.series_length, 3)
        test = load_ucr(tabs, label_map=train.label_map)
        self.assertEqual(test.labels.tolist(), [1, 0])
        assert np.array_equal(test.values(), [[1, 2, 3], [0.5, 0.5, 0.5]])

    def test_errors(self):
        with self.assertRaises(FileNotFoundError):
            load_ucr(os.path.join(self.tmp.name, "missing.tsv"))
        with self.assertRaises(DataFormatError):
            load_ucr(self.write("empty.tsv", "\n\n"))
        with self.assertRaises(DataFormatError) as context:
            load_ucr(self.write("ragged.tsv", "1 1 2 3\n2 1 2\n"))
        self.assertEqual(context.exception.line_number, 2)
        with self.assertRaises(DataFormatError) as context:
            load_ucr(self.write("nan.tsv", "1 1 2 3\n2 1 nan 3\n"))
        self.assertEqual(context.exception.line_number, 2)
        with self.assertRaises(DataFormatError):
            load_ucr(self.write("text.tsv", "1 1 a 3\n"))
        with self.assertRaises(DataFormatError):
            load_ucr(self.write("unknown.tsv", "3 1 2 3\n"), label_map={1: 0, 2: 1})
        # DataFormatError is a ValueError
        with self.assertRaises(ValueError):
            load_ucr(self.write("short.tsv", "1 1\n"))

    def test_ragged_allowed(self):
        dataset = load_ucr(self.write("ragged.tsv", "1 1 2 3\n2 1 2\n"), rectangular=False)
        self.assertIsNone(dataset.series_length)
        with self.assertRaises(ValueError):
            dataset.values()

    def test_save_and_load(self):
        dataset = ramp_dataset(num_series=6, length=10)
        path = os.path.join(self.tmp.name, "ramps.csv")
        save_ucr(dataset, path)
        loaded = load_ucr(path)
        self.assertEqual(loaded.label_map, dataset.label_map)
        assert np.array_equal(loaded.values(), dataset.values())
        assert np.array_equal(loaded.labels, dataset.labels)

    def test_dataset_name(self):
        self.assertEqual(dataset_name("/a/b/GunPoint_TRAIN.tsv"), "GunPoint")
        self.assertEqual(dataset_name("Coffee_TEST"), "Coffee")
        self.assertEqual(dataset_name("mine.csv"), "mine")


class TestDataset(TestCase):
    def test_validation(self):
        with self.assertRaises(ValueError):
            LabeledSeries(0, [1.0], 0)
        with self.assertRaises(ValueError):
            LabeledSeries(0, [1.0, np.inf], 0)
        with self.assertRaises(ValueError):
            Dataset([], {"a": 0, "b": 2})
        with self.assertRaises(ValueError):
            Dataset([LabeledSeries(2, [1, 2], 0)], {"a": 0, "b": 1})

    def test_read_only_values(self):
        item = LabeledSeries(0, [1, 2, 3], 0)
        with self.assertRaises(ValueError):
            item.values[0] = 5

    def test_labels(self):
        dataset = Dataset([LabeledSeries(1, [1, 2], 0)], {"x": 1, "y": 0})
        self.assertEqual(dataset.class_labels(), ["y", "x"])
        self.assertEqual(dataset.original_label(1), "x")
        self.assertEqual(dataset.num_classes, 2)
