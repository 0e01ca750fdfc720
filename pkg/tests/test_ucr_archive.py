"""
Reference errors of the nearest-neighbour classifiers on the UCR archive. The tests only run when
the environment variable UCR_ARCHIVE points to a copy of the archive.
"""

from unittest import TestCase, skipUnless

from tsmcnn.baseline import run_baseline
from tsmcnn.data import load_ucr, preprocess
from tests.utils import ucr_archive_path


def _archive_name(*names):
    return next((n for n in names if ucr_archive_path(n, "TRAIN")), None)


def _load(name):
    train_path = ucr_archive_path(name, "TRAIN")
    test_path = ucr_archive_path(name, "TEST")
    if train_path is None or test_path is None:
        return None
    train = preprocess(load_ucr(train_path))
    test = preprocess(load_ucr(test_path, label_map=train.label_map))
    return train, test


@skipUnless(_archive_name("GunPoint", "Gun_Point"), "UCR_ARCHIVE is not set")
class TestGunPoint(TestCase):
    @classmethod
    def setUpClass(cls):
        cls.train, cls.test = _load(_archive_name("GunPoint", "Gun_Point"))

    def test_euclidean(self):
        error, _ = run_baseline("ed", self.train, self.test)
        self.assertAlmostEqual(error, 0.087, delta=0.0005)

    def test_dtw(self):
        error, _ = run_baseline("dtw", self.train, self.test)
        self.assertAlmostEqual(error, 0.093, delta=0.0005)

    def test_dtw_cv(self):
        error, window = run_baseline("dtwcv", self.train, self.test)
        self.assertAlmostEqual(error, 0.087, delta=0.0005)
        self.assertLessEqual(window, 0.1)


@skipUnless(_archive_name("ItalyPowerDemand", "ItalyPower"), "UCR_ARCHIVE is not set")
class TestItalyPowerDemand(TestCase):
    def test_euclidean(self):
        train, test = _load(_archive_name("ItalyPowerDemand", "ItalyPower"))
        error, _ = run_baseline("ed", train, test)
        self.assertAlmostEqual(error, 0.045, delta=0.0005)


@skipUnless(_archive_name("Coffee"), "UCR_ARCHIVE is not set")
class TestCoffee(TestCase):
    def test_dtw(self):
        train, test = _load("Coffee")
        error, _ = run_baseline("dtw", train, test)
        self.assertLessEqual(error, 0.036)
