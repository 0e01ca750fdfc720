from unittest import TestCase

import numpy as np
from scipy.signal import convolve

from tsmcnn.core import (
    FilterBank,
    as_signal,
    conv1d,
    dense,
    maxpool_by_factor,
    pooling_windows,
    softmax,
)
from tsmcnn.exceptions import DimensionError
from tests.utils import direct_conv1d


class TestConv1d(TestCase):
    def test_difference_filter(self):
        bank = FilterBank(np.array([[[1.0, -1.0]]]), np.zeros(1))
        self.assertEqual(conv1d(np.array([[1.0, 3.0, 6.0]]), bank).tolist(), [[2.0, 3.0]])

    def test_against_direct_loops(self):
        rng = np.random.default_rng(12)
        for num_filters, num_channels, n, m in [(1, 1, 5, 2), (3, 2, 12, 4), (4, 3, 9, 9)]:
            signal = rng.standard_normal((num_channels, n))
            weights = rng.standard_normal((num_filters, num_channels, m))
            bias = rng.standard_normal(num_filters)
            out = conv1d(signal, FilterBank(weights, bias))
            assert out.shape == (num_filters, n - m + 1)
            assert np.allclose(out, direct_conv1d(signal, weights, bias), atol=1e-12)

    def test_orientation_matches_scipy(self):
        rng = np.random.default_rng(3)
        signal = rng.standard_normal((2, 20))
        weights = rng.standard_normal((3, 2, 5))
        bias = rng.standard_normal(3)
        out = conv1d(signal, FilterBank(weights, bias))
        for f in range(3):
            expected = sum(convolve(signal[c], weights[f, c], mode="valid") for c in range(2))
            assert np.allclose(out[f], expected + bias[f], atol=1e-12)

    def test_batch_axes(self):
        rng = np.random.default_rng(5)
        batch = rng.standard_normal((4, 2, 11))
        bank = FilterBank(rng.standard_normal((3, 2, 3)), rng.standard_normal(3))
        out = conv1d(batch, bank)
        assert out.shape == (4, 3, 9)
        for b in range(4):
            assert np.allclose(out[b], conv1d(batch[b], bank))

    def test_errors(self):
        bank = FilterBank(np.ones((1, 2, 3)), np.zeros(1))
        with self.assertRaises(DimensionError):
            conv1d(np.ones((1, 10)), bank)
        with self.assertRaises(DimensionError):
            conv1d(np.ones((2, 2)), bank)
        with self.assertRaises(DimensionError):
            FilterBank(np.ones((1, 2, 3)), np.zeros(2))
        with self.assertRaises(ValueError):
            FilterBank(np.full((1, 1, 2), np.nan), np.zeros(1))

    def test_as_signal(self):
        assert as_signal([1, 3, 6]).shape == (1, 3)
        with self.assertRaises(DimensionError):
            as_signal([[1, 2]], num_channels=2)
        with self.assertRaises(ValueError):
            as_signal([1, np.inf])


class TestPooling(TestCase):
    def test_windows_tile_the_signal(self):
        for n in range(1, 30):
            for p in range(1, n + 1):
                windows = pooling_windows(n, p)
                assert len(windows) == p
                assert windows[0][0] == 0 and windows[-1][1] == n
                assert all(end == start for (_, end), (start, _) in zip(windows, windows[1:]))
                assert all(end > start for start, end in windows)

    def test_maxpool(self):
        pooled, argmax = maxpool_by_factor([[3, 1, 4, 1, 5, 9, 2]], 3)
        self.assertEqual(pooled.tolist(), [[3, 4, 9]])
        self.assertEqual(argmax.tolist(), [[0, 2, 5]])

    def test_ties_go_to_lowest_index(self):
        pooled, argmax = maxpool_by_factor([[2, 2, 1, 1]], 2)
        self.assertEqual(pooled.tolist(), [[2, 1]])
        self.assertEqual(argmax.tolist(), [[0, 2]])

    def test_full_pooling(self):
        signal = np.array([[1.0, 5.0, 2.0]])
        pooled, _ = maxpool_by_factor(signal, 1)
        self.assertEqual(pooled.tolist(), [[5.0]])
        pooled, _ = maxpool_by_factor(signal, 3)
        self.assertEqual(pooled.tolist(), signal.tolist())

    def test_errors(self):
        with self.assertRaises(ValueError):
            maxpool_by_factor([[1, 2]], 3)
        with self.assertRaises(ValueError):
            maxpool_by_factor([[1, 2]], 0)


class TestSoftmaxDense(TestCase):
    def test_softmax(self):
        rng = np.random.default_rng(1)
        probs = softmax(rng.standard_normal((5, 4)) * 10)
        assert np.allclose(probs.sum(axis=1), 1)
        assert np.all(probs > 0)
        self.assertEqual(softmax([1000.0, 1000.0]).tolist(), [0.5, 0.5])
        with self.assertRaises(ValueError):
            softmax([np.inf, 0.0])

    def test_dense(self):
        weights = np.array([[1.0, 2.0], [0.0, -1.0], [1.0, 1.0]])
        out = dense(np.array([[1.0, 1.0]]), weights, np.array([0.0, 1.0, 0.5]))
        self.assertEqual(out.tolist(), [[3.0, 0.0, 2.5]])
        with self.assertRaises(DimensionError):
            dense(np.ones(3), weights, np.zeros(3))


class TestConvolutionProperties(TestCase):
    def test_difference_filter_on_constant(self):
        bank = FilterBank(np.array([[[1.0, -1.0]]]), np.zeros(1))
        for n in range(2, 20):
            assert np.all(conv1d(np.full((1, n), 4.25), bank) == 0)

    def test_linear_in_signal(self):
        rng = np.random.default_rng(21)
        bank = FilterBank(rng.standard_normal((3, 2, 4)), np.zeros(3))
        x, y = rng.standard_normal((2, 2, 15))
        a, b = 1.5, -0.75
        combined = conv1d(a * x + b * y, bank)
        assert np.allclose(combined, a * conv1d(x, bank) + b * conv1d(y, bank), atol=1e-12)

    def test_linear_in_weights(self):
        rng = np.random.default_rng(22)
        signal = rng.standard_normal((2, 15))
        first, second = rng.standard_normal((2, 3, 2, 4))
        a, b = 2.0, 0.3
        combined = conv1d(signal, FilterBank(a * first + b * second, np.zeros(3)))
        separate = a * conv1d(signal, FilterBank(first, np.zeros(3))) + b * conv1d(
            signal, FilterBank(second, np.zeros(3))
        )
        assert np.allclose(combined, separate, atol=1e-12)


class TestPoolingAgainstLoops(TestCase):
    def test_max_and_argmax(self):
        rng = np.random.default_rng(30)
        for n in range(1, 33):
            # Small integers so that ties happen.
            signal = rng.integers(0, 4, size=(2, n)).astype(float)
            for p in range(1, n + 1):
                pooled, argmax = maxpool_by_factor(signal, p)
                assert pooled.shape == (2, p) and argmax.shape == (2, p)
                for c in range(2):
                    for k, (start, end) in enumerate(pooling_windows(n, p)):
                        window = signal[c, start:end]
                        assert start == (k * n) // p and end == ((k + 1) * n) // p
                        assert pooled[c, k] == window.max()
                        assert argmax[c, k] == start + int(np.argmax(window))


class TestSoftmaxProperties(TestCase):
    def test_shift_invariance(self):
        rng = np.random.default_rng(40)
        logits = rng.standard_normal((6, 5)) * 20
        for shift in [-500.0, -1.0, 3.0, 700.0]:
            assert np.allclose(softmax(logits + shift), softmax(logits), atol=1e-12)

    def test_sums_to_one(self):
        rng = np.random.default_rng(41)
        for scale in [1e-3, 1.0, 50.0, 1e3]:
            probs = softmax(rng.standard_normal((20, 7)) * scale)
            assert np.all(np.abs(probs.sum(axis=1) - 1) <= 1e-12)

    def test_large_logits(self):
        self.assertEqual(softmax([1000.0, 0.0]).tolist(), [1.0, 0.0])
