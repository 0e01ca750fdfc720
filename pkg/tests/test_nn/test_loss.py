import math
from unittest import TestCase

import numpy as np

from tsmcnn.exceptions import DimensionError
from tsmcnn.nn import grad_check, softmax_cross_entropy


class TestSoftmaxCrossEntropy(TestCase):
    def test_uniform_logits(self):
        loss, grad = softmax_cross_entropy([0.0, 0.0], 1)
        self.assertAlmostEqual(loss, math.log(2), places=12)
        self.assertEqual(grad.tolist(), [0.5, -0.5])

    def test_batch_mean(self):
        logits = np.array([[0.0, 0.0], [0.0, 0.0]])
        loss, grad = softmax_cross_entropy(logits, np.array([0, 1]))
        self.assertAlmostEqual(loss, math.log(2), places=12)
        self.assertEqual(grad.tolist(), [[-0.25, 0.25], [0.25, -0.25]])

    def test_large_logits(self):
        loss, grad = softmax_cross_entropy([1000.0, 0.0], 0)
        assert loss >= 0 and loss < 1e-12
        assert np.all(np.isfinite(grad))
        loss, _ = softmax_cross_entropy([1000.0, 0.0], 1)
        self.assertAlmostEqual(loss, 1000.0)

    def test_gradient(self):
        rng = np.random.default_rng(6)
        logits = rng.standard_normal((5, 4))
        labels = rng.integers(0, 4, size=5)

        def fragment():
            loss, grad = softmax_cross_entropy(logits, labels)
            return loss, {"logits": grad}

        self.assertTrue(grad_check(fragment, {"logits": logits}).passed)

    def test_errors(self):
        with self.assertRaises(ValueError):
            softmax_cross_entropy([0.0, 0.0], 2)
        with self.assertRaises(ValueError):
            softmax_cross_entropy([0.0, 0.0], -1)
        with self.assertRaises(DimensionError):
            softmax_cross_entropy(np.zeros((3, 2)), [0, 1])
