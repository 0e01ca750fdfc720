from unittest import TestCase

import numpy as np

from tsmcnn.core import build_branches
from tsmcnn.network import (
    assemble,
    best_threshold,
    filter_activation,
    pooled_responses,
    rank_filters,
)
from tests.utils import direct_conv1d, ramp_dataset, tiny_config


class TestFilterActivation(TestCase):
    def test_against_direct_loops(self):
        model = assemble(tiny_config(), seed=2)
        data = ramp_dataset(num_series=6)
        for position, branch in enumerate(model.branch_names):
            bank = model.local_layers[position].bank
            responses = pooled_responses(model, data, branch, activated=False)
            self.assertEqual(responses.shape, (6, 4))
            values = filter_activation(model, data, branch, 1)
            for i, item in enumerate(data):
                signal = build_branches(item.values, model.config.branch_spec).signals()[position]
                expected = direct_conv1d(signal, bank.weights, bank.bias).max(axis=-1)
                assert np.allclose(responses[i], expected, atol=1e-12)
                assert np.allclose(values[i], max(expected[1], 0.0), atol=1e-12)

    def test_difference_filter_separates_ramps(self):
        model = assemble(tiny_config(), seed=0)
        # Responds x[i + 2] - x[i], positive on up-ramps only.
        model.local_layers[0].bank.weights[0] = [[1.0, 0.0, -1.0]]
        data = ramp_dataset(num_series=10, noise=0.0)
        values = filter_activation(model, data, "identity", 0)
        assert np.all(values[data.labels == 0] > 0.1)
        assert np.all(values[data.labels == 1] == 0)
        split = best_threshold(values, data.labels)
        self.assertEqual((split.above, split.below, split.error), (0, 1, 0.0))

        ranked = rank_filters(model, data, "identity")
        self.assertEqual(sorted(f for f, _ in ranked), [0, 1, 2, 3])
        self.assertEqual(ranked[0][1].error, 0.0)
        errors = [split.error for _, split in ranked]
        self.assertEqual(errors, sorted(errors))

    def test_errors(self):
        model = assemble(tiny_config(), seed=0)
        data = ramp_dataset(num_series=4)
        with self.assertRaises(ValueError):
            filter_activation(model, data, "scale_3", 0)
        with self.assertRaises(ValueError):
            filter_activation(model, data, "identity", 4)


class TestBestThreshold(TestCase):
    def test_separable(self):
        split = best_threshold([0.1, 0.2, 0.8, 0.9], [0, 0, 1, 1])
        self.assertAlmostEqual(split.threshold, 0.5)
        self.assertEqual((split.above, split.below, split.error), (1, 0, 0.0))
        split = best_threshold([0.1, 0.2, 0.8, 0.9], [1, 1, 0, 0])
        self.assertEqual((split.above, split.below, split.error), (0, 1, 0.0))

    def test_overlapping(self):
        split = best_threshold([0.1, 0.5, 0.4, 0.9], [0, 0, 1, 1])
        self.assertAlmostEqual(split.threshold, 0.25)
        self.assertEqual(split.above, 1)
        self.assertEqual(split.error, 0.25)

    def test_errors(self):
        with self.assertRaises(ValueError):
            best_threshold([0.1, 0.2, 0.3], [0, 1, 2])
        with self.assertRaises(ValueError):
            best_threshold([0.1, 0.2], [0])
        with self.assertRaises(ValueError):
            best_threshold([0.1, 0.2], [1, 1])
