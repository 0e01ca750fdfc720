from unittest import TestCase

import numpy as np

from tsmcnn.nn import Activation, activate, activation_derivative, as_activation


class TestActivations(TestCase):
    def test_values(self):
        x = np.array([-2.0, 0.0, 3.0])
        self.assertEqual(activate(x, Activation.RELU).tolist(), [0.0, 0.0, 3.0])
        self.assertEqual(activate(x, Activation.IDENTITY).tolist(), x.tolist())
        assert activate(np.array([0.0]), Activation.SIGMOID)[0] == 0.5
        assert np.all(activate(np.array([-800.0, 800.0]), Activation.SIGMOID) >= 0)

    def test_derivatives(self):
        x = np.array([-2.0, 0.0, 3.0])
        self.assertEqual(activation_derivative(x, Activation.RELU).tolist(), [0.0, 0.0, 1.0])
        self.assertEqual(activation_derivative(x, Activation.IDENTITY).tolist(), [1, 1, 1])
        epsilon = 1e-6
        y = np.linspace(-4, 4, 17)
        numeric = (
            activate(y + epsilon, Activation.SIGMOID) - activate(y - epsilon, Activation.SIGMOID)
        ) / (2 * epsilon)
        assert np.allclose(activation_derivative(y, Activation.SIGMOID), numeric, atol=1e-8)

    def test_as_activation(self):
        assert as_activation("relu") == Activation.RELU
        assert as_activation(Activation.SIGMOID) == Activation.SIGMOID
        with self.assertRaises(ValueError):
            as_activation("tanh")
