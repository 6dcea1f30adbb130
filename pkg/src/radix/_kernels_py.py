"""Numpy fallback for the nested Sinc layer loop (same contract as the compiled kernel)."""

import numpy as np
from scipy.linalg import toeplitz


def nested_layers(vals, jac, sigma, h):
    depth, n = vals.shape
    weights = toeplitz(sigma[n - 1 :], sigma[n - 1 :: -1])
    inner = np.ones(n, dtype=complex)
    for layer in range(depth - 1, 0, -1):
        f = vals[layer] * jac * inner
        inner = h * (weights @ f.real + 1j * (weights @ f.imag))
    return h * np.sum(vals[0] * jac * inner)
