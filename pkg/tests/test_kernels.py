import numpy as np
import pytest

from radix import _kernels_py, integrals
from radix.integrals import _de_grid, _sinc_weights

compiled = pytest.importorskip("radix._kernels")


@pytest.mark.parametrize("level, depth", [(2, 1), (3, 2), (5, 4), (6, 6)])
def test_compiled_matches_fallback(level, depth):
    h = 2.0**-level
    _, _, jac = _de_grid(h, 5.0)
    rng = np.random.default_rng(level * 10 + depth)
    vals = np.ascontiguousarray(rng.normal(size=(depth, len(jac))) + 1j * rng.normal(size=(depth, len(jac))))
    args = (vals, np.ascontiguousarray(jac), _sinc_weights(len(jac)), h)
    a = _kernels_py.nested_layers(*args)
    b = compiled.nested_layers(*args)
    assert abs(a - b) <= 1e-10 * max(1.0, abs(a))


def test_dispatch_reports_compiled():
    assert integrals.KERNEL == "compiled"
