import math

import numpy as np
import pytest

from isoyamabe.quadrature import GAUSS_WEIGHTS, KRONROD_NODES, KRONROD_WEIGHTS, QuadratureError, gauss_kronrod, tanh_sinh


def test_rule_weights_integrate_constants():
    assert KRONROD_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)
    assert GAUSS_WEIGHTS.sum() == pytest.approx(2.0, abs=1e-15)
    # Kronrod 15 is exact for degree 22
    assert np.sum(KRONROD_WEIGHTS * KRONROD_NODES**22) == pytest.approx(2 / 23, rel=1e-13)


def test_gauss_kronrod_batch():
    a = np.array([0.0, 0.0, 1.0])
    b = np.array([1.0, math.pi, 2.0])
    k = np.array([1.0, 2.0, 3.0])

    def f(x, rows):
        return np.exp(k[rows, None] * x)

    vals, errs = gauss_kronrod(f, a, b, rtol=1e-12)
    expected = (np.exp(k * b) - np.exp(k * a)) / k
    np.testing.assert_allclose(vals[0], expected, rtol=1e-12)
    assert np.all(errs[0] <= 1e-10 * np.abs(expected))


def test_gauss_kronrod_tuple_outputs():
    vals, _ = gauss_kronrod(lambda x, rows: (np.sin(x), np.cos(x)), 0.0, math.pi / 2)
    np.testing.assert_allclose(vals[:, 0], [1.0, 1.0], rtol=1e-12)


def test_gauss_kronrod_gives_up():
    with pytest.raises(QuadratureError):
        gauss_kronrod(lambda x, rows: 1 / np.sqrt(np.abs(x - 0.3)), 0.0, 1.0, rtol=1e-14, max_panels=16)


def test_tanh_sinh_endpoint_singularity():
    # int_0^1 1/sqrt(1-x) dx = 2; the distance to b is passed without cancellation
    val, err = tanh_sinh(lambda x, da, db: 1 / np.sqrt(db), 0.0, 1.0)
    assert val == pytest.approx(2.0, rel=1e-12)


def test_tanh_sinh_log_singularity():
    val, _ = tanh_sinh(lambda x, da, db: np.log(da), 0.0, 1.0)
    assert val == pytest.approx(-1.0, rel=1e-12)


def test_tanh_sinh_rejects_empty_interval():
    with pytest.raises(ValueError):
        tanh_sinh(lambda x, da, db: x, 1.0, 1.0)
