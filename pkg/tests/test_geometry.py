import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, special

from isoyamabe.geometry import (
    SphereMetricSpec,
    euclidean_profile,
    gamma,
    gamma_half_integer,
    scale_profile_identity_check,
    sin_power_integral,
    sphere_profile,
    sphere_profile_peak,
    unit_ball_volume,
    unit_sphere_volume,
)


@pytest.mark.parametrize("x", [0.5, 1, 1.5, 2, 3.5, 5, 7.5, 11])
def test_gamma_half_integer_matches_scipy(x):
    assert gamma_half_integer(x) == pytest.approx(special.gamma(x), rel=1e-14)


@pytest.mark.parametrize("x", [0, -1, 0.25, 1.3])
def test_gamma_half_integer_rejects(x):
    with pytest.raises(ValueError):
        gamma_half_integer(x)


def test_low_dimensional_sphere_volumes():
    assert unit_sphere_volume(1) == pytest.approx(2 * math.pi, rel=1e-15)
    assert unit_sphere_volume(2) == pytest.approx(4 * math.pi, rel=1e-15)
    assert unit_sphere_volume(3) == pytest.approx(2 * math.pi**2, rel=1e-15)
    assert unit_sphere_volume(4) == pytest.approx(8 * math.pi**2 / 3, rel=1e-15)
    assert unit_ball_volume(3) == pytest.approx(4 * math.pi / 3, rel=1e-15)
    with pytest.raises(ValueError):
        unit_sphere_volume(0)


@pytest.mark.parametrize("n", range(1, 12))
def test_sphere_volume_general_formula(n):
    expected = 2 * math.pi ** ((n + 1) / 2) / special.gamma((n + 1) / 2)
    assert unit_sphere_volume(n) == pytest.approx(expected, rel=1e-13)


def test_isoperimetric_constants_closed_forms():
    assert gamma(4) == pytest.approx(2**1.75 * math.sqrt(math.pi), rel=1e-12)
    assert gamma(5) == pytest.approx((8 * math.pi**2 / 3) ** 0.2 * 5**0.8, rel=1e-12)
    # the unit disk: perimeter 2 pi, area pi
    assert gamma(2) == pytest.approx(2 * math.sqrt(math.pi), rel=1e-14)
    with pytest.raises(ValueError):
        gamma(1)


def test_euclidean_profile_of_the_line_is_two():
    assert np.all(euclidean_profile(1, [0.1, 5.0]) == 2.0)
    assert euclidean_profile(3, 4 * math.pi / 3) == pytest.approx(4 * math.pi)


@settings(max_examples=60, deadline=None)
@given(m=st.integers(0, 12), r=st.floats(1e-6, math.pi))
def test_sin_power_integral_matches_quad(m, r):
    expected, _ = integrate.quad(lambda s: math.sin(s) ** m, 0, r, epsabs=0, epsrel=1e-13)
    assert sin_power_integral(m, r) == pytest.approx(expected, rel=1e-11, abs=1e-300)


@pytest.mark.parametrize("m", [2, 5, 8])
def test_sin_power_integral_tiny_argument(m):
    # leading term r^(m+1)/(m+1) with relative correction -m r^2 / (6 (m+3)) (m+1)
    r = 1e-6
    expected = r ** (m + 1) / (m + 1) * (1 - m * (m + 1) * r**2 / (6 * (m + 3)))
    assert sin_power_integral(m, r) == pytest.approx(expected, rel=1e-12)


def test_sin_power_integral_vectorized_and_total():
    r = np.array([0.1, 1.0, math.pi / 2, 3.0, math.pi])
    out = sin_power_integral(6, r)
    assert out.shape == r.shape
    assert out[-1] == pytest.approx(5 * 3 * math.pi / (6 * 4 * 2), rel=1e-14)


def test_five_sphere_half_volume_profile():
    s = SphereMetricSpec(5, 1.0)
    assert s.total_volume == pytest.approx(math.pi**3, rel=1e-14)
    assert sphere_profile(s, math.pi**3 / 2) == pytest.approx(8 * math.pi**2 / 3, rel=1e-12)


@pytest.mark.parametrize("d,mu", [(4, 2 ** (2 / 3)), (5, 2.5), (5, 6.3), (10, 2 ** (2 / 9))])
def test_profile_symmetry(d, mu):
    s = SphereMetricSpec(d, mu)
    v = np.linspace(0.05, 0.95, 11) * s.total_volume
    np.testing.assert_allclose(sphere_profile(s, v), sphere_profile(s, s.total_volume - v), rtol=1e-10)


@settings(max_examples=40, deadline=None)
@given(d=st.integers(2, 10), mu=st.floats(0.2, 8.0), frac=st.floats(0.01, 0.99))
def test_scaling_identity(d, mu, frac):
    v = frac * unit_sphere_volume(d)
    assert scale_profile_identity_check(d, mu, v)


def test_peak_data():
    v, a = sphere_profile_peak(SphereMetricSpec(5, 6.3))
    assert v == pytest.approx(6.3**2.5 * math.pi**3 / 2, rel=1e-14)
    assert a == pytest.approx(6.3**2 * 8 * math.pi**2 / 3, rel=1e-14)
    # a neighbouring volume has smaller area
    assert sphere_profile(SphereMetricSpec(5, 6.3), 0.9 * v) < a


def test_small_volume_ratio_tends_to_gamma():
    s = SphereMetricSpec(5, 1.0)
    # the curvature correction is O(r^2); r is about 5e-4 here
    v = 1e-15
    assert sphere_profile(s, v) / v**0.8 == pytest.approx(gamma(5), rel=1e-6)


def test_profile_slope_matches_finite_difference():
    s = SphereMetricSpec(5, 2.5)
    v, h = 40.0, 1e-4
    fd = (sphere_profile(s, v + h) - sphere_profile(s, v - h)) / (2 * h)
    assert s.profile_slope(v) == pytest.approx(fd, rel=1e-6)


def test_volume_out_of_range():
    s = SphereMetricSpec(4, 1.0)
    for v in (0.0, -1.0, s.total_volume, 2 * s.total_volume):
        with pytest.raises(ValueError):
            sphere_profile(s, v)


def test_spec_validation():
    with pytest.raises(ValueError):
        SphereMetricSpec(1, 1.0)
    with pytest.raises(ValueError):
        SphereMetricSpec(3, 0.0)
