import math

import mpmath
import numpy as np
import pytest
from scipy.special import ai_zeros

from revival_dynamics.errors import DomainError, LevelOutOfRangeError
from revival_dynamics.numerics.airy import (
    airy_ai,
    airy_ai_log_scaled,
    airy_ai_prime,
    airy_zero,
    airy_zero_seed,
    airy_zeros,
)

AI_0 = 0.355028053887817239
AIP_0 = -0.258819403792806798


def maclaurin_ai(x, terms=60):
    """Ai(x) = Ai(0) f(x) + Ai'(0) g(x) from the power series of f and g."""
    f_term, g_term = 1.0, x
    f_sum, g_sum = f_term, g_term
    for k in range(1, terms):
        f_term *= x ** 3 / ((3 * k - 1) * (3 * k))
        g_term *= x ** 3 / ((3 * k) * (3 * k + 1))
        f_sum += f_term
        g_sum += g_term
    return AI_0 * f_sum + AIP_0 * g_sum


def test_values_at_origin():
    assert abs(airy_ai(0.0) - 0.355028053887817) < 1e-10
    assert abs(airy_ai_prime(0.0) - AIP_0) < 1e-12


@pytest.mark.parametrize("x", [-2.0, -0.7, 0.3, 1.1, 2.0])
def test_agrees_with_power_series(x):
    assert airy_ai(x) == pytest.approx(maclaurin_ai(x), abs=1e-12)


@pytest.mark.parametrize("x", [-40.0, -10.0, -2.5, 1.5, 5.0, 12.0])
def test_agrees_with_mpmath(x):
    with mpmath.workdps(30):
        expected = float(mpmath.airyai(x))
        expected_prime = float(mpmath.airyai(x, derivative=1))
    assert airy_ai(x) == pytest.approx(expected, rel=1e-9, abs=1e-13)
    assert airy_ai_prime(x) == pytest.approx(expected_prime, rel=1e-9, abs=1e-13)


def test_satisfies_the_airy_equation():
    x = np.linspace(-10.0, 5.0, 301)
    h = 1e-3
    second = (airy_ai(x + h) - 2 * airy_ai(x) + airy_ai(x - h)) / h ** 2
    np.testing.assert_allclose(second - x * airy_ai(x), 0.0, atol=1e-5)


def test_derivative_matches_a_central_difference():
    h = 1e-5
    slope = (airy_ai(1.0 + h) - airy_ai(1.0 - h)) / (2 * h)
    assert slope == pytest.approx(airy_ai_prime(1.0), abs=1e-8)


def test_array_input_keeps_shape():
    x = np.linspace(-5.0, 5.0, 11)
    assert airy_ai(x).shape == x.shape
    assert isinstance(airy_ai(1.0), float)


def test_large_positive_argument_underflows_to_zero():
    assert airy_ai(200.0) == 0.0


def test_non_finite_argument():
    with pytest.raises(DomainError):
        airy_ai(math.nan)
    with pytest.raises(DomainError):
        airy_ai_prime(np.array([0.0, math.inf]))


def test_first_zero():
    assert abs(airy_zero(1) - 2.338107410459767) < 1e-8
    assert airy_ai(-airy_zero(1)) == pytest.approx(0.0, abs=1e-15)


def test_first_zero_by_bisection():
    lower, upper = 2.0, 2.5
    for _ in range(60):
        middle = 0.5 * (lower + upper)
        if maclaurin_ai(-lower) * maclaurin_ai(-middle) <= 0:
            upper = middle
        else:
            lower = middle
    assert airy_zero(1) == pytest.approx(0.5 * (lower + upper), abs=1e-10)


@pytest.mark.parametrize("n", [1, 2, 7, 50, 212, 400])
def test_zeros_agree_with_mpmath(n):
    with mpmath.workdps(30):
        expected = -float(mpmath.airyaizero(n))
    assert airy_zero(n) == pytest.approx(expected, rel=1e-13)


def test_zeros_agree_with_scipy_table():
    expected, _, _, _ = ai_zeros(30)
    np.testing.assert_allclose(airy_zeros(30), -expected, rtol=1e-12)


def test_first_five_hundred_zeros():
    zeros = airy_zeros(500)
    assert np.all(np.diff(zeros) > 0)
    assert np.max(np.abs(airy_ai(-zeros))) < 1e-10


def test_zero_table_is_increasing_and_read_only():
    zeros = airy_zeros(400)
    assert np.all(np.diff(zeros) > 0)
    with pytest.raises(ValueError):
        zeros[0] = 0.0


@pytest.mark.parametrize("n, bound", [(1, 0.02), (2, 0.01), (10, 1e-3), (50, 1e-3), (400, 1e-3)])
def test_seed_is_close_to_the_zero(n, bound):
    assert abs(airy_zero_seed(n) - airy_zero(n)) < bound


def test_levels_start_at_one():
    with pytest.raises(LevelOutOfRangeError):
        airy_zero_seed(0)
    with pytest.raises(LevelOutOfRangeError):
        airy_zero(-3)


@pytest.mark.parametrize("x", [-3.0, 0.0, 2.0, 10.0])
def test_log_scaled_reconstructs_ai(x):
    log_scale, mantissa = airy_ai_log_scaled(x)
    assert mantissa * math.exp(-log_scale) == pytest.approx(airy_ai(x), rel=1e-12, abs=1e-300)


def test_log_scaled_stays_finite_far_out():
    log_scale, mantissa = airy_ai_log_scaled(np.array([500.0]))
    assert np.isfinite(log_scale[0]) and np.isfinite(mantissa[0])
    assert mantissa[0] > 0


def test_log_scaled_covers_both_sides_of_the_turning_point():
    x = 100.25 - airy_zeros(400)
    log_scale, mantissa = airy_ai_log_scaled(x)
    assert np.all(np.isfinite(mantissa))
    np.testing.assert_array_equal(log_scale[x <= 0], 0.0)
    np.testing.assert_allclose(mantissa[x <= 0], airy_ai(x[x <= 0]), rtol=1e-12, atol=1e-300)
