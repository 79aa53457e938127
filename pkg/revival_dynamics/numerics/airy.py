"""Airy function Ai, its derivative and the zeros of Ai on the negative axis."""
import functools
import math

import numpy as np
from loguru import logger
from scipy.optimize import brentq
from scipy.special import airy, airye

from revival_dynamics.errors import DomainError, LevelOutOfRangeError

MAX_NEWTON_ITER = 50
BRACKET_HALF_WIDTH = 0.5
ZERO_TOL = 1e-14


def _check_finite(x):
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise DomainError("Airy functions need finite arguments")
    return x


def _scalar_or_array(values):
    return float(values) if np.ndim(values) == 0 else values


def airy_ai(x):
    """Ai(x) for scalar or array x; underflows to 0 for large positive x."""
    ai, _, _, _ = airy(_check_finite(x))
    return _scalar_or_array(ai)


def airy_ai_prime(x):
    """Ai'(x) for scalar or array x."""
    _, aip, _, _ = airy(_check_finite(x))
    return _scalar_or_array(aip)


def airy_zero_seed(n):
    """Closed-form estimate z_n ~ [(3 pi / 2)(n - 1/4)]^(2/3) of the n-th zero of Ai(-z)."""
    if n < 1:
        raise LevelOutOfRangeError("Airy zeros are indexed from 1, got {}".format(n))
    return (1.5 * math.pi * (n - 0.25)) ** (2.0 / 3.0)


@functools.lru_cache(maxsize=None)
def airy_zero(n):
    """
    Positive z_n with Ai(-z_n) = 0.

    Newton iteration on Ai(-z) from the closed-form seed; if it wanders out of the
    bracket of half-width 0.5 around the seed or fails to settle within 50 steps,
    Brent's method on that bracket takes over.

    Args:
        n (int): Zero index, n >= 1.

    :rtype:
        z_n (float): The refined zero.
    """
    seed = airy_zero_seed(n)
    lower, upper = seed - BRACKET_HALF_WIDTH, seed + BRACKET_HALF_WIDTH

    z = seed
    for _ in range(MAX_NEWTON_ITER):
        ai, aip, _, _ = airy(-z)
        # d/dz Ai(-z) = -Ai'(-z)
        step = ai / -aip
        z -= step
        if not lower < z < upper:
            break
        if abs(step) < ZERO_TOL * max(1.0, z):
            return z

    logger.debug("Newton refinement of Airy zero {} fell back to bracketing", n)
    return brentq(lambda s: airy(-s)[0], *_sign_change_bracket(lower, upper, seed), xtol=1e-15)


def _sign_change_bracket(lower, upper, seed):
    # Zeros closer together than the bracket width: shrink towards the seed.
    width = seed - lower
    while width > 1e-6:
        a, b = seed - width, seed + width
        if airy(-a)[0] * airy(-b)[0] < 0:
            return a, b
        width /= 2
    raise LevelOutOfRangeError("no sign change of Ai around seed {}".format(seed))


@functools.lru_cache(maxsize=8)
def airy_zeros(count):
    """The first `count` zeros z_1 < ... < z_count as a read-only array."""
    zeros = np.array([airy_zero(n) for n in range(1, count + 1)])
    zeros.setflags(write=False)
    return zeros


def airy_ai_log_scaled(x):
    """
    (log_scale, mantissa) with Ai(x) = mantissa * exp(-log_scale), log_scale = (2/3) x^(3/2)
    for x > 0 and 0 otherwise, so products with large exponentials stay finite.
    """
    x = _check_finite(x)
    positive = x > 0
    # airye is complex (NaN for real input) on the oscillating side
    mantissa = np.where(
        positive, airye(np.where(positive, x, 1.0))[0], airy(np.where(positive, 0.0, x))[0]
    )
    log_scale = 2.0 / 3.0 * np.where(positive, x, 0.0) ** 1.5
    return _scalar_or_array(log_scale), _scalar_or_array(mantissa)
