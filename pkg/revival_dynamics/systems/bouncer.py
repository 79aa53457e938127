"""
Quantum bouncer: V(z) = m g z above a hard floor at z = 0.

Everything is in the scaled variables z / l_g and E / (m g l_g), with
l_g = (hbar^2 / (2 g m^2))^(1/3), in which the eigenproblem reads -u'' + z u = E u.
"""
import functools
from dataclasses import dataclass

import numpy as np
from loguru import logger

from revival_dynamics.errors import InvalidRangeError, LevelOutOfRangeError
from revival_dynamics.numerics.airy import airy_ai, airy_ai_prime, airy_zero, airy_zeros
from revival_dynamics.numerics.grid import integrate, make_grid
from revival_dynamics.systems.base import Eigenbasis

# Ai decays super-exponentially past the turning point; this margin bounds truncation.
DOMAIN_MARGIN = 15.0
NORM_TOL = 1e-6
NORM_CHECK_POINTS = 32769


@dataclass(frozen=True)
class QuantumBouncer(Eigenbasis):
    """
    Bouncer levels 1..max_level with E_n = z_n, the n-th zero of Ai(-z).

    Args:
        max_level (int): Highest level the basis may use.
        hbar (float): Fixed to 1 by the scaled units.
    """

    max_level: int = 400
    hbar: float = 1.0

    def __post_init__(self):
        if self.max_level < 1:
            raise InvalidRangeError("the bouncer needs at least one level")
        if self.hbar != 1.0:
            raise InvalidRangeError("the bouncer works in scaled units with hbar = 1")

    def check_level(self, n):
        if not 1 <= n <= self.max_level:
            raise LevelOutOfRangeError("level {} outside 1..{}".format(n, self.max_level))

    def energy(self, n):
        self.check_level(n)
        return airy_zero(n)

    def energies(self, first_n, last_n):
        self.check_level(first_n)
        self.check_level(last_n)
        return np.array(airy_zeros(last_n)[first_n - 1:])

    def eigenfunction(self, n, x):
        return bouncer_eigenfunction(self, n, x)

    def sampling_domain(self, last_n=None):
        return 0.0, airy_zero(last_n or self.max_level) + DOMAIN_MARGIN

    def spectrum(self, last_n=None, first_n=1):
        return super().spectrum(last_n or self.max_level, first_n)


@functools.lru_cache(maxsize=None)
def bouncer_normalization(n):
    """
    1 / |Ai'(-z_n)|, checked against quadrature of Ai^2 on [0, z_n + 15].

    When the quadrature norm differs from 1 by more than 1e-6 the computed norm
    replaces the closed form.
    """
    z_n = airy_zero(n)
    factor = 1.0 / abs(airy_ai_prime(-z_n))
    grid = make_grid(0.0, z_n + DOMAIN_MARGIN, NORM_CHECK_POINTS)
    norm = integrate((factor * airy_ai(grid.points - z_n)) ** 2, grid)
    if abs(norm - 1.0) > NORM_TOL:
        logger.warning("bouncer level {} renormalized, quadrature norm {:.9f}", n, norm)
        factor /= np.sqrt(norm)
    return factor


def bouncer_eigenfunction(sys, n, z):
    """u_n(z) = Ai(z - z_n) / |Ai'(-z_n)| for z >= 0 and 0 below the floor."""
    sys.check_level(n)
    z = np.asarray(z, dtype=float)
    values = np.where(z >= 0, bouncer_normalization(n) * airy_ai(z - airy_zero(n)), 0.0)
    return float(values) if values.ndim == 0 else values
