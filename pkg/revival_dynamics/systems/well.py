"""Infinite square well on [0, L]."""
from dataclasses import dataclass

import numpy as np

from revival_dynamics.errors import DomainError, InvalidRangeError, LevelOutOfRangeError
from revival_dynamics.systems.base import Eigenbasis

WALL_TOL = 1e-12


@dataclass(frozen=True)
class InfiniteWell(Eigenbasis):
    """
    Particle of mass m in a box of width L. The defaults are the scaled units 2m = hbar = L = 1.
    """

    length: float = 1.0
    mass: float = 0.5
    hbar: float = 1.0

    def __post_init__(self):
        if min(self.length, self.mass, self.hbar) <= 0:
            raise InvalidRangeError("well length, mass and hbar must all be positive")

    def energy(self, n):
        return well_energy(self, n)

    def energies(self, first_n, last_n):
        _check_level(first_n)
        n = np.arange(first_n, last_n + 1, dtype=float)
        return n ** 2 * (np.pi * self.hbar / self.length) ** 2 / (2 * self.mass)

    def eigenfunction(self, n, x):
        return well_eigenfunction(self, n, x)

    def momentum_eigenfunction(self, n, p):
        return well_momentum_eigenfunction(self, n, p)

    @property
    def has_momentum_eigenfunctions(self):
        return True

    def sampling_domain(self, last_n):
        return 0.0, self.length

    def level_momentum(self, n):
        return n * np.pi * self.hbar / self.length


def _check_level(n):
    if n < 1:
        raise LevelOutOfRangeError("well levels start at n = 1, got {}".format(n))


def well_energy(sys, n):
    """E_n = n^2 pi^2 hbar^2 / (2 m L^2)."""
    _check_level(n)
    return n ** 2 * (np.pi * sys.hbar / sys.length) ** 2 / (2 * sys.mass)


def well_eigenfunction(sys, n, x):
    """u_n(x) = sqrt(2/L) sin(n pi x / L) for 0 <= x <= L."""
    _check_level(n)
    x = np.asarray(x, dtype=float)
    tol = WALL_TOL * sys.length
    if np.any(x < -tol) or np.any(x > sys.length + tol):
        raise DomainError("well eigenfunctions live on [0, {}]".format(sys.length))
    values = np.sqrt(2.0 / sys.length) * np.sin(n * np.pi * x / sys.length)
    return float(values) if values.ndim == 0 else values


def well_momentum_eigenfunction(sys, n, p):
    """
    phi_n(p) = sqrt(hbar/(pi L)) p_n / (p^2 - p_n^2) [(-1)^n exp(-i p L / hbar) - 1].

    The phase sign follows the exp(-i p x / hbar) transform convention. Writing
    delta = p - s p_n with s the sign of the nearer pole, the bracket equals
    exp(-i delta L / hbar) - 1, so the quotient by delta is evaluated through sinc and
    the expression stays finite at p = +-p_n.
    """
    _check_level(n)
    p = np.asarray(p, dtype=float)
    p_n = sys.level_momentum(n)
    s = np.where(p >= 0, 1.0, -1.0)
    delta = p - s * p_n
    theta = delta * sys.length / sys.hbar
    # (exp(-i theta) - 1) / delta
    ratio = -1j * (sys.length / sys.hbar) * np.exp(-0.5j * theta) * np.sinc(theta / (2 * np.pi))
    values = np.sqrt(sys.hbar / (np.pi * sys.length)) * p_n * ratio / (p + s * p_n)
    return complex(values) if values.ndim == 0 else values
