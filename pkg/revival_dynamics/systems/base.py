import functools
from dataclasses import dataclass

import numpy as np

from revival_dynamics.errors import LevelOutOfRangeError


@dataclass(frozen=True)
class EnergySpectrum:
    """Energies E_n of consecutive levels starting at n = first_n."""

    levels: tuple
    first_n: int = 1

    def __post_init__(self):
        if np.any(np.diff(self.levels) <= 0):
            raise LevelOutOfRangeError("energy levels must be strictly increasing")

    def __len__(self):
        return len(self.levels)

    def energy(self, n):
        index = n - self.first_n
        if not 0 <= index < len(self.levels):
            raise LevelOutOfRangeError("level {} outside the stored spectrum".format(n))
        return self.levels[index]

    def as_array(self):
        return np.asarray(self.levels, dtype=float)


class Eigenbasis:
    """Spectrum and eigenfunctions of a bound one-dimensional system."""

    hbar = 1.0

    def energy(self, n):
        raise NotImplementedError("The function energy is not implemented!")

    def energies(self, first_n, last_n):
        return np.array([self.energy(n) for n in range(first_n, last_n + 1)])

    def eigenfunction(self, n, x):
        """
        Position eigenfunction u_n sampled at x.

        Args:
            n (int): Level, counted from 1.
            x (float or array): Positions.
        """
        raise NotImplementedError("The function eigenfunction is not implemented!")

    def momentum_eigenfunction(self, n, p):
        """Closed-form momentum eigenfunction phi_n(p), where the system has one."""
        raise NotImplementedError(
            "{} has no closed-form momentum eigenfunctions".format(type(self).__name__)
        )

    @property
    def has_momentum_eigenfunctions(self):
        return False

    def sampling_domain(self, last_n):
        """(start, end) of the position interval that holds levels up to last_n."""
        raise NotImplementedError("The function sampling_domain is not implemented!")

    def spectrum(self, last_n, first_n=1):
        return EnergySpectrum(tuple(self.energies(first_n, last_n)), first_n)


@functools.lru_cache(maxsize=4)
def eigenfunction_table(basis, first_n, last_n, grid):
    """Level x point table of u_n on `grid` for first_n <= n <= last_n, read-only."""
    table = np.stack([basis.eigenfunction(n, grid.points) for n in range(first_n, last_n + 1)])
    table.setflags(write=False)
    return table


@functools.lru_cache(maxsize=4)
def momentum_eigenfunction_table(basis, first_n, last_n, grid):
    """Level x point table of phi_n on a momentum grid, read-only."""
    table = np.stack(
        [basis.momentum_eigenfunction(n, grid.points) for n in range(first_n, last_n + 1)]
    )
    table.setflags(write=False)
    return table
