"""
Exact spectral time evolution of an expanded state.

psi(x, t) = sum_n a_n u_n(x) exp(-i E_n t / hbar); every time point is an
independent phase multiplication on the coefficients.
"""
import numpy as np

from revival_dynamics.errors import InvalidRangeError, LengthMismatchError
from revival_dynamics.numerics.grid import (
    SampledField,
    Space,
    integrate,
    to_momentum,
)
from revival_dynamics.systems.base import eigenfunction_table, momentum_eigenfunction_table

MOMENTUM_ROUTES = ("eigenstates", "fft")


def _phases(energies, t, hbar):
    """exp(-i E_n t / hbar) for scalar t (1-d) or an array of times (times x levels)."""
    t = np.asarray(t, dtype=float)
    return np.exp(-1j * np.multiply.outer(t, energies) / hbar)


def _level_energies(spectrum, coeffs):
    start = coeffs.first_n - spectrum.first_n
    if start < 0 or start + len(coeffs) > len(spectrum):
        raise LengthMismatchError(
            "levels {}..{} not covered by the spectrum".format(coeffs.first_n, coeffs.last_n)
        )
    return spectrum.as_array()[start:start + len(coeffs)]


class SpectralPropagator:
    """
    Coefficients, energies and the eigenfunction tables of one scenario.

    Args:
        basis (Eigenbasis): The system.
        coeffs (CoefficientSet): Expansion of the initial state.
        position_grid (Grid1D): Grid the position tables are built on.
        momentum_route (str): "eigenstates" sums a_n phi_n(p) on `momentum_grid`;
            "fft" transforms the evolved position field.
        momentum_grid (Grid1D, optional): Needed by the eigenstate route.
        momentum_count (int, optional): Minimum transform length of the fft route.
    """

    def __init__(
        self,
        basis,
        coeffs,
        position_grid,
        momentum_route="fft",
        momentum_grid=None,
        momentum_count=None,
    ):
        if momentum_route not in MOMENTUM_ROUTES:
            raise ValueError("Momentum route {} is not supported!".format(momentum_route))
        if momentum_route == "eigenstates":
            if not basis.has_momentum_eigenfunctions:
                raise ValueError(
                    "Momentum route eigenstates is not supported for {}!".format(
                        type(basis).__name__
                    )
                )
            if momentum_grid is None:
                raise InvalidRangeError("the eigenstate momentum route needs a momentum grid")

        self.basis = basis
        self.coeffs = coeffs
        self.hbar = basis.hbar
        self.energies = basis.energies(coeffs.first_n, coeffs.last_n)
        self.position_grid = position_grid
        self.momentum_route = momentum_route
        self.momentum_grid = momentum_grid
        self.momentum_count = momentum_count

        self.position_table = eigenfunction_table(basis, coeffs.first_n, coeffs.last_n, position_grid)
        self.momentum_table = None
        if momentum_route == "eigenstates":
            self.momentum_table = momentum_eigenfunction_table(
                basis, coeffs.first_n, coeffs.last_n, momentum_grid
            )

    def evolved_coefficients(self, t):
        return self.coeffs.coefficients * _phases(self.energies, t, self.hbar)

    def position(self, t):
        values = self.evolved_coefficients(t) @ self.position_table
        return SampledField(self.position_grid, values, Space.POSITION)

    def momentum(self, t, psi=None):
        """Phi(p, t); `psi` reuses an already evolved position field on the fft route."""
        if self.momentum_route == "eigenstates":
            values = self.evolved_coefficients(t) @ self.momentum_table
            return SampledField(self.momentum_grid, values, Space.MOMENTUM)
        psi = psi if psi is not None else self.position(t)
        return to_momentum(psi, self.momentum_count, self.hbar)

    def autocorrelation(self, t):
        return _autocorrelation(self.coeffs, self.energies, t, self.hbar)

    def classical(self, t, t_classical):
        return classical_component(self.coeffs, self.basis, self.position_grid, t, t_classical)


def evolve_position(coeffs, basis, grid, t):
    """
    Sampled superposition at time t.

    :rtype:
        SampledField whose norm is the captured norm of `coeffs` at every t.
    """
    table = eigenfunction_table(basis, coeffs.first_n, coeffs.last_n, grid)
    energies = basis.energies(coeffs.first_n, coeffs.last_n)
    values = (coeffs.coefficients * _phases(energies, t, basis.hbar)) @ table
    return SampledField(grid, values, Space.POSITION)


def evolve_momentum(coeffs, basis, t, momentum_grid=None, position_grid=None, count=None):
    """
    Momentum amplitude Phi(p, t).

    With `momentum_grid` the closed-form momentum eigenfunctions are summed
    directly; otherwise the position field on `position_grid` is transformed.
    """
    if momentum_grid is not None:
        table = momentum_eigenfunction_table(basis, coeffs.first_n, coeffs.last_n, momentum_grid)
        energies = basis.energies(coeffs.first_n, coeffs.last_n)
        values = (coeffs.coefficients * _phases(energies, t, basis.hbar)) @ table
        return SampledField(momentum_grid, values, Space.MOMENTUM)
    if position_grid is None:
        raise InvalidRangeError("evolve_momentum needs a momentum grid or a position grid")
    return to_momentum(evolve_position(coeffs, basis, position_grid, t), count, basis.hbar)


def _autocorrelation(coeffs, energies, t, hbar):
    values = _phases(energies, t, hbar) @ coeffs.weights
    return complex(values) if np.ndim(values) == 0 else values


def autocorrelation(coeffs, spectrum, t, hbar=1.0):
    """
    A(t) = <psi(0)|psi(t)> = sum_n |a_n|^2 exp(-i E_n t / hbar).

    Args:
        coeffs (CoefficientSet): Expansion of the state.
        spectrum (EnergySpectrum): Energies covering the coefficient levels.
        t (float or array): Time or ascending times.
        hbar (float): Reduced Planck constant.

    :rtype:
        complex for scalar t, complex array otherwise.
    """
    return _autocorrelation(coeffs, _level_energies(spectrum, coeffs), t, hbar)


def classical_component(coeffs, basis, grid, t, t_classical):
    """psi_cl(x, t) = sum_n a_n u_n(x) exp(-2 pi i n t / T_cl), periodic in T_cl."""
    if not t_classical > 0:
        raise InvalidRangeError("classical period must be positive, got {}".format(t_classical))
    table = eigenfunction_table(basis, coeffs.first_n, coeffs.last_n, grid)
    # Only the fractional part of t / T_cl matters.
    cycles = np.mod(t / t_classical, 1.0)
    phases = np.exp(-2j * np.pi * coeffs.levels * cycles)
    return SampledField(grid, (coeffs.coefficients * phases) @ table, Space.POSITION)


def overlap_autocorrelation(initial, evolved):
    """<initial|evolved> by quadrature on the shared grid."""
    if initial.grid != evolved.grid:
        raise LengthMismatchError("overlap needs both fields on the same grid")
    return complex(integrate(np.conj(initial.values) * evolved.values, initial.grid))
