"""Uniform grids, quadrature, finite differences and the position/momentum transform."""
import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.integrate import simpson, trapezoid

from revival_dynamics.errors import (
    InvalidRangeError,
    LengthMismatchError,
    TooFewPointsError,
    WrongSpaceError,
)


class Space(enum.Enum):
    POSITION = "position"
    MOMENTUM = "momentum"


@dataclass(frozen=True)
class Grid1D:
    """
    Endpoint-inclusive uniform grid, point(i) = start + i * step.

    Args:
        start (float): First grid point.
        step (float): Spacing, strictly positive.
        count (int): Number of points, at least 2.
    """

    start: float
    step: float
    count: int

    def __post_init__(self):
        if not self.step > 0:
            raise InvalidRangeError("grid step must be positive, got {}".format(self.step))
        if self.count < 2:
            raise InvalidRangeError("grid needs at least 2 points, got {}".format(self.count))

    @property
    def end(self):
        return self.start + (self.count - 1) * self.step

    @property
    def points(self):
        return self.start + self.step * np.arange(self.count)

    def point(self, i):
        return self.start + i * self.step


@dataclass(frozen=True, eq=False)
class SampledField:
    """
    Complex amplitudes sampled on a grid.

    Momentum fields produced by `to_momentum` remember the position origin and the
    number of zeros appended before transforming, so `to_position` can undo them.
    """

    grid: Grid1D
    values: np.ndarray
    space: Space = Space.POSITION
    origin: float = 0.0
    padding: int = 0

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.shape != (self.grid.count,):
            raise LengthMismatchError(
                "field has {} values for a {}-point grid".format(values.size, self.grid.count)
            )
        object.__setattr__(self, "values", values)

    def density(self):
        return SampledDensity(self.grid, np.abs(self.values) ** 2)

    def norm(self):
        return float(integrate(np.abs(self.values) ** 2, self.grid))

    def mean(self):
        """First moment of |values|^2 over the grid coordinate."""
        return self.density().mean()


@dataclass(frozen=True, eq=False)
class SampledDensity:
    grid: Grid1D
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.grid.count,):
            raise LengthMismatchError(
                "density has {} values for a {}-point grid".format(values.size, self.grid.count)
            )
        object.__setattr__(self, "values", values)

    def total(self):
        return float(integrate(self.values, self.grid))

    def mean(self):
        return float(integrate(self.grid.points * self.values, self.grid) / self.total())

    def variance(self):
        mu = self.mean()
        return float(integrate((self.grid.points - mu) ** 2 * self.values, self.grid) / self.total())


def make_grid(start, end, count):
    """Build the endpoint-inclusive grid with `count` points on [start, end]."""
    if not end > start:
        raise InvalidRangeError("grid end {} must exceed start {}".format(end, start))
    if count < 2:
        raise InvalidRangeError("grid needs at least 2 points, got {}".format(count))
    return Grid1D(float(start), (end - start) / (count - 1), int(count))


def integrate(values, grid):
    """
    Composite quadrature on a uniform grid: Simpson for an odd number of points,
    trapezoid otherwise.

    Args:
        values (array): Real or complex integrand samples, one per grid point.
        grid (Grid1D): The grid the samples live on.

    :rtype:
        The integral, real or complex following the input.
    """
    values = np.asarray(values)
    if values.shape[-1] != grid.count:
        raise LengthMismatchError(
            "{} samples for a {}-point grid".format(values.shape[-1], grid.count)
        )
    if np.iscomplexobj(values):
        return _integrate_real(values.real, grid) + 1j * _integrate_real(values.imag, grid)
    return _integrate_real(values, grid)


def _integrate_real(values, grid):
    if grid.count % 2 == 1 and grid.count >= 3:
        return simpson(values, dx=grid.step, axis=-1)
    return trapezoid(values, dx=grid.step, axis=-1)


def central_derivative(values, grid):
    """Second-order central differences inside, second-order one-sided stencils at the ends."""
    values = np.asarray(values)
    if grid.count < 3:
        raise TooFewPointsError("central differences need at least 3 points")
    if values.shape[-1] != grid.count:
        raise LengthMismatchError(
            "{} samples for a {}-point grid".format(values.shape[-1], grid.count)
        )
    return np.gradient(values, grid.step, edge_order=2, axis=-1)


def next_power_of_two(n):
    return 1 << max(0, math.ceil(math.log2(n)))


def to_momentum(field, count: Optional[int] = None, hbar=1.0):
    """
    Unitary transform Phi(p) = (2 pi hbar)^(-1/2) int psi(x) exp(-i p x / hbar) dx.

    The samples are zero-padded at the far end to a power of two (at least `count`
    when given); padding more raises the momentum resolution. The momentum grid is
    fft-shifted into ascending order with p = 0 represented.

    Args:
        field (SampledField): Position-space amplitudes.
        count (int, optional): Minimum transform length.
        hbar (float): Reduced Planck constant of the unit system.

    :rtype:
        SampledField in momentum space.
    """
    if field.space is not Space.POSITION:
        raise WrongSpaceError("to_momentum expects a position-space field")
    n = next_power_of_two(max(field.grid.count, count or 0))
    padding = n - field.grid.count
    samples = np.concatenate([field.values, np.zeros(padding, dtype=complex)])

    dx = field.grid.step
    dp = 2 * np.pi * hbar / (n * dx)
    p_grid = Grid1D(-(n // 2) * dp, dp, n)
    p = p_grid.points

    spectrum = np.fft.fftshift(np.fft.fft(samples))
    phase = np.exp(-1j * p * field.grid.start / hbar)
    values = dx / np.sqrt(2 * np.pi * hbar) * phase * spectrum
    return SampledField(p_grid, values, Space.MOMENTUM, origin=field.grid.start, padding=padding)


def to_position(field, hbar=1.0):
    """Inverse of `to_momentum`; strips the recorded padding."""
    if field.space is not Space.MOMENTUM:
        raise WrongSpaceError("to_position expects a momentum-space field")
    n = field.grid.count
    dp = field.grid.step
    dx = 2 * np.pi * hbar / (n * dp)
    p = field.grid.points

    shifted = np.fft.ifftshift(field.values * np.exp(1j * p * field.origin / hbar))
    values = np.sqrt(2 * np.pi * hbar) / dx * np.fft.ifft(shifted)
    kept = n - field.padding
    return SampledField(Grid1D(field.origin, dx, kept), values[:kept], Space.POSITION)
