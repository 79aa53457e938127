"""Fisher informations of position and momentum densities and the nonclassicality J_nc."""
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from loguru import logger

from revival_dynamics.errors import (
    InvalidRangeError,
    NotNormalizedError,
    NumericError,
    WrongSpaceError,
)
from revival_dynamics.numerics.grid import Space, central_derivative, integrate

DENSITY_FLOOR = 1e-12
NORM_TOL = 1e-4
TAIL_TOL = 1e-6
# Excluded probability above this is reported with the point.
EXCLUDED_MASS_WARN = 1e-8


@dataclass(frozen=True)
class FisherPair:
    """
    Position and momentum Fisher informations.

    Args:
        i_rho (float): Position Fisher information, 1 / length^2.
        i_gamma (float): Momentum Fisher information, 1 / momentum^2.
        excluded_rho (float): Probability on points dropped by the density floor.
        excluded_gamma (float): Same in momentum space.
    """

    i_rho: float
    i_gamma: float
    excluded_rho: float = 0.0
    excluded_gamma: float = 0.0

    def __post_init__(self):
        for value in (self.i_rho, self.i_gamma):
            if not (math.isfinite(value) and value >= 0):
                raise NumericError("Fisher informations must be finite and nonnegative")


@dataclass(frozen=True)
class NonclassicalityPoint:
    """J_nc at one time; `fisher` is None and j_nc NaN when the point failed."""

    t: float
    fisher: Optional[FisherPair]
    j_nc: float
    warnings: tuple = field(default=())


def _density_fisher(values, grid, floor):
    values = np.asarray(values, dtype=float)
    total = integrate(values, grid)
    if abs(total - 1.0) > NORM_TOL:
        raise NotNormalizedError("density integrates to {:.8f}, not 1".format(total))
    kept = values >= floor * values.max()
    slope = central_derivative(values, grid)
    # (rho')^2 / rho = 4 (d sqrt(rho)/dx)^2, exact for quadratic nodes
    integrand = np.zeros_like(values)
    integrand[kept] = slope[kept] ** 2 / values[kept]
    excluded = float(integrate(np.where(kept, 0.0, values), grid))
    return float(integrate(integrand, grid)), excluded


def fisher_from_density(density, floor=DENSITY_FLOOR):
    """
    I = 4 int (d sqrt(rho)/dx)^2 dx.

    Points where rho < floor * max(rho) are left out of the quadrature.

    Args:
        density (SampledDensity): Normalized to within 1e-4.
        floor (float): Relative density floor.

    :rtype:
        float
    """
    value, _ = _density_fisher(density.values, density.grid, floor)
    return value


def nonclassicality(pair, hbar=1.0):
    """J_nc = (hbar / 2) sqrt(I_rho I_gamma)."""
    if pair.i_rho < 0 or pair.i_gamma < 0:
        raise InvalidRangeError("Fisher informations must be nonnegative")
    return hbar / 2 * math.sqrt(pair.i_rho * pair.i_gamma)


def classical_momentum_field(psi, hbar=1.0, floor=DENSITY_FLOOR):
    """
    P_cl(x) = hbar d(arg psi)/dx.

    The phase difference across each stencil is taken as the angle of
    psi_{j+1} conj(psi_{j-1}), which is free of branch cuts and exact for a
    linear phase. Points below the density floor are masked.

    :rtype:
        numpy.ma.MaskedArray
    """
    if psi.space is not Space.POSITION:
        raise WrongSpaceError("classical momentum needs a position-space field")
    values = psi.values
    h = psi.grid.step
    slope = np.empty(values.size)
    slope[1:-1] = np.angle(values[2:] * np.conj(values[:-2])) / (2 * h)
    slope[0] = np.angle(values[1] * np.conj(values[0])) / h
    slope[-1] = np.angle(values[-1] * np.conj(values[-2])) / h
    rho = np.abs(values) ** 2
    return np.ma.masked_array(hbar * slope, mask=rho < floor * rho.max())


def mean_momentum(phi):
    """<P> from the momentum density."""
    if phi.space is not Space.MOMENTUM:
        raise WrongSpaceError("mean_momentum needs a momentum-space field")
    return phi.mean()


def mean_classical_momentum(psi, hbar=1.0, floor=DENSITY_FLOOR):
    """int rho P_cl dx over the unmasked points, per unit norm."""
    p_cl = classical_momentum_field(psi, hbar, floor).filled(0.0)
    rho = np.abs(psi.values) ** 2
    return float(integrate(rho * p_cl, psi.grid) / integrate(rho, psi.grid))


def _tail_warning(integrand):
    edge = max(abs(integrand[0]), abs(integrand[-1]))
    if edge > TAIL_TOL * np.abs(integrand).max():
        return "p^2 gamma has not decayed at the momentum grid edges ({:.3e})".format(edge)
    return None


def fisher_operator_route(psi, phi, hbar=1.0, floor=DENSITY_FLOOR):
    """
    I_rho = (4 / hbar^2) (<P^2> - <P_cl^2>).

    <P^2> comes from the momentum density, <P_cl^2> from the phase gradient of psi.

    Args:
        psi (SampledField): Normalized position amplitude.
        phi (SampledField): The matching momentum amplitude.
    """
    if phi.space is not Space.MOMENTUM:
        raise WrongSpaceError("fisher_operator_route needs the momentum amplitude")
    p = phi.grid.points
    integrand = p ** 2 * np.abs(phi.values) ** 2
    message = _tail_warning(integrand)
    if message:
        logger.warning(message)
    p_squared = integrate(integrand, phi.grid)
    p_cl = classical_momentum_field(psi, hbar, floor).filled(0.0)
    p_cl_squared = integrate(np.abs(psi.values) ** 2 * p_cl ** 2, psi.grid)
    return float(4 / hbar ** 2 * (p_squared - p_cl_squared))


def fisher_pair(psi, phi, floor=DENSITY_FLOOR):
    """Density-route Fisher informations of |psi|^2 and |phi|^2."""
    i_rho, excluded_rho = _density_fisher(np.abs(psi.values) ** 2, psi.grid, floor)
    i_gamma, excluded_gamma = _density_fisher(np.abs(phi.values) ** 2, phi.grid, floor)
    return FisherPair(i_rho, i_gamma, excluded_rho, excluded_gamma)


def nonclassicality_point(propagator, t, floor=DENSITY_FLOOR):
    """Evolve in both spaces and form J_nc; numeric failures become warnings on the point."""
    try:
        psi = propagator.position(t)
        phi = propagator.momentum(t, psi)
        pair = fisher_pair(psi, phi, floor)
    except NumericError as err:
        return NonclassicalityPoint(t, None, math.nan, ("t = {}: {}".format(t, err),))

    warnings = []
    for space, mass in (("position", pair.excluded_rho), ("momentum", pair.excluded_gamma)):
        if mass > EXCLUDED_MASS_WARN:
            warnings.append(
                "t = {}: density floor dropped {:.3e} of the {} density".format(t, mass, space)
            )
    return NonclassicalityPoint(t, pair, nonclassicality(pair, propagator.hbar), tuple(warnings))


def nonclassicality_series(propagator, times, floor=DENSITY_FLOOR):
    """J_nc at each of `times`, in order."""
    return [nonclassicality_point(propagator, float(t), floor) for t in times]
