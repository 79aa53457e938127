"""Classical period and revival time from the spectrum around the central level."""
from dataclasses import dataclass

import numpy as np

from revival_dynamics.errors import InvalidRangeError, LevelOutOfRangeError


@dataclass(frozen=True)
class TimeScales:
    t_classical: float
    t_revival: float
    n_bar: int


def spectrum_timescales(spectrum, n_bar, hbar=1.0):
    """
    Second-order Taylor time scales of the spectrum around n_bar,

        E_n ~ E_nbar + E'(nbar)(n - nbar) + E''(nbar)/2 (n - nbar)^2,

    with T_cl = 2 pi hbar / |E'| and T_rev = 2 pi hbar / (|E''| / 2). Derivatives are
    central differences on the integer index, exact for a quadratic spectrum.

    Args:
        spectrum (EnergySpectrum): Levels around n_bar.
        n_bar (int): Central level; both neighbours must be stored.
        hbar (float): Reduced Planck constant.

    :rtype:
        TimeScales
    """
    index = n_bar - spectrum.first_n
    if not 1 <= index <= len(spectrum) - 2:
        raise LevelOutOfRangeError(
            "n_bar = {} needs both neighbours inside the spectrum".format(n_bar)
        )
    below, centre, above = spectrum.levels[index - 1:index + 2]
    first = (above - below) / 2
    second = above - 2 * centre + below
    return TimeScales(
        t_classical=2 * np.pi * hbar / abs(first),
        t_revival=2 * np.pi * hbar / (abs(second) / 2),
        n_bar=n_bar,
    )


def bouncer_closed_form_timescales(z0, n_bar=0):
    """T_cl = 2 sqrt(z0) and T_rev = 4 z0^2 / pi in scaled bouncer units."""
    if not z0 > 0:
        raise InvalidRangeError("bouncer height z0 must be positive, got {}".format(z0))
    return TimeScales(2 * np.sqrt(z0), 4 * z0 ** 2 / np.pi, n_bar)


def well_closed_form_timescales(sys, n_bar):
    """T_cl = 2 m L^2 / (hbar pi n_bar) and T_rev = 4 m L^2 / (hbar pi)."""
    if n_bar < 1:
        raise LevelOutOfRangeError("n_bar must be at least 1")
    scale = sys.mass * sys.length ** 2 / (sys.hbar * np.pi)
    return TimeScales(2 * scale / n_bar, 4 * scale, n_bar)
