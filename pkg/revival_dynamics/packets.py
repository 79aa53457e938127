"""Gaussian initial states and their expansion coefficients in an eigenbasis."""
from dataclasses import dataclass

import numpy as np
from loguru import logger

from revival_dynamics.errors import (
    GridTooNarrowError,
    InsufficientCaptureError,
    InvalidRangeError,
    LevelOutOfRangeError,
    NumericError,
    PacketTooWideError,
    UnsupportedPacketError,
)
from revival_dynamics.numerics.airy import airy_ai_log_scaled, airy_zeros
from revival_dynamics.numerics.grid import SampledField, Space, integrate, make_grid
from revival_dynamics.systems.base import eigenfunction_table
from revival_dynamics.systems.bouncer import bouncer_normalization

GRID_CAPTURE_TOL = 1e-6
PROJECTION_CAPTURE_TOL = 1e-4
NORM_SLACK = 1e-9
# Packets must sit this many widths away from any wall for the analytic routes.
WALL_CLEARANCE = 6.0


@dataclass(frozen=True)
class GaussianPacketSpec:
    """
    psi(x, 0) = (sigma hbar sqrt(pi))^(-1/2) exp(-(x - x0)^2 / (2 sigma^2 hbar^2))
                exp(i p0 (x - x0) / hbar)

    Args:
        center (float): x0 (well) or z0 (bouncer).
        width_sigma (float): sigma, positive.
        momentum (float): p0.
    """

    center: float
    width_sigma: float
    momentum: float = 0.0

    def __post_init__(self):
        if not self.width_sigma > 0:
            raise InvalidRangeError("packet width must be positive")

    def width(self, hbar):
        return self.width_sigma * hbar


@dataclass(frozen=True, eq=False)
class CoefficientSet:
    """Expansion coefficients a_n for n = first_n .. first_n + len - 1."""

    first_n: int
    coefficients: np.ndarray
    captured_norm: float

    def __post_init__(self):
        coefficients = np.asarray(self.coefficients, dtype=complex)
        if coefficients.ndim != 1 or coefficients.size == 0:
            raise LevelOutOfRangeError("a coefficient set needs at least one level")
        if not np.all(np.isfinite(coefficients)):
            raise NumericError("expansion coefficients must be finite")
        if not 0 < self.captured_norm <= 1 + NORM_SLACK:
            raise NumericError("captured norm {} outside (0, 1]".format(self.captured_norm))
        coefficients.setflags(write=False)
        object.__setattr__(self, "coefficients", coefficients)

    @classmethod
    def from_coefficients(cls, first_n, coefficients):
        coefficients = np.asarray(coefficients, dtype=complex)
        return cls(first_n, coefficients, float(np.sum(np.abs(coefficients) ** 2)))

    def __len__(self):
        return self.coefficients.size

    @property
    def last_n(self):
        return self.first_n + len(self) - 1

    @property
    def levels(self):
        return np.arange(self.first_n, self.last_n + 1)

    @property
    def weights(self):
        return np.abs(self.coefficients) ** 2

    def central_level(self):
        """n_bar: the level of largest weight, the lower one on ties."""
        return int(self.first_n + np.argmax(self.weights))

    def truncated(self, last_n):
        keep = max(1, min(len(self), last_n - self.first_n + 1))
        return CoefficientSet.from_coefficients(self.first_n, self.coefficients[:keep])

    def significant(self, rel=1e-20):
        """Drop leading and trailing levels whose weight is below rel * max weight."""
        kept = np.flatnonzero(self.weights >= rel * self.weights.max())
        lo, hi = kept[0], kept[-1] + 1
        return CoefficientSet.from_coefficients(self.first_n + lo, self.coefficients[lo:hi])

    def reconstruct(self, table):
        """sum_n a_n u_n on the grid of a level x point table matching these levels."""
        return self.coefficients @ table


def sample_gaussian(spec, grid, hbar=1.0):
    """
    The Gaussian packet sampled on `grid`.

    :rtype:
        SampledField in position space, normalized to within 1e-8 when the grid holds it.
    """
    b = spec.width(hbar)
    x = grid.points
    values = (
        (b * np.sqrt(np.pi)) ** -0.5
        * np.exp(-((x - spec.center) ** 2) / (2 * b ** 2))
        * np.exp(1j * spec.momentum * (x - spec.center) / hbar)
    )
    field = SampledField(grid, values, Space.POSITION)
    captured = field.norm()
    if captured < 1 - GRID_CAPTURE_TOL:
        raise GridTooNarrowError(
            "grid [{}, {}] holds only {:.8f} of the packet".format(grid.start, grid.end, captured)
        )
    return field


def momentum_gaussian(spec, p, hbar=1.0):
    """Closed-form momentum packet sqrt(sigma/sqrt(pi)) exp(-sigma^2 (p - p0)^2 / 2) exp(-i p x0 / hbar)."""
    p = np.asarray(p, dtype=float)
    sigma = spec.width_sigma
    return (
        np.sqrt(sigma / np.sqrt(np.pi))
        * np.exp(-(sigma ** 2) * (p - spec.momentum) ** 2 / 2)
        * np.exp(-1j * p * spec.center / hbar)
    )


def default_grid(basis, n_max, count):
    return make_grid(*basis.sampling_domain(n_max), count)


def project_numeric(basis, spec, n_max, grid=None, hbar=None, count=16385):
    """
    a_n = int u_n(x) psi(x, 0) dx by quadrature on the system's sampling domain.

    Args:
        basis (Eigenbasis): System to expand in.
        spec (GaussianPacketSpec): Initial packet.
        n_max (int): Highest level kept.
        grid (Grid1D, optional): Quadrature grid, the sampling domain by default.
        hbar (float, optional): Defaults to the basis' hbar.
        count (int): Points of the default grid.

    :rtype:
        CoefficientSet for levels 1..n_max.
    """
    if n_max < 1:
        raise LevelOutOfRangeError("n_max must be at least 1")
    hbar = basis.hbar if hbar is None else hbar
    grid = grid or default_grid(basis, n_max, count)
    psi = sample_gaussian(spec, grid, hbar)
    table = eigenfunction_table(basis, 1, n_max, grid)
    coefficients = integrate(table * psi.values, grid)
    captured = float(np.sum(np.abs(coefficients) ** 2))
    if captured < 1 - PROJECTION_CAPTURE_TOL:
        raise InsufficientCaptureError(
            "levels 1..{} capture only {:.6f} of the packet".format(n_max, captured)
        )
    return CoefficientSet(1, coefficients, captured)


def well_coefficients_analytic(sys, spec, n_max):
    """
    Closed-form well coefficients with the integral extended to the whole real axis,

        a_n = -i sqrt(b sqrt(pi) / L) [exp(i k x0) exp(-sigma^2 (p0 + p_n)^2 / 2)
                                       - exp(-i k x0) exp(-sigma^2 (p0 - p_n)^2 / 2)],

    with b = sigma hbar, k = n pi / L, p_n = hbar k. This is
    2 sqrt(b sqrt(pi)/L) exp(-b^2 (p0^2 + p_n^2) / (2 hbar^2)) sin(k (x0 + i b^2 p0 / hbar)),
    evaluated term by term so that neither factor overflows.
    """
    b = spec.width(sys.hbar)
    clearance = min(spec.center, sys.length - spec.center)
    if WALL_CLEARANCE * b >= clearance:
        raise PacketTooWideError(
            "packet of width {} too close to a wall (clearance {})".format(b, clearance)
        )
    n = np.arange(1, n_max + 1)
    k = n * np.pi / sys.length
    p_n = sys.hbar * k
    sigma = spec.width_sigma
    p0 = spec.momentum
    bracket = np.exp(1j * k * spec.center - sigma ** 2 * (p0 + p_n) ** 2 / 2) - np.exp(
        -1j * k * spec.center - sigma ** 2 * (p0 - p_n) ** 2 / 2
    )
    coefficients = -1j * np.sqrt(b * np.sqrt(np.pi) / sys.length) * bracket
    return CoefficientSet.from_coefficients(1, coefficients)


def bouncer_coefficients_analytic(sys, spec, n_max):
    """
    Closed-form bouncer coefficients for p0 = 0, lower limit extended to -infinity:

        C_n = N_n (2 / (pi s^2))^(1/4) sqrt(pi) s exp[(s^2/4)(z0 - z_n + s^4/24)]
              Ai(z0 - z_n + s^4/16),

    with N_n = 1/|Ai'(-z_n)| and s = sqrt(2) sigma hbar, the width that turns
    exp(-(z - z0)^2 / s^2) into the packet's exp(-(z - z0)^2 / (2 sigma^2 hbar^2)).
    """
    if spec.momentum != 0:
        raise UnsupportedPacketError("the analytic bouncer route needs p0 = 0; use project_numeric")
    b = spec.width(sys.hbar)
    if spec.center - WALL_CLEARANCE * b <= 0:
        raise PacketTooWideError("packet at z0 = {} overlaps the floor".format(spec.center))
    s = np.sqrt(2.0) * b
    z_n = np.asarray(airy_zeros(n_max))
    shift = spec.center - z_n
    log_scale, mantissa = airy_ai_log_scaled(shift + s ** 4 / 16)
    exponent = s ** 2 / 4 * (shift + s ** 4 / 24) - log_scale
    norms = np.array([bouncer_normalization(n) for n in range(1, n_max + 1)])
    coefficients = (
        norms * (2 / (np.pi * s ** 2)) ** 0.25 * np.sqrt(np.pi) * s * np.exp(exponent) * mantissa
    )
    return CoefficientSet.from_coefficients(1, coefficients)


def expand_packet(basis, spec, n_max, capture_target=1 - 1e-10, method="numeric", grid=None):
    """
    Coefficients truncated at the first level where the captured norm reaches
    `capture_target`, never beyond n_max.

    Args:
        method (str): "numeric" (quadrature) or "analytic" (closed form for the system).
    """
    if method == "numeric":
        full = project_numeric(basis, spec, n_max, grid=grid)
    elif method == "analytic":
        if basis.has_momentum_eigenfunctions:
            full = well_coefficients_analytic(basis, spec, n_max)
        else:
            try:
                full = bouncer_coefficients_analytic(basis, spec, n_max)
            except UnsupportedPacketError as err:
                logger.warning("{}: projecting numerically instead", err)
                full = project_numeric(basis, spec, n_max, grid=grid)
    else:
        raise ValueError("Coefficient method {} is not supported!".format(method))

    cumulative = np.cumsum(full.weights)
    reached = np.flatnonzero(cumulative >= capture_target)
    if reached.size == 0:
        logger.warning(
            "capture target {} not reached with {} levels (captured {:.10f})",
            capture_target,
            n_max,
            full.captured_norm,
        )
        return full
    coefficients = full.truncated(int(reached[0]) + 1)
    logger.info(
        "basis truncated at n = {} capturing {:.12f}", coefficients.last_n, coefficients.captured_norm
    )
    return coefficients
