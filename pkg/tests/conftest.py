import math

import pytest

from revival_dynamics.evolution import SpectralPropagator
from revival_dynamics.numerics.grid import make_grid
from revival_dynamics.packets import (
    GaussianPacketSpec,
    bouncer_coefficients_analytic,
    well_coefficients_analytic,
)
from revival_dynamics.systems.bouncer import QuantumBouncer
from revival_dynamics.systems.well import InfiniteWell


@pytest.fixture(scope="session")
def well():
    return InfiniteWell()

@pytest.fixture(scope="session")
def bouncer():
    return QuantumBouncer(400)

@pytest.fixture(scope="session")
def well_spec():
    return GaussianPacketSpec(0.5, 1 / math.sqrt(200), 400 * math.pi)

@pytest.fixture(scope="session")
def bouncer_spec():
    return GaussianPacketSpec(100.0, 1.0, 0.0)

@pytest.fixture(scope="session")
def well_grid():
    return make_grid(0.0, 1.0, 16385)

@pytest.fixture(scope="session")
def well_momentum_grid():
    return make_grid(-1500.0, 1500.0, 30001)

@pytest.fixture(scope="session")
def bouncer_grid(bouncer):
    return make_grid(*bouncer.sampling_domain(400), 16385)

@pytest.fixture(scope="session")
def well_coeffs(well, well_spec):
    return well_coefficients_analytic(well, well_spec, 800).significant(1e-20)

@pytest.fixture(scope="session")
def bouncer_coeffs(bouncer, bouncer_spec):
    return bouncer_coefficients_analytic(bouncer, bouncer_spec, 400).significant(1e-20)

@pytest.fixture(scope="session")
def well_propagator(well, well_coeffs, well_grid):
    return SpectralPropagator(well, well_coeffs, well_grid, momentum_route="fft", momentum_count=2 ** 18)

@pytest.fixture(scope="session")
def well_window_propagator(well, well_coeffs, well_grid, well_momentum_grid):
    return SpectralPropagator(
        well, well_coeffs, well_grid, momentum_route="eigenstates", momentum_grid=well_momentum_grid
    )

@pytest.fixture(scope="session")
def bouncer_propagator(bouncer, bouncer_coeffs, bouncer_grid):
    return SpectralPropagator(
        bouncer, bouncer_coeffs, bouncer_grid, momentum_route="fft", momentum_count=131072
    )
