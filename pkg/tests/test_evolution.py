import math

import numpy as np
import pytest

from revival_dynamics.errors import InvalidRangeError, LengthMismatchError
from revival_dynamics.evolution import (
    SpectralPropagator,
    autocorrelation,
    classical_component,
    evolve_momentum,
    evolve_position,
    overlap_autocorrelation,
)
from revival_dynamics.numerics.grid import make_grid, to_momentum
from revival_dynamics.packets import GaussianPacketSpec, momentum_gaussian, sample_gaussian
from revival_dynamics.systems.well import well_momentum_eigenfunction

WELL_T_REV = 2 / math.pi
WELL_T_CL = 1 / (400 * math.pi)


def test_initial_field_is_the_packet(well_propagator, well_spec, well_grid):
    psi = well_propagator.position(0.0)
    np.testing.assert_allclose(psi.values, sample_gaussian(well_spec, well_grid).values, atol=1e-6)


def test_exact_revival(well_propagator):
    initial, revived = well_propagator.position(0.0), well_propagator.position(WELL_T_REV)
    assert np.max(np.abs(revived.values - initial.values)) < 1e-9


def test_mirror_revival(well_propagator):
    initial = well_propagator.position(0.0)
    mirrored = well_propagator.position(WELL_T_REV / 2)
    assert np.max(np.abs(np.abs(mirrored.values) - np.abs(initial.values[::-1]))) < 1e-6


@pytest.mark.parametrize("t", [0.0, 0.123, 0.5])
def test_norm_is_conserved(well_propagator, well_coeffs, t):
    assert well_propagator.position(t).norm() == pytest.approx(well_coeffs.captured_norm, abs=1e-8)
    assert well_propagator.momentum(t).norm() == pytest.approx(well_coeffs.captured_norm, abs=1e-6)


def test_bouncer_norm_is_conserved(bouncer_propagator, bouncer_coeffs):
    for t in (0.0, 37.0, 6366.0):
        psi = bouncer_propagator.position(t)
        assert psi.norm() == pytest.approx(bouncer_coeffs.captured_norm, abs=1e-6)
        assert bouncer_propagator.momentum(t, psi).norm() == pytest.approx(
            bouncer_coeffs.captured_norm, abs=1e-6
        )


def test_bouncer_initial_field_is_the_packet(bouncer_propagator, bouncer_spec, bouncer_grid):
    expected = sample_gaussian(bouncer_spec, bouncer_grid).values
    np.testing.assert_allclose(bouncer_propagator.position(0.0).values, expected, atol=1e-5)


def test_initial_momentum_is_the_closed_form_gaussian(well_propagator, well_spec):
    phi = well_propagator.momentum(0.0)
    expected = momentum_gaussian(well_spec, phi.grid.points)
    np.testing.assert_allclose(phi.values, expected, atol=1e-4)


def test_momentum_routes_agree(well, well_coeffs, well_grid):
    t = 0.1
    fft_route = to_momentum(evolve_position(well_coeffs, well, well_grid, t), count=2 ** 18)
    window = np.abs(fft_route.grid.points) < 1500
    p = fft_route.grid.points[window]
    phases = np.exp(-1j * well.energies(well_coeffs.first_n, well_coeffs.last_n) * t)
    eigenstate_route = sum(
        a * phase * well_momentum_eigenfunction(well, n, p)
        for a, phase, n in zip(well_coeffs.coefficients, phases, well_coeffs.levels)
    )
    np.testing.assert_allclose(fft_route.values[window], eigenstate_route, atol=1e-3)


def test_module_functions_match_the_propagator(well, well_coeffs, well_grid, well_momentum_grid,
                                               well_propagator, well_window_propagator):
    t = 0.0421
    np.testing.assert_allclose(
        evolve_position(well_coeffs, well, well_grid, t).values,
        well_propagator.position(t).values,
    )
    np.testing.assert_allclose(
        evolve_momentum(well_coeffs, well, t, momentum_grid=well_momentum_grid).values,
        well_window_propagator.momentum(t).values,
    )
    np.testing.assert_allclose(
        evolve_momentum(well_coeffs, well, t, position_grid=well_grid, count=2 ** 18).values,
        well_propagator.momentum(t).values,
    )
    fft_route = evolve_momentum(well_coeffs, well, t, position_grid=well_grid)
    assert fft_route.norm() == pytest.approx(1.0, abs=1e-6)
    with pytest.raises(InvalidRangeError):
        evolve_momentum(well_coeffs, well, t)


def test_eigenstate_route_needs_closed_form_eigenfunctions(bouncer, bouncer_coeffs, bouncer_grid):
    with pytest.raises(ValueError):
        SpectralPropagator(bouncer, bouncer_coeffs, bouncer_grid, "eigenstates", bouncer_grid)
    with pytest.raises(ValueError):
        SpectralPropagator(bouncer, bouncer_coeffs, bouncer_grid, "sideways")


def test_autocorrelation_at_zero_and_revival(well, well_coeffs):
    spectrum = well.spectrum(well_coeffs.last_n)
    assert autocorrelation(well_coeffs, spectrum, 0.0) == pytest.approx(1.0, abs=1e-8)
    assert autocorrelation(well_coeffs, spectrum, 0.0).real == pytest.approx(
        well_coeffs.captured_norm, abs=1e-14
    )
    assert abs(autocorrelation(well_coeffs, spectrum, WELL_T_REV)) == pytest.approx(
        well_coeffs.captured_norm, abs=1e-12
    )


def test_autocorrelation_accepts_arrays(well_propagator):
    times = np.linspace(0.0, 0.01, 7)
    values = well_propagator.autocorrelation(times)
    np.testing.assert_allclose(values, [well_propagator.autocorrelation(t) for t in times])
    assert np.all(np.abs(values) <= 1 + 1e-12)


def test_autocorrelation_needs_the_levels_in_the_spectrum(well, well_coeffs):
    with pytest.raises(LengthMismatchError):
        autocorrelation(well_coeffs, well.spectrum(10), 0.0)


@pytest.mark.parametrize("t", [WELL_T_CL / 3, 0.01, 0.2])
def test_autocorrelation_matches_grid_overlap(well_propagator, t):
    initial = well_propagator.position(0.0)
    overlap = overlap_autocorrelation(initial, well_propagator.position(t))
    assert abs(overlap) ** 2 == pytest.approx(abs(well_propagator.autocorrelation(t)) ** 2, abs=1e-6)


def test_overlap_needs_a_shared_grid(well_propagator):
    psi = well_propagator.position(0.0)
    other = sample_gaussian(GaussianPacketSpec(0.5, 0.1, 0.0), make_grid(0.0, 1.0, 101))
    with pytest.raises(LengthMismatchError):
        overlap_autocorrelation(psi, other)


def test_bouncer_revival_near_closed_form_time(bouncer_propagator):
    times = np.arange(6000.0, 19000.0, 0.05)
    weights = np.concatenate(
        [np.abs(bouncer_propagator.autocorrelation(chunk)) ** 2 for chunk in np.array_split(times, 50)]
    )
    peak = np.argmax(weights)
    assert times[peak] == pytest.approx(12732.4, rel=1e-2)
    assert weights[peak] > 0.7


def test_classical_component_is_periodic(well, well_coeffs, well_grid):
    base = classical_component(well_coeffs, well, well_grid, 0.3 * WELL_T_CL, WELL_T_CL)
    later = classical_component(well_coeffs, well, well_grid, 1.3 * WELL_T_CL, WELL_T_CL)
    np.testing.assert_allclose(later.values, base.values, atol=1e-10)
    start = classical_component(well_coeffs, well, well_grid, 0.0, WELL_T_CL)
    np.testing.assert_allclose(
        classical_component(well_coeffs, well, well_grid, WELL_T_CL, WELL_T_CL).values,
        start.values,
        atol=1e-10,
    )


def test_classical_component_follows_the_classical_orbit(well_propagator):
    ahead = well_propagator.classical(WELL_T_CL / 8, WELL_T_CL)
    assert ahead.mean() == pytest.approx(0.75, abs=5e-3)
    assert ahead.mean() == pytest.approx(well_propagator.position(WELL_T_CL / 8).mean(), abs=1e-3)
    # past the wall at x = 1 and on its way back
    reflected = well_propagator.classical(3 * WELL_T_CL / 8, WELL_T_CL)
    assert reflected.mean() == pytest.approx(0.75, abs=5e-3)


def test_classical_period_must_be_positive(well, well_coeffs, well_grid):
    with pytest.raises(InvalidRangeError):
        classical_component(well_coeffs, well, well_grid, 0.1, 0.0)
