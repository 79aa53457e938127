import numpy as np
import pytest

from revival_dynamics.errors import (
    InvalidRangeError,
    LengthMismatchError,
    TooFewPointsError,
    WrongSpaceError,
)
from revival_dynamics.numerics.grid import (
    SampledDensity,
    SampledField,
    Space,
    central_derivative,
    integrate,
    make_grid,
    next_power_of_two,
    to_momentum,
    to_position,
)
from revival_dynamics.packets import GaussianPacketSpec, momentum_gaussian, sample_gaussian


def test_make_grid_is_endpoint_inclusive():
    grid = make_grid(0.0, 1.0, 5)
    np.testing.assert_allclose(grid.points, [0.0, 0.25, 0.5, 0.75, 1.0])
    assert grid.end == pytest.approx(1.0)
    assert grid.point(2) == pytest.approx(0.5)


@pytest.mark.parametrize("start, end, count", [(1.0, 1.0, 5), (2.0, 1.0, 5), (0.0, 1.0, 1)])
def test_make_grid_rejects_bad_ranges(start, end, count):
    with pytest.raises(InvalidRangeError):
        make_grid(start, end, count)


def test_simpson_is_exact_for_cubics():
    grid = make_grid(0.0, 1.0, 101)
    assert integrate(grid.points ** 3 + grid.points ** 2, grid) == pytest.approx(0.25 + 1 / 3, abs=1e-12)


def test_even_count_falls_back_to_trapezoid():
    grid = make_grid(0.0, 1.0, 4)
    assert integrate(grid.points, grid) == pytest.approx(0.5, abs=1e-14)


def test_integrate_complex_and_stacked():
    grid = make_grid(0.0, np.pi, 2001)
    values = np.stack([np.exp(1j * grid.points), np.sin(grid.points)])
    result = integrate(values, grid)
    np.testing.assert_allclose(result, [2j, 2.0], atol=1e-10)


def test_integrate_length_mismatch():
    with pytest.raises(LengthMismatchError):
        integrate(np.ones(10), make_grid(0.0, 1.0, 11))


def test_central_derivative_exact_for_quadratics():
    grid = make_grid(-1.0, 2.0, 31)
    np.testing.assert_allclose(central_derivative(grid.points ** 2, grid), 2 * grid.points, atol=1e-12)


def test_central_derivative_needs_three_points():
    with pytest.raises(TooFewPointsError):
        central_derivative(np.ones(2), make_grid(0.0, 1.0, 2))


def test_next_power_of_two():
    assert [next_power_of_two(n) for n in (1, 2, 3, 16385)] == [1, 2, 4, 32768]


def test_field_length_is_checked():
    with pytest.raises(LengthMismatchError):
        SampledField(make_grid(0.0, 1.0, 5), np.zeros(4))


def test_density_moments():
    spec = GaussianPacketSpec(1.5, 0.8, 0.0)
    field = sample_gaussian(spec, make_grid(-15.0, 15.0, 6001))
    density = field.density()
    assert density.total() == pytest.approx(1.0, abs=1e-10)
    assert density.mean() == pytest.approx(1.5, abs=1e-10)
    assert density.variance() == pytest.approx(0.8 ** 2 / 2, abs=1e-8)


@pytest.mark.parametrize("hbar", [1.0, 0.5])
def test_to_momentum_matches_closed_form_gaussian(hbar):
    spec = GaussianPacketSpec(1.0, 1.0, 2.0)
    psi = sample_gaussian(spec, make_grid(-20.0, 20.0, 4097), hbar)
    phi = to_momentum(psi, hbar=hbar)
    assert phi.space is Space.MOMENTUM
    expected = momentum_gaussian(spec, phi.grid.points, hbar)
    np.testing.assert_allclose(phi.values, expected, atol=1e-8)


def test_momentum_grid_contains_zero_and_ascends():
    psi = SampledField(make_grid(0.0, 1.0, 100), np.ones(100))
    phi = to_momentum(psi)
    assert phi.grid.count == 128
    assert np.any(phi.grid.points == 0.0)
    assert np.all(np.diff(phi.grid.points) > 0)


def test_padding_refines_momentum_step():
    psi = sample_gaussian(GaussianPacketSpec(0.0, 1.0, 0.0), make_grid(-20.0, 20.0, 1025))
    coarse, fine = to_momentum(psi), to_momentum(psi, count=8192)
    assert fine.grid.step == pytest.approx(coarse.grid.step / 4)
    assert fine.padding == 8192 - 1025


def test_transform_round_trip_and_norm():
    spec = GaussianPacketSpec(-2.0, 1.3, -4.0)
    psi = sample_gaussian(spec, make_grid(-25.0, 25.0, 3001))
    phi = to_momentum(psi, count=8192)
    back = to_position(phi)
    assert back.grid.count == psi.grid.count
    assert back.grid.start == pytest.approx(psi.grid.start)
    np.testing.assert_allclose(back.values, psi.values, atol=1e-12)
    assert phi.norm() == pytest.approx(psi.norm(), abs=1e-8)


def test_transforms_check_their_input_space():
    psi = SampledField(make_grid(0.0, 1.0, 8), np.ones(8))
    with pytest.raises(WrongSpaceError):
        to_position(psi)
    with pytest.raises(WrongSpaceError):
        to_momentum(to_momentum(psi))


def test_density_rejects_wrong_length():
    with pytest.raises(LengthMismatchError):
        SampledDensity(make_grid(0.0, 1.0, 3), [1.0, 2.0])
