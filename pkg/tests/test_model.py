import numpy as np
import pytest

from core.errors import ValidationError
from core.model import (C_SI, G_SI, Grid1D, GridST, PhysicalConstants, Quantity, ScalarField, UnitMode,
                        make_grid_st)


def test_si_constants_are_codata():
    constants = PhysicalConstants.si()
    assert constants.G == G_SI == 6.67430e-11
    assert constants.c == C_SI == 299792458.0
    assert constants.unit_mode is UnitMode.SI


def test_natural_constants_pin_g_and_c():
    constants = PhysicalConstants.for_mode("natural")
    assert (constants.G, constants.c) == (1.0, 1.0)
    with pytest.raises(ValidationError):
        PhysicalConstants(G=2.0, c=1.0, unit_mode=UnitMode.NATURAL)


def test_constants_must_be_positive():
    with pytest.raises(ValidationError):
        PhysicalConstants(G=0.0)
    with pytest.raises(ValidationError):
        PhysicalConstants(c=-1.0)


def test_grid_spacing_and_coordinates():
    grid = Grid1D(-1.0, 1.0, 2001)
    assert grid.spacing == pytest.approx(1e-3)
    x = grid.coordinates()
    assert x[0] == -1.0 and x[-1] == 1.0 and len(x) == 2001
    assert grid.covers(-0.5, 0.5)
    assert not grid.covers(-1.5, 0.5)


@pytest.mark.parametrize("args", [(0.0, 1.0, 1), (1.0, 1.0, 10), (1.0, 0.0, 10), (0.0, 1.0, 2.5)])
def test_grid_rejects_bad_axes(args):
    with pytest.raises(ValidationError):
        Grid1D(*args)


def test_space_time_grid_shape_and_mesh():
    grid = make_grid_st(Grid1D(0.0, 1.0, 11), 0.0, 2.0, 5)
    assert grid.shape == (5, 11)
    assert grid.n_points == 55
    assert grid.time_spacing == pytest.approx(0.5)
    times, xs = grid.mesh()
    assert times.shape == xs.shape == (5, 11)
    assert np.all(times[:, 0] == grid.times())
    assert np.all(xs[0] == grid.coordinates())


def test_space_time_grid_rejects_reversed_time():
    with pytest.raises(ValidationError):
        GridST(Grid1D(0.0, 1.0, 3), 1.0, 0.0, 4)


def test_scalar_field_is_read_only_and_tagged():
    grid = Grid1D(0.0, 1.0, 3)
    field = ScalarField(grid, [1.0, 2.0, 3.0], "curvature")
    assert field.quantity is Quantity.CURVATURE
    assert field.quantity.unit == "1/m^2"
    with pytest.raises(ValueError):
        field.values[0] = 5.0
    assert not field.is_spacetime


def test_scalar_field_rejects_shape_mismatch_and_non_finite():
    grid = Grid1D(0.0, 1.0, 3)
    with pytest.raises(ValidationError):
        ScalarField(grid, [1.0, 2.0], Quantity.CURVATURE)
    with pytest.raises(ValidationError):
        ScalarField(grid, [1.0, np.nan, 2.0], Quantity.CURVATURE)


def test_scaled_keeps_flags():
    grid = Grid1D(0.0, 1.0, 3)
    field = ScalarField(grid, [1.0, 2.0, 3.0], Quantity.ENERGY_DENSITY, ("marker",))
    doubled = field.scaled(2.0, Quantity.CURVATURE)
    assert np.all(doubled.values == [2.0, 4.0, 6.0])
    assert doubled.flags == ("marker",)
    assert doubled.quantity is Quantity.CURVATURE
