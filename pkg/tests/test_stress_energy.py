import math

import numpy as np
import pytest

from core.errors import ValidationError
from core.model import Grid1D, Quantity
from sources.stress_energy import (Architecture, ArrayConfig, GaussianPulse, InterferenceConfig,
                                   branch_envelope, eval_gaussian_t00, interference_t00, sample_array_t00,
                                   unit_centers)


def unit_pulse(**kwargs):
    defaults = {"epsilon": 1.0, "sigma": 1.0, "tau": 1.0}
    return GaussianPulse(**{**defaults, **kwargs})


def test_peak_value_is_minus_epsilon():
    assert eval_gaussian_t00(unit_pulse(), 0.0, 0.0) == -1.0


def test_one_width_off_center():
    assert eval_gaussian_t00(unit_pulse(), 1.0, 0.0) == pytest.approx(-math.exp(-0.5), rel=1e-15)
    assert eval_gaussian_t00(unit_pulse(), 1.0, 0.0) == pytest.approx(-0.60653, abs=1e-5)


def test_far_field_decays():
    assert abs(eval_gaussian_t00(unit_pulse(), 20.0, 20.0)) < 1e-80


def test_pulse_rejects_non_positive_widths():
    for bad in ({"epsilon": 0.0}, {"sigma": -0.1}, {"tau": 0.0}):
        with pytest.raises(ValidationError):
            unit_pulse(**bad)


def test_density_non_positive_and_symmetric(rng):
    x0, t0 = 0.3, -1.2
    pulse = unit_pulse(epsilon=2.5, x0=x0, t0=t0, sigma=0.7, tau=1.9)
    x = rng.uniform(-10, 10, 5000)
    t = rng.uniform(-10, 10, 5000)
    values = eval_gaussian_t00(pulse, x, t)
    assert np.all(values <= 0)
    mirrored = eval_gaussian_t00(pulse, 2 * x0 - x, 2 * t0 - t)
    np.testing.assert_allclose(values, mirrored, rtol=1e-12, atol=0)


def test_integrated_mass_matches_closed_form():
    sigma, tau, eps = 0.4, 1.3, 3.0
    pulse = unit_pulse(epsilon=eps, sigma=sigma, tau=tau)
    x = np.linspace(-8 * sigma, 8 * sigma, 1601)
    t = np.linspace(-8 * tau, 8 * tau, 1601)
    values = eval_gaussian_t00(pulse, x[None, :], t[:, None])
    # tails beyond 8 widths are below double precision
    mass = values.sum() * (x[1] - x[0]) * (t[1] - t[0])
    assert mass == pytest.approx(-eps * 2 * math.pi * sigma * tau, rel=1e-6)


def test_single_pair_peak(profile_grid):
    config = ArrayConfig(Architecture.SINGLE_PAIR, 7, 0.0, unit_pulse(sigma=0.1))
    assert config.n_units == 1
    field = sample_array_t00(config, profile_grid)
    assert field.quantity is Quantity.ENERGY_DENSITY
    assert field.values.min() == pytest.approx(-1.0, rel=1e-15)
    assert profile_grid.coordinates()[np.argmin(field.values)] == pytest.approx(0.0, abs=1e-12)


def test_synchronized_depth_is_five_term_sum(profile_grid):
    config = ArrayConfig("synchronized", 5, 0.02, unit_pulse(sigma=0.1))
    field = sample_array_t00(config, profile_grid)
    expected = -sum(math.exp(-(i * 0.02) ** 2 / (2 * 0.1 ** 2)) for i in range(-2, 3))
    assert field.values.min() == pytest.approx(expected, rel=1e-12)
    assert expected == pytest.approx(-4.8066, abs=1e-4)


def test_synchronized_centers_are_symmetric_for_even_counts():
    config = ArrayConfig("synchronized", 4, 0.1, unit_pulse(sigma=0.1))
    np.testing.assert_allclose(unit_centers(config), [-0.15, -0.05, 0.05, 0.15], atol=1e-15)


def test_synchronized_is_deeper_than_single(rng, profile_grid):
    for _ in range(50):
        sigma = rng.uniform(0.05, 0.1)
        spacing = rng.uniform(0.001, 0.06)
        n = int(rng.integers(2, 6))
        single = sample_array_t00(ArrayConfig("single", 1, 0.0, unit_pulse(sigma=sigma)), profile_grid)
        array = sample_array_t00(ArrayConfig("synchronized", n, spacing, unit_pulse(sigma=sigma)), profile_grid)
        assert array.values.min() < single.values.min()


def test_uncoordinated_is_seeded(profile_grid):
    config = ArrayConfig("uncoordinated", 5, 0.5, unit_pulse(sigma=0.1), seed=11)
    first = sample_array_t00(config, profile_grid)
    second = sample_array_t00(config, profile_grid)
    assert np.array_equal(first.values, second.values)
    other = sample_array_t00(ArrayConfig("uncoordinated", 5, 0.5, unit_pulse(sigma=0.1), seed=12), profile_grid)
    assert not np.array_equal(first.values, other.values)
    assert np.all(np.abs(unit_centers(config)) <= 0.25)


def test_array_is_linear_in_epsilon(profile_grid):
    base = sample_array_t00(ArrayConfig("synchronized", 5, 0.02, unit_pulse(epsilon=1e-11, sigma=0.1)), profile_grid)
    double = sample_array_t00(ArrayConfig("synchronized", 5, 0.02, unit_pulse(epsilon=2e-11, sigma=0.1)),
                              profile_grid)
    assert np.array_equal(double.values, 2 * base.values)


def test_array_rejects_non_covering_grid():
    config = ArrayConfig("synchronized", 5, 0.2, unit_pulse(sigma=0.1))
    with pytest.raises(ValidationError):
        sample_array_t00(config, Grid1D(-0.5, 0.5, 101))


def test_array_requires_spacing_for_many_units():
    with pytest.raises(ValidationError):
        ArrayConfig("synchronized", 3, 0.0, unit_pulse(sigma=0.1))


def test_interference_zero_coupling_is_vacuum():
    grid = Grid1D(-4.0, 4.0, 401)
    field = interference_t00(InterferenceConfig(0.0, -1.0, 1.0, 0.5), grid)
    assert np.all(field.values == 0)


@pytest.mark.parametrize("phase, more_negative", [(0.0, True), (math.pi, False)])
def test_interference_cross_term_sign(phase, more_negative):
    grid = Grid1D(-4.0, 4.0, 401)
    config = InterferenceConfig(1.0, -1.0, 1.0, 0.5, phase)
    field = interference_t00(config, grid)
    mid = np.argmin(np.abs(grid.coordinates()))
    x = grid.coordinates()[mid]
    branches = -(branch_envelope(x, -1.0, 0.5) + branch_envelope(x, 1.0, 0.5))
    if more_negative:
        assert field.values[mid] < branches
    else:
        assert field.values[mid] > branches


def test_interference_rejects_bad_config():
    with pytest.raises(ValidationError):
        InterferenceConfig(1.0, 0.5, 0.5)
    with pytest.raises(ValidationError):
        InterferenceConfig(-1.0, -0.5, 0.5)
    with pytest.raises(ValidationError):
        interference_t00(InterferenceConfig(1.0, -1.0, 1.0, 0.5), Grid1D(-2.0, 2.0, 101))
