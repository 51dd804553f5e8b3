from dataclasses import dataclass
from enum import Enum

import numpy as np

from core.errors import ValidationError
from core.model import Grid1D, Quantity, ScalarField

# units must sit this many widths inside the grid to keep truncation negligible
COVERAGE_WIDTHS = 5.0


class Architecture(str, Enum):
    SINGLE_PAIR = "single"
    UNCOORDINATED = "uncoordinated"
    SYNCHRONIZED = "synchronized"


@dataclass(frozen=True)
class GaussianPulse:
    """
    Localized negative energy pulse. epsilon is the magnitude; the emitted density is -epsilon at the center.
    """

    epsilon: float
    x0: float = 0.0
    t0: float = 0.0
    sigma: float = 0.1
    tau: float = 1.0

    def __post_init__(self):
        for name in ("epsilon", "sigma", "tau"):
            if not getattr(self, name) > 0:
                raise ValidationError(f"pulse {name} must be > 0, got {getattr(self, name)}")

    def moved(self, x0: float = None, t0: float = None) -> "GaussianPulse":
        return GaussianPulse(self.epsilon, self.x0 if x0 is None else x0, self.t0 if t0 is None else t0,
                             self.sigma, self.tau)


@dataclass(frozen=True)
class ArrayConfig:
    architecture: Architecture
    n_units: int
    spacing: float
    unit_pulse: GaussianPulse
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "architecture", Architecture(self.architecture))
        if self.architecture is Architecture.SINGLE_PAIR:
            # a single pair is one unit regardless of what was requested
            object.__setattr__(self, "n_units", 1)
        if int(self.n_units) != self.n_units or self.n_units < 1:
            raise ValidationError(f"n_units must be an integer >= 1, got {self.n_units}")
        object.__setattr__(self, "n_units", int(self.n_units))
        if self.n_units > 1 and not self.spacing > 0:
            raise ValidationError(f"spacing must be > 0 for {self.n_units} units, got {self.spacing}")


@dataclass(frozen=True)
class InterferenceConfig:
    lambda_strength: float
    x_left: float
    x_right: float
    branch_width: float = 0.05
    rel_phase: float = 0.0

    def __post_init__(self):
        if not self.lambda_strength >= 0:
            raise ValidationError(f"lambda_strength must be >= 0, got {self.lambda_strength}")
        if not self.branch_width > 0:
            raise ValidationError(f"branch_width must be > 0, got {self.branch_width}")
        if self.x_left == self.x_right:
            raise ValidationError("branch locations x_left and x_right must differ")


def eval_gaussian_t00(pulse: GaussianPulse, x, t):
    """
    Energy density of a Gaussian pulse, -eps * exp(-(x-x0)^2/2sigma^2 - (t-t0)^2/2tau^2).
    Broadcasts over array inputs.
    """
    exponent = -(np.subtract(x, pulse.x0) ** 2) / (2 * pulse.sigma ** 2) \
        - np.subtract(t, pulse.t0) ** 2 / (2 * pulse.tau ** 2)
    return -pulse.epsilon * np.exp(exponent)


def unit_centers(config: ArrayConfig) -> np.ndarray:
    x0 = config.unit_pulse.x0
    n = config.n_units
    if config.architecture is Architecture.SINGLE_PAIR:
        return np.array([x0])
    if config.architecture is Architecture.SYNCHRONIZED:
        # symmetric about x0; even counts land on half-integer multiples of the spacing
        offsets = np.arange(n) - (n - 1) / 2
        return x0 + offsets * config.spacing
    rng = np.random.default_rng(config.seed)
    return x0 + rng.uniform(-config.spacing / 2, config.spacing / 2, size=n)


def sample_array_t00(config: ArrayConfig, grid: Grid1D, t: float = None) -> ScalarField:
    """
    Superpose the units of an array on a spatial grid at time t (default: the pulse center time).
    """
    pulse = config.unit_pulse
    t = pulse.t0 if t is None else t
    centers = unit_centers(config)
    reach = COVERAGE_WIDTHS * pulse.sigma
    if not grid.covers(centers.min() - reach, centers.max() + reach):
        raise ValidationError(f"grid [{grid.x_min}, {grid.x_max}] does not cover unit centers "
                              f"[{centers.min()}, {centers.max()}] +- {COVERAGE_WIDTHS} sigma")

    x = grid.coordinates()
    values = np.zeros_like(x)
    for center in centers:
        values += eval_gaussian_t00(pulse.moved(x0=center), x, t)
    return ScalarField(grid, values, Quantity.ENERGY_DENSITY)


def branch_envelope(x: np.ndarray, center: float, width: float) -> np.ndarray:
    """Unit-peak Gaussian standing in for a delta function at center."""
    return np.exp(-(x - center) ** 2 / (2 * width ** 2))


def interference_t00(config: InterferenceConfig, grid: Grid1D) -> ScalarField:
    """
    Two-branch energy profile -lambda*(gL + gR) plus the cross term -2*lambda*cos(dtheta)*sqrt(gL*gR).
    """
    reach = COVERAGE_WIDTHS * config.branch_width
    lower = min(config.x_left, config.x_right) - reach
    upper = max(config.x_left, config.x_right) + reach
    if not grid.covers(lower, upper):
        raise ValidationError(f"grid [{grid.x_min}, {grid.x_max}] does not cover branches [{lower}, {upper}]")

    x = grid.coordinates()
    g_left = branch_envelope(x, config.x_left, config.branch_width)
    g_right = branch_envelope(x, config.x_right, config.branch_width)
    cross = -2 * config.lambda_strength * np.cos(config.rel_phase) * np.sqrt(g_left * g_right)
    values = -config.lambda_strength * (g_left + g_right) + cross
    return ScalarField(grid, values, Quantity.ENERGY_DENSITY)
