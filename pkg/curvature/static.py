import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np

from core.errors import ValidationError
from core.model import GridST, PhysicalConstants, Quantity, ScalarField, UnitMode


class SignConvention(str, Enum):
    """
    DIP_NEGATIVE maps negative energy to a negative curvature dip (the plotted convention).
    LITERAL_EQ_NINE applies dR = -8 pi G T00 literally, which turns negative energy into positive curvature.
    """

    DIP_NEGATIVE = "dip_negative"
    LITERAL_EQ_NINE = "literal_eq_nine"

    @property
    def source_factor(self) -> float:
        """Factor s in dR = s * 8 pi G * T00."""
        return 1.0 if self is SignConvention.DIP_NEGATIVE else -1.0

    @property
    def dip_factor(self) -> float:
        """Sign given to curvature formulas written in terms of a positive magnitude."""
        return -self.source_factor


@dataclass(frozen=True)
class GatedPulseSpec:
    n_units: int
    delta_r0: float
    t0: float
    sigma_t: float

    def __post_init__(self):
        if not self.n_units >= 1:
            raise ValidationError(f"n_units must be >= 1, got {self.n_units}")
        if not self.delta_r0 > 0:
            raise ValidationError(f"delta_r0 must be > 0, got {self.delta_r0}")
        if not self.sigma_t > 0:
            raise ValidationError(f"sigma_t must be > 0, got {self.sigma_t}")


def einstein_factor(constants: PhysicalConstants, sign: SignConvention, calibration: float = 1.0) -> float:
    return SignConvention(sign).source_factor * 8 * np.pi * constants.G * calibration


def static_curvature(t00: ScalarField, constants: PhysicalConstants = PhysicalConstants(),
                     sign: SignConvention = SignConvention.DIP_NEGATIVE, calibration: float = 1.0) -> ScalarField:
    """
    Weak-field static response dR = s * 8 pi G * T00, pointwise.

    calibration multiplies the result; 1.0 is the formula-literal map. Note that 8 pi G eps in SI
    gives ~1.7e-20 1/m^2 for eps = 1e-11 J/m^3; pass calibration to rescale to a target amplitude.
    """
    if t00.quantity is not Quantity.ENERGY_DENSITY:
        raise ValidationError(f"static_curvature expects an energy density field, got {t00.quantity.value}")
    factor = einstein_factor(constants, sign, calibration)
    return t00.scaled(factor, Quantity.CURVATURE)


def gated_pulse(spec: GatedPulseSpec, t, sign: SignConvention = SignConvention.DIP_NEGATIVE):
    """Time-gated curvature pulse N * dR0 * exp(-(t-t0)^2 / 2 sigma^2), negative under DIP_NEGATIVE."""
    magnitude = spec.n_units * spec.delta_r0 * np.exp(-np.subtract(t, spec.t0) ** 2 / (2 * spec.sigma_t ** 2))
    return SignConvention(sign).dip_factor * magnitude


def qix_analytic(epsilon: float, v: float, sigma: float, grid: GridST,
                 constants: PhysicalConstants = PhysicalConstants()) -> ScalarField:
    """
    Traveling curvature dip -eps * exp(-(x - v t)^2 / 2 sigma^2) sampled on a space-time grid.

    In SI units |v| must not exceed c. In natural units any speed is accepted and a pattern
    faster than light is flagged instead.
    """
    if not sigma > 0:
        raise ValidationError(f"sigma must be > 0, got {sigma}")
    flags = ()
    if abs(v) > constants.c:
        if constants.unit_mode is UnitMode.SI:
            raise ValidationError(f"pattern speed |v| = {abs(v)} exceeds c = {constants.c}")
        warnings.warn(f"pattern speed {v} exceeds c = {constants.c}")
        flags = ("superluminal_pattern",)

    times, xs = grid.mesh()
    values = -epsilon * np.exp(-(xs - v * times) ** 2 / (2 * sigma ** 2))
    return ScalarField(grid, values, Quantity.CURVATURE, flags)
