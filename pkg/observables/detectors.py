"""
Detector observables driven by a curvature amplitude dR (1/m^2).

Every formula is implemented literally. Several are not dimensionally consistent
(dR * L^2 is a pure number but is used as a length, and the clock drift carries an extra
time factor); the notes on each function say where.
"""
from dataclasses import dataclass

import numpy as np

from core.errors import ValidationError
from core.model import PhysicalConstants


@dataclass(frozen=True)
class InterferometerSpec:
    arm_length: float = 1.0
    wavelength: float = 1e-6
    baseline: float = 1.0

    def __post_init__(self):
        for name in ("arm_length", "wavelength", "baseline"):
            if not getattr(self, name) > 0:
                raise ValidationError(f"interferometer {name} must be > 0, got {getattr(self, name)}")


@dataclass(frozen=True)
class ClockSpec:
    """
    :param extent: spatial extent L over which curvature is significant (m)
    :param duration: pulse duration (s)
    :param stability: fractional frequency floor of the clock
    """

    extent: float = 1e-3
    duration: float = 1e-3
    stability: float = 1e-18

    def __post_init__(self):
        for name in ("extent", "duration", "stability"):
            if not getattr(self, name) > 0:
                raise ValidationError(f"clock {name} must be > 0, got {getattr(self, name)}")


def phase_shift(delta_r, spec: InterferometerSpec):
    """
    Optical phase (2 pi / lambda) * dR * L^2.

    Units: dR * L^2 is dimensionless but stands in for a path length, so the result is rad/m
    read as rad.
    """
    return 2 * np.pi / spec.wavelength * np.multiply(delta_r, spec.arm_length ** 2)


def path_shift_t(delta_r_t, spec: InterferometerSpec, t):
    """
    Path shift 1/2 * dR(t) * L0 * t^2.

    Units: 1/m^2 * m * s^2, reported as metres.
    """
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise ValidationError("path_shift_t is defined for t >= 0")
    return 0.5 * np.multiply(delta_r_t, spec.baseline) * t ** 2


def clock_drift(delta_r, spec: ClockSpec):
    """
    Fractional proper-time shift 1/12 * dR * L^2 * dt.

    Units: carries seconds; reported as a fraction.
    """
    return np.multiply(delta_r, spec.extent ** 2) * spec.duration / 12


def clock_freq_shift(delta_r, extent: float, constants: PhysicalConstants = PhysicalConstants()):
    """Fractional frequency shift dR * L^2 / c^2. In natural units this is dR * L^2."""
    if not extent > 0:
        raise ValidationError(f"extent must be > 0, got {extent}")
    return np.multiply(delta_r, extent ** 2) / constants.c ** 2


def strain(delta_r, arm_length: float):
    """Differential strain 1/2 * dR * L^2."""
    if not arm_length > 0:
        raise ValidationError(f"arm_length must be > 0, got {arm_length}")
    return 0.5 * np.multiply(delta_r, arm_length ** 2)


def clock_threshold_delta_r(spec: ClockSpec) -> float:
    """Curvature at which clock_drift reaches the clock's stability floor."""
    return 12 * spec.stability / (spec.extent ** 2 * spec.duration)
