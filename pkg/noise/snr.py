import math
from dataclasses import dataclass, field, fields, replace
from enum import Enum
from typing import Optional, Union

import numpy as np

from core.errors import ValidationError
from core.model import PhysicalConstants, UnitMode


@dataclass(frozen=True)
class SnrParameters:
    """
    Inputs of the parametric SNR model

        SNR = (N / d^3 * F / pi * G_ent * G_shape * G_multi) / (f^(-1/2) * e^(-r) * G_noise)

    together with the reference point (ref_n, ref_d) used for normalization.

    temperature, mass and quality_factor are carried for provenance only; no formula uses them.
    """

    n_units: float = 1e3
    spacing: float = 0.05
    finesse: float = 1e4
    rep_rate: float = 1e5
    squeeze: float = 1.5
    g_ent: float = 10.0
    g_shape: float = 5.0
    g_multi: float = 3.0
    g_noise: float = 1.0
    ref_n: float = 1e3
    ref_d: float = 0.05
    temperature: Optional[float] = None
    mass: Optional[float] = None
    quality_factor: Optional[float] = None

    _POSITIVE = ("n_units", "spacing", "finesse", "rep_rate", "g_ent", "g_shape", "g_multi", "g_noise",
                 "ref_n", "ref_d")

    def __post_init__(self):
        for name in self._POSITIVE:
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise ValidationError(f"{name} must be > 0, got {value}")
        if not (np.isfinite(self.squeeze) and self.squeeze >= 0):
            raise ValidationError(f"squeeze must be >= 0, got {self.squeeze}")

    def at_reference(self) -> "SnrParameters":
        return replace(self, n_units=self.ref_n, spacing=self.ref_d)


@dataclass(frozen=True)
class NoiseFloorTable3:
    detector_floor: float = 1e-4
    technical_floor: float = 1e-3
    gap_coeff: float = 1e-2

    def __post_init__(self):
        for name in ("detector_floor", "technical_floor", "gap_coeff"):
            if not getattr(self, name) >= 0:
                raise ValidationError(f"{name} must be >= 0, got {getattr(self, name)}")

    def gap_noise(self, spacing: float) -> float:
        """gap_coeff / (d in micrometres)."""
        return self.gap_coeff / (spacing * 1e6)

    def combined(self, spacing: float) -> float:
        """Independent floors added in quadrature."""
        return math.sqrt(self.detector_floor ** 2 + self.technical_floor ** 2 + self.gap_noise(spacing) ** 2)


def table3_parameters(finesse: float = 1e4, n_units: float = 1e3, spacing: float = 0.05) -> SnrParameters:
    """Finesse-sweep surface parameters; the reference point is the one of the normalized surface."""
    return SnrParameters(n_units=n_units, spacing=spacing, finesse=finesse, rep_rate=1e5, squeeze=1.5,
                         g_ent=2.0, g_shape=2.0, g_multi=2.0, g_noise=1.0,
                         temperature=300.0, mass=1e-9, quality_factor=1e6)


def table5_parameters(n_units: float = 1e3, spacing: float = 0.05) -> SnrParameters:
    return SnrParameters(n_units=n_units, spacing=spacing, finesse=1e4, rep_rate=1e5, squeeze=1.5,
                         g_ent=10.0, g_shape=5.0, g_multi=3.0, g_noise=1.0, ref_n=1e3, ref_d=0.05)


def effective_noise_gain(p: SnrParameters, noise: Optional[NoiseFloorTable3] = None) -> float:
    if noise is None:
        return p.g_noise
    return p.g_noise * (1 + noise.combined(p.spacing))


def snr_parametric(p: SnrParameters, noise: Optional[NoiseFloorTable3] = None) -> float:
    signal = p.n_units / p.spacing ** 3 * (p.finesse / math.pi) * p.g_ent * p.g_shape * p.g_multi
    # e^-r sits in the denominator, so stronger squeezing raises the SNR
    floor = (1 / math.sqrt(p.rep_rate)) * math.exp(-p.squeeze) * effective_noise_gain(p, noise)
    return signal / floor


def snr_normalized(p: SnrParameters, noise: Optional[NoiseFloorTable3] = None) -> float:
    """SNR relative to the same configuration moved to (ref_n, ref_d); exactly 1 at the reference."""
    return snr_parametric(p, noise) / snr_parametric(p.at_reference(), noise)


class Platform(str, Enum):
    INTERFEROMETER = "interferometer"
    MEMS = "mems"
    CLOCK = "clock"


@dataclass(frozen=True)
class InterferometerNoise:
    wavelength: float = 1e-6
    arm_length: float = 1.0
    integration_time: float = 1.0
    snr_opt: float = 1.0
    platform: Platform = field(default=Platform.INTERFEROMETER, init=False)


@dataclass(frozen=True)
class MemsNoise:
    """da_min in m/s^2/sqrt(Hz); the resulting floor is reported in nominal 1/m^2."""

    da_min: float = 1e-10
    length: float = 1e-3
    platform: Platform = field(default=Platform.MEMS, init=False)


@dataclass(frozen=True)
class ClockNoise:
    stability: float = 1e-18
    length: float = 1e-3
    constants: PhysicalConstants = PhysicalConstants()
    platform: Platform = field(default=Platform.CLOCK, init=False)


PlatformNoise = Union[InterferometerNoise, MemsNoise, ClockNoise]

_PLATFORMS = {Platform.INTERFEROMETER: InterferometerNoise, Platform.MEMS: MemsNoise, Platform.CLOCK: ClockNoise}


def platform_noise(platform: Union[Platform, str], constants: PhysicalConstants = PhysicalConstants(),
                   **params) -> PlatformNoise:
    """Platform noise built from a flat parameter mapping; keys the platform does not use are ignored."""
    cls = _PLATFORMS[Platform(platform)]
    names = {f.name for f in fields(cls) if f.init and f.name != "constants"}
    kwargs = {name: value for name, value in params.items() if name in names}
    if cls is ClockNoise:
        kwargs["constants"] = constants
    return cls(**kwargs)


def _check_positive(noise, names):
    for name in names:
        if not getattr(noise, name) > 0:
            raise ValidationError(f"{noise.platform.value} {name} must be > 0, got {getattr(noise, name)}")


def sigma_r_platform(noise: PlatformNoise) -> float:
    """Curvature noise floor of a detector platform, 1/m^2."""
    if noise.platform is Platform.INTERFEROMETER:
        _check_positive(noise, ("wavelength", "arm_length", "integration_time", "snr_opt"))
        return noise.wavelength / noise.arm_length ** 2 / math.sqrt(noise.integration_time) / noise.snr_opt
    if noise.platform is Platform.MEMS:
        _check_positive(noise, ("da_min", "length"))
        return noise.da_min / noise.length
    _check_positive(noise, ("stability", "length"))
    c_squared = 1.0 if noise.constants.unit_mode is UnitMode.NATURAL else noise.constants.c ** 2
    return noise.stability * c_squared / noise.length ** 2


def snr_curvature(n_units: float, delta_r0: float, sigma_r: float) -> float:
    """N * dR0 / sigma_R."""
    if not sigma_r > 0:
        raise ValidationError(f"sigma_r must be > 0, got {sigma_r}")
    return n_units * delta_r0 / sigma_r


def threshold_n(delta_r0: float, sigma_r: float) -> int:
    """Smallest whole number of units with snr_curvature >= 1."""
    return max(1, math.ceil(sigma_r / delta_r0 - 1e-9))


def delta_r_array(n_units: float, delta_r0: float) -> float:
    return n_units * delta_r0


def delta_r_with_floor(n_units: float, delta_r0: float, floor: float) -> float:
    """Array signal with a noise floor added in quadrature."""
    return math.hypot(n_units * delta_r0, floor)
