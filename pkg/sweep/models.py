"""
Scalar models a sweep can evaluate. Each model is a plain function of keyword parameters
returning one float, registered with the defaults of every parameter it accepts.
"""
from dataclasses import dataclass, fields
from typing import Callable, Dict

from core.errors import ValidationError
from core.model import PhysicalConstants
from curvature.static import GatedPulseSpec, SignConvention, gated_pulse
from noise import snr
from observables import detectors


@dataclass(frozen=True)
class SweepModel:
    name: str
    func: Callable[..., float]
    defaults: Dict[str, object]
    unit: str = "1"

    def params(self, fixed: Dict[str, object]) -> Dict[str, object]:
        unknown = sorted(set(fixed) - set(self.defaults))
        if unknown:
            raise ValidationError(f"model '{self.name}' has no parameter(s) {', '.join(unknown)}; "
                                  f"known: {', '.join(sorted(self.defaults))}")
        return {**self.defaults, **fixed}

    def __call__(self, **params) -> float:
        return float(self.func(**params))


_SNR_FIELDS = [f.name for f in fields(snr.SnrParameters) if f.name not in ("temperature", "mass", "quality_factor")]
_SNR_DEFAULTS = {name: getattr(snr.SnrParameters(), name) for name in _SNR_FIELDS}
_SNR_DEFAULTS["table3_noise"] = False


def _snr_inputs(params):
    p = snr.SnrParameters(**{name: params[name] for name in _SNR_FIELDS})
    noise = snr.NoiseFloorTable3() if params["table3_noise"] else None
    return p, noise


def _snr_parametric(**params):
    return snr.snr_parametric(*_snr_inputs(params))


def _snr_normalized(**params):
    return snr.snr_normalized(*_snr_inputs(params))


def _clock_drift(delta_r, extent, duration, stability):
    return detectors.clock_drift(delta_r, detectors.ClockSpec(extent, duration, stability))


def _phase_shift(delta_r, arm_length, wavelength):
    return detectors.phase_shift(delta_r, detectors.InterferometerSpec(arm_length, wavelength))


def _path_shift(delta_r, baseline, t):
    return detectors.path_shift_t(delta_r, detectors.InterferometerSpec(baseline=baseline), t)


def _clock_freq_shift(delta_r, extent, units):
    return detectors.clock_freq_shift(delta_r, extent, PhysicalConstants.for_mode(units))


def _gated_pulse(t, n_units, delta_r0, t0, sigma_t, sign):
    return gated_pulse(GatedPulseSpec(n_units, delta_r0, t0, sigma_t), t, SignConvention(sign))


MODELS: Dict[str, SweepModel] = {
    model.name: model for model in [
        SweepModel("snr_parametric", _snr_parametric, _SNR_DEFAULTS),
        SweepModel("snr_normalized", _snr_normalized, _SNR_DEFAULTS),
        SweepModel("snr_curvature", snr.snr_curvature,
                   {"n_units": 10.0, "delta_r0": 1e-36, "sigma_r": 1e-35}),
        SweepModel("delta_r_array", snr.delta_r_array, {"n_units": 1.0, "delta_r0": 1e-36}, "1/m^2"),
        SweepModel("delta_r_with_floor", snr.delta_r_with_floor,
                   {"n_units": 1.0, "delta_r0": 1e-36, "floor": 1e-35}, "1/m^2"),
        SweepModel("clock_drift", _clock_drift,
                   {"delta_r": 1e-36, "extent": 1e-3, "duration": 1e-3, "stability": 1e-18}),
        SweepModel("strain", detectors.strain, {"delta_r": 1e-36, "arm_length": 1.0}),
        SweepModel("phase_shift", _phase_shift, {"delta_r": 1e-36, "arm_length": 1.0, "wavelength": 1e-6}, "rad"),
        SweepModel("path_shift", _path_shift, {"delta_r": 1e-36, "baseline": 1.0, "t": 0.0}, "m"),
        SweepModel("clock_freq_shift", _clock_freq_shift, {"delta_r": 1e-36, "extent": 1.0, "units": "si"}),
        SweepModel("gated_pulse", _gated_pulse,
                   {"t": 0.0, "n_units": 10, "delta_r0": 1e-36, "t0": 5e-3, "sigma_t": 1e-3,
                    "sign": SignConvention.DIP_NEGATIVE.value}, "1/m^2"),
    ]
}


def get_model(name: str) -> SweepModel:
    if name not in MODELS:
        raise ValidationError(f"unknown model '{name}'; available: {', '.join(sorted(MODELS))}")
    return MODELS[name]
