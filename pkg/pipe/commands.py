import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

import numpy as np

from core.model import Grid1D, PhysicalConstants, make_grid_st
from curvature.profiles import fwhm, peak_depth
from curvature.retarded import QixChainConfig, simulate_qix_chain
from curvature.static import GatedPulseSpec, SignConvention, gated_pulse, static_curvature
from curvature.tracking import track_dip
from noise.snr import platform_noise, sigma_r_platform
from observables import detectors
from sources.stress_energy import (ArrayConfig, GaussianPulse, InterferenceConfig, interference_t00,
                                   sample_array_t00)
from sweep.contours import add_contours, level_crossings
from sweep.grid_sweep import AxisSpec, run_sweep
from utils.config import PLATFORM_NOISE_PARAM, Command, RunConfig
from utils.emit import Series, emit_field, emit_series, emit_sweep, field_series
from utils.files import save_run_config

SNR_MODELS = ("snr_parametric", "snr_normalized")
PROVENANCE_KEYS = ("temperature", "mass", "quality_factor")


@dataclass
class CommandOutput:
    files: List[str]
    metadata: Dict[str, object]
    result: object = None
    extras: Dict[str, object] = field(default_factory=dict)


def _finite_or_none(value: float) -> Optional[float]:
    return float(value) if math.isfinite(value) else None


def run_snr_sweep(config: RunConfig, stem: str, quiet: bool) -> CommandOutput:
    sweep = config.section("sweep")
    snr = config.section("snr")
    fixed = dict(sweep["fixed"])
    if sweep["model"] in SNR_MODELS:
        fixed = {**{k: v for k, v in snr.items() if k not in PROVENANCE_KEYS}, **fixed}
    platform = config.section("platform")
    platform_floor = None
    if platform["kind"] is not None:
        noise = platform_noise(platform["kind"], PhysicalConstants.for_mode(config.units), **platform)
        platform_floor = sigma_r_platform(noise)
        fixed[PLATFORM_NOISE_PARAM[sweep["model"]]] = platform_floor
    result = run_sweep(sweep["model"], fixed, config.axes(), workers=sweep["workers"],
                       log_values=sweep["log_values"], quiet=quiet)

    metadata = {"model": result.model, "provenance": {k: snr[k] for k in PROVENANCE_KEYS}}
    if platform_floor is not None:
        metadata["platform"] = {"kind": platform["kind"], "sigma_r": platform_floor}
    if len(result.axes) == 2:
        add_contours(result, sweep["levels"])
        metadata["contours"] = {str(level): sum(c.level == level for c in result.contours)
                                for level in sweep["levels"]}
    else:
        metadata["crossings"] = {str(level): level_crossings(result, level) for level in sweep["levels"]}
    result.metadata = metadata
    files = emit_sweep(result, config.formats, config.output_dir, stem, sweep["band"], sweep["threshold"])
    return CommandOutput(files, metadata, result)


def run_curvature_profile(config: RunConfig, stem: str, quiet: bool) -> CommandOutput:
    grid = Grid1D(**config.section("grid"))
    constants = PhysicalConstants.for_mode(config.units)
    source = config.section("stress_energy")
    curvature = config.section("curvature")

    if source["source"] == "array":
        pulse = GaussianPulse(source["epsilon"], sigma=source["sigma"], tau=source["tau"])
        array = ArrayConfig(source["architecture"], source["n_units"], source["spacing"], pulse, seed=config.seed)
        t00 = sample_array_t00(array, grid, source["t"])
    else:
        t00 = interference_t00(InterferenceConfig(**config.section("interference")), grid)
    delta_r = static_curvature(t00, constants, SignConvention(curvature["sign"]), curvature["calibration"])

    depth = peak_depth(delta_r)
    metadata = {
        "source": source["source"],
        "peak_t00": peak_depth(t00),
        "peak_depth": depth,
        "fwhm": fwhm(delta_r) if depth < 0 else None,
        "flags": list(delta_r.flags),
    }
    files = emit_series(field_series(t00, delta_r, names=["t00", "delta_r"]), config.formats, config.output_dir,
                        stem, metadata)
    return CommandOutput(files, metadata, delta_r, {"t00": t00})


def run_qix_sim(config: RunConfig, stem: str, quiet: bool) -> CommandOutput:
    grid_section, time = config.section("grid"), config.section("time")
    grid = make_grid_st(Grid1D(**grid_section), time["t_min"], time["t_max"], time["n_t"])
    constants = PhysicalConstants.for_mode(config.units)
    curvature = config.section("curvature")
    sign = SignConvention(curvature["sign"])
    chain = QixChainConfig(constants=constants, **config.section("chain"))

    if not quiet:
        print(f"**** solving retarded curvature on {grid.n_t}x{grid.space.n_x} grid *****")
    delta_r = simulate_qix_chain(chain, grid, sign, curvature["kappa"], curvature["calibration"])
    track = track_dip(delta_r, config.section("tracking")["trim"])

    # reference: the first event on its own, same grid and normalization
    single = QixChainConfig(1, chain.spacing, chain.sigma, chain.gate_interval, chain.epsilon, constants, chain.tau)
    single_depth = float(simulate_qix_chain(single, grid, sign, curvature["kappa"],
                                            curvature["calibration"]).values.min())
    depth = float(delta_r.values.min())

    metadata = {
        "v_eff": chain.v_eff,
        "superluminal": chain.superluminal,
        "tracked_velocity": _finite_or_none(track.velocity),
        "expected_velocity": min(chain.v_eff, constants.c),
        "degenerate_track": track.degenerate,
        "peak_depth": depth,
        "single_event_depth": single_depth,
        "depth_ratio": depth / single_depth if single_depth < 0 else None,
        "flags": list(delta_r.flags),
    }
    files = emit_field(delta_r, config.formats, config.output_dir, stem, "delta_r", metadata)
    track_series = Series({"t": track.times, "x_min": np.nan_to_num(track.positions),
                           "delta_r_min": np.nan_to_num(track.values), "valid": track.valid.astype(float)},
                          {"t": "s", "x_min": "m", "delta_r_min": "1/m^2"})
    files += emit_series(track_series, config.formats, config.output_dir, f"{stem}_track", metadata)
    return CommandOutput(files, metadata, delta_r, {"track": track})


_OBSERVABLE_PARAMS: Dict[str, Callable[[RunConfig], Dict[str, object]]] = {
    "clock_drift": lambda c: dict(c.section("clock")),
    "strain": lambda c: {"arm_length": c.section("interferometer")["arm_length"]},
    "phase_shift": lambda c: {k: c.section("interferometer")[k] for k in ("arm_length", "wavelength")},
    "clock_freq_shift": lambda c: {"extent": c.section("clock")["extent"], "units": c.units.value},
    "path_shift": lambda c: {"baseline": c.section("interferometer")["baseline"], "t": c.section("observables")["t"]},
}


def run_observables(config: RunConfig, stem: str, quiet: bool) -> CommandOutput:
    section = config.section("observables")
    quantity = section["quantity"]
    axis = AxisSpec("delta_r", section["delta_r_min"], section["delta_r_max"], section["n_points"], section["scale"])
    result = run_sweep(quantity, _OBSERVABLE_PARAMS[quantity](config), [axis], quiet=quiet)

    metadata = {"quantity": quantity}
    if section["threshold"] is not None:
        metadata["crossings"] = level_crossings(result, section["threshold"])
    if quantity == "clock_drift":
        metadata["threshold_delta_r"] = detectors.clock_threshold_delta_r(detectors.ClockSpec(**config.section("clock")))
    result.metadata = metadata
    files = emit_sweep(result, config.formats, config.output_dir, stem, threshold=section["threshold"])
    return CommandOutput(files, metadata, result)


def run_gated_pulse(config: RunConfig, stem: str, quiet: bool) -> CommandOutput:
    time = config.section("time")
    t = np.linspace(time["t_min"], time["t_max"], time["n_t"])
    spec = GatedPulseSpec(**config.section("pulse"))
    interferometer = detectors.InterferometerSpec(**config.section("interferometer"))

    delta_r = gated_pulse(spec, t, SignConvention(config.section("curvature")["sign"]))
    columns = {"t": t, "delta_r": delta_r, "path_shift": detectors.path_shift_t(delta_r, interferometer, t),
               "strain": detectors.strain(delta_r, interferometer.arm_length)}
    units = {"t": "s", "delta_r": "1/m^2", "path_shift": "m"}
    peak = int(np.argmax(np.abs(delta_r)))
    metadata = {"peak_time": float(t[peak]), "peak_delta_r": float(delta_r[peak])}
    for name, floor in config.section("thresholds").items():
        if floor is None:
            continue
        # detectable when the magnitude reaches the floor anywhere in the window
        reach = float(np.abs(columns[name]).max())
        columns[f"{name}_threshold"] = np.full_like(t, floor)
        units[f"{name}_threshold"] = units.get(name, "1")
        metadata[f"peak_{name}"] = reach
        metadata[f"{name}_detectable"] = reach >= floor
    series = Series(columns, units)
    files = emit_series(series, config.formats, config.output_dir, stem, metadata)
    return CommandOutput(files, metadata, series)


COMMANDS = {
    Command.SNR_SWEEP: run_snr_sweep,
    Command.CURVATURE_PROFILE: run_curvature_profile,
    Command.QIX_SIM: run_qix_sim,
    Command.OBSERVABLES: run_observables,
    Command.GATED_PULSE: run_gated_pulse,
}


def run_command(config: RunConfig, stem: Optional[str] = None, quiet: bool = False,
                extra_metadata: Optional[Dict] = None) -> CommandOutput:
    """Run one configured command, write its data files and its config sidecar."""
    stem = stem or config.command.value
    if not quiet:
        print(f"**** running {config.command.value} -> {config.output_dir}/{stem} *****")
    output = COMMANDS[config.command](config, stem, quiet)
    sidecar_metadata = {"defaulted": config.defaulted, **(extra_metadata or {}), **output.metadata}
    output.files.append(save_run_config(config.to_document(), sidecar_metadata, config.output_dir, stem))
    return output
