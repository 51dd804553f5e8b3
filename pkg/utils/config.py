"""
YAML run configuration.

A config names a command and carries one parameter section per module it touches:

    command: snr_sweep
    output_dir: out/fig11
    formats: [csv, json, gnuplot]
    seed: 0
    units: si
    parameters:
      snr:
        finesse: 1.0e4
      sweep:
        model: snr_normalized
        axes:
          - {param: n_units, min: 1, max: 1.0e4, n_points: 101, scale: log10}
          - {param: spacing, min: 1.0e-3, max: 1, n_points: 101, scale: log10}
        levels: [1.0]

Every section is strict: unknown keys, wrong types and violated bounds raise ConfigError. Keys left
out take their defaults and are listed in RunConfig.defaulted.
"""
import copy
import operator
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import yaml

from core.errors import ConfigError, ValidationError
from core.model import UnitMode
from noise.snr import Platform
from sweep.grid_sweep import AxisScale, AxisSpec
from sweep.models import MODELS


class Command(str, Enum):
    SNR_SWEEP = "snr_sweep"
    CURVATURE_PROFILE = "curvature_profile"
    QIX_SIM = "qix_sim"
    OBSERVABLES = "observables"
    GATED_PULSE = "gated_pulse"


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"
    GNUPLOT = "gnuplot"


REQUIRED = object()

_BOUNDS = {">": operator.gt, ">=": operator.ge}


@dataclass(frozen=True)
class Key:
    kind: type
    default: Any = REQUIRED
    bound: Optional[Tuple[str, float]] = None
    choices: Optional[Tuple[str, ...]] = None
    nullable: bool = False

    def with_default(self, default) -> "Key":
        return Key(self.kind, default, self.bound, self.choices, self.nullable)


def _positive(default, kind=float):
    return Key(kind, default, (">", 0))


def _non_negative(default, kind=float):
    return Key(kind, default, (">=", 0))


_SIGNS = ("dip_negative", "literal_eq_nine")

SNR = {
    "n_units": _positive(1e3), "spacing": _positive(0.05), "finesse": _positive(1e4), "rep_rate": _positive(1e5),
    "squeeze": _non_negative(1.5), "g_ent": _positive(10.0), "g_shape": _positive(5.0), "g_multi": _positive(3.0),
    "g_noise": _positive(1.0), "ref_n": _positive(1e3), "ref_d": _positive(0.05), "table3_noise": Key(bool, False),
    "temperature": Key(float, None, nullable=True), "mass": Key(float, None, nullable=True),
    "quality_factor": Key(float, None, nullable=True),
}
SWEEP = {
    "model": Key(str, "snr_normalized", choices=tuple(sorted(MODELS))), "axes": Key(list),
    "levels": Key(list, []), "log_values": Key(bool, False), "workers": Key(int, 1, (">=", 1)),
    "fixed": Key(dict, {}), "band": _non_negative(0.0), "threshold": Key(float, None, nullable=True),
}
GRID = {"x_min": Key(float, -1.0), "x_max": Key(float, 1.0), "n_x": Key(int, 2001, (">=", 2))}
TIME = {"t_min": Key(float, 0.0), "t_max": Key(float, 1.0), "n_t": Key(int, 512, (">=", 2))}
STRESS_ENERGY = {
    "source": Key(str, "array", choices=("array", "interference")),
    "architecture": Key(str, "single", choices=("single", "uncoordinated", "synchronized")),
    "n_units": _positive(1, int), "spacing": _non_negative(0.0), "epsilon": _positive(1e-11),
    "sigma": _positive(0.1), "tau": _positive(1.0), "t": Key(float, 0.0),
}
INTERFERENCE = {
    "lambda_strength": _non_negative(1e-11), "x_left": Key(float, -0.25), "x_right": Key(float, 0.25),
    "branch_width": _positive(0.05), "rel_phase": Key(float, 0.0),
}
CURVATURE = {"sign": Key(str, "dip_negative", choices=_SIGNS), "calibration": _positive(1.0),
             "kappa": _positive(1.0)}
CHAIN = {
    "n_events": _positive(10, int), "spacing": _positive(1.0), "sigma": _positive(0.5),
    "gate_interval": _positive(0.375), "epsilon": _positive(1.0), "tau": Key(float, None, (">", 0), nullable=True),
}
TRACKING = {"trim": Key(float, 0.1, (">=", 0))}
OBSERVABLES = {
    "quantity": Key(str, "clock_drift", choices=("clock_drift", "strain", "phase_shift", "clock_freq_shift",
                                                 "path_shift")),
    "delta_r_min": _positive(1e-14), "delta_r_max": _positive(1e-2), "n_points": Key(int, 101, (">=", 2)),
    "scale": Key(str, "log10", choices=tuple(s.value for s in AxisScale)), "t": _non_negative(1.0),
    "threshold": Key(float, None, nullable=True),
}
INTERFEROMETER = {"arm_length": _positive(1.0), "wavelength": _positive(1e-6), "baseline": _positive(1.0)}
CLOCK = {"extent": _positive(1e-3), "duration": _positive(1e-3), "stability": _positive(1e-18)}
PULSE = {"n_units": _positive(10, int), "delta_r0": _positive(1e-36), "t0": Key(float, 5e-3),
         "sigma_t": _positive(1e-3)}
THRESHOLDS = {"path_shift": Key(float, None, (">", 0), nullable=True),
              "strain": Key(float, None, (">", 0), nullable=True)}
# detector platform whose noise floor replaces sigma_r (snr_curvature) or floor (delta_r_with_floor)
PLATFORM = {
    "kind": Key(str, None, choices=tuple(p.value for p in Platform), nullable=True),
    "wavelength": _positive(1e-6), "arm_length": _positive(1.0), "integration_time": _positive(1.0),
    "snr_opt": _positive(1.0), "da_min": _positive(1e-10), "length": _positive(1e-3), "stability": _positive(1e-18),
}
PLATFORM_NOISE_PARAM = {"snr_curvature": "sigma_r", "delta_r_with_floor": "floor"}


def _override(section, **defaults):
    out = dict(section)
    for name, value in defaults.items():
        out[name] = out[name].with_default(value)
    return out


SCHEMAS: Dict[Command, Dict[str, Dict[str, Key]]] = {
    Command.SNR_SWEEP: {"snr": SNR, "sweep": SWEEP, "platform": PLATFORM},
    Command.CURVATURE_PROFILE: {"grid": GRID, "stress_energy": STRESS_ENERGY, "interference": INTERFERENCE,
                                "curvature": CURVATURE},
    Command.QIX_SIM: {"grid": _override(GRID, x_min=-3.0, x_max=12.0, n_x=512),
                      "time": _override(TIME, t_max=6.0), "chain": CHAIN, "curvature": CURVATURE,
                      "tracking": TRACKING},
    Command.OBSERVABLES: {"observables": OBSERVABLES, "interferometer": INTERFEROMETER, "clock": CLOCK},
    Command.GATED_PULSE: {"pulse": PULSE, "time": _override(TIME, t_max=1e-2, n_t=1001),
                          "interferometer": INTERFEROMETER, "curvature": CURVATURE, "thresholds": THRESHOLDS},
}

AXIS_KEYS = {"param": Key(str), "min": Key(float), "max": Key(float), "n_points": Key(int, 101, (">=", 2)),
             "scale": Key(str, "linear", choices=tuple(s.value for s in AxisScale))}


@dataclass
class RunConfig:
    command: Command
    parameters: Dict[str, Dict[str, Any]]
    output_dir: str = "out"
    formats: List[OutputFormat] = field(default_factory=lambda: [OutputFormat.CSV, OutputFormat.JSON])
    seed: int = 0
    units: UnitMode = UnitMode.SI
    defaulted: List[str] = field(default_factory=list)
    source: Optional[str] = None

    def section(self, name: str) -> Dict[str, Any]:
        return self.parameters[name]

    def axes(self) -> List[AxisSpec]:
        return [AxisSpec(a["param"], a["min"], a["max"], a["n_points"], a["scale"])
                for a in self.parameters["sweep"]["axes"]]

    def to_document(self) -> Dict[str, Any]:
        """Plain-data form that parse_config accepts back unchanged."""
        return {
            "command": self.command.value,
            "output_dir": self.output_dir,
            "formats": [f.value for f in self.formats],
            "seed": self.seed,
            "units": self.units.value,
            "parameters": copy.deepcopy(self.parameters),
        }


def _check_value(where: str, key: Key, value):
    if value is None:
        if key.nullable:
            return None
        raise ConfigError(f"{where} must not be empty")
    if key.kind is float:
        if isinstance(value, str):
            # YAML 1.1 reads exponents without a dot (1e-36) as strings
            try:
                value = float(value)
            except ValueError:
                raise ConfigError(f"{where} must be a number, got '{value}'")
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{where} must be a number, got {type(value).__name__}")
        value = float(value)
    elif key.kind is int:
        if isinstance(value, float) and value.is_integer():
            value = int(value)
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{where} must be an integer, got {value!r}")
    elif not isinstance(value, key.kind):
        raise ConfigError(f"{where} must be of type {key.kind.__name__}, got {type(value).__name__}")

    if key.choices is not None and value not in key.choices:
        raise ConfigError(f"{where} must be one of {', '.join(key.choices)}, got '{value}'")
    if key.bound is not None:
        op, limit = key.bound
        if not _BOUNDS[op](value, limit):
            raise ConfigError(f"{where} must be {op} {limit}, got {value}")
    return value


def _check_section(where: str, raw, schema: Dict[str, Key], defaulted: List[str]) -> Dict[str, Any]:
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ConfigError(f"{where} must be a mapping, got {type(raw).__name__}")
    unknown = sorted(set(raw) - set(schema))
    if unknown:
        raise ConfigError(f"unknown key(s) in {where}: {', '.join(map(str, unknown))}; "
                          f"allowed: {', '.join(schema)}")
    out = {}
    for name, key in schema.items():
        if name in raw:
            out[name] = _check_value(f"{where}.{name}", key, raw[name])
        elif key.default is REQUIRED:
            raise ConfigError(f"{where}.{name} is required")
        else:
            out[name] = copy.deepcopy(key.default)
            defaulted.append(f"{where}.{name}")
    return out


_FIXED_CHOICES = {"units": tuple(u.value for u in UnitMode), "sign": _SIGNS}


def _fixed_key(name: str, default) -> Key:
    """Schema of a fixed model parameter, inferred from the model default."""
    if name in _FIXED_CHOICES:
        return Key(str, choices=_FIXED_CHOICES[name])
    if isinstance(default, bool):
        return Key(bool)
    if isinstance(default, int):
        return Key(int)
    return Key(float)


def _check_sweep(section: Dict[str, Any], defaulted: List[str]):
    axes = section["axes"]
    if not 1 <= len(axes) <= 2:
        raise ConfigError(f"sweep.axes takes 1 or 2 axes, got {len(axes)}")
    section["axes"] = [_check_section(f"sweep.axes[{i}]", axis, AXIS_KEYS, defaulted) for i, axis in enumerate(axes)]
    for i, axis in enumerate(section["axes"]):
        try:
            AxisSpec(axis["param"], axis["min"], axis["max"], axis["n_points"], axis["scale"])
        except ValidationError as e:
            raise ConfigError(f"sweep.axes[{i}]: {e}")
    model = MODELS[section["model"]]
    for name in [a["param"] for a in section["axes"]] + list(section["fixed"]):
        if name not in model.defaults:
            raise ConfigError(f"sweep: model '{model.name}' has no parameter '{name}'")
    section["fixed"] = {name: _check_value(f"sweep.fixed.{name}", _fixed_key(name, model.defaults[name]), value)
                        for name, value in section["fixed"].items()}
    levels = section["levels"]
    section["levels"] = [_check_value(f"sweep.levels[{i}]", Key(float), v) for i, v in enumerate(levels)]


def _check_platform(sweep: Dict[str, Any], platform: Dict[str, Any]):
    if platform["kind"] is None:
        return
    param = PLATFORM_NOISE_PARAM.get(sweep["model"])
    if param is None:
        raise ConfigError(f"platform noise applies to {', '.join(PLATFORM_NOISE_PARAM)}, "
                          f"not to sweep.model '{sweep['model']}'")
    if param in sweep["fixed"] or param in [a["param"] for a in sweep["axes"]]:
        raise ConfigError(f"sweep sets {param} and platform.kind derives it; keep one")


def config_from_dict(document, source: Optional[str] = None) -> RunConfig:
    if not isinstance(document, dict):
        raise ConfigError("config must be a mapping at the top level")
    allowed = {"command", "output_dir", "formats", "seed", "units", "parameters", "metadata"}
    unknown = sorted(set(document) - allowed)
    if unknown:
        raise ConfigError(f"unknown top-level key(s): {', '.join(map(str, unknown))}")
    if "command" not in document:
        raise ConfigError("command is required")
    try:
        command = Command(document["command"])
    except ValueError:
        raise ConfigError(f"command must be one of {', '.join(c.value for c in Command)}, "
                          f"got '{document['command']}'")

    defaulted: List[str] = []
    schema = SCHEMAS[command]
    raw_parameters = document.get("parameters") or {}
    if not isinstance(raw_parameters, dict):
        raise ConfigError("parameters must be a mapping of sections")
    unknown = sorted(set(raw_parameters) - set(schema))
    if unknown:
        raise ConfigError(f"unknown section(s) for {command.value}: {', '.join(map(str, unknown))}; "
                          f"allowed: {', '.join(schema)}")
    parameters = {name: _check_section(name, raw_parameters.get(name), keys, defaulted)
                  for name, keys in schema.items()}
    if command is Command.SNR_SWEEP:
        _check_sweep(parameters["sweep"], defaulted)
        _check_platform(parameters["sweep"], parameters["platform"])

    top = {}
    default_units = UnitMode.NATURAL if command is Command.QIX_SIM else UnitMode.SI
    for name, default in (("output_dir", "out"), ("formats", ["csv", "json"]), ("seed", 0),
                          ("units", default_units.value)):
        if name in document:
            top[name] = document[name]
        else:
            top[name] = default
            defaulted.append(name)

    if not isinstance(top["output_dir"], str):
        raise ConfigError("output_dir must be a string")
    formats = top["formats"]
    if isinstance(formats, str):
        formats = [f.strip() for f in formats.split(",") if f.strip()]
    try:
        formats = [OutputFormat(f) for f in formats]
    except (ValueError, TypeError):
        raise ConfigError(f"formats must be a subset of {', '.join(f.value for f in OutputFormat)}, got {formats}")
    if not formats:
        raise ConfigError("formats must name at least one output format")
    seed = _check_value("seed", Key(int, 0, (">=", 0)), top["seed"])
    try:
        units = UnitMode(top["units"])
    except ValueError:
        raise ConfigError(f"units must be si or natural, got '{top['units']}'")

    return RunConfig(command, parameters, top["output_dir"], formats, seed, units, defaulted, source)


def parse_config(path: str) -> RunConfig:
    try:
        with open(path, "r") as f:
            document = yaml.safe_load(f)
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e.strerror}")
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        where = f" at line {mark.line + 1}, column {mark.column + 1}" if mark is not None else ""
        problem = getattr(e, "problem", None) or str(e)
        raise ConfigError(f"{path}: invalid YAML{where}: {problem}")
    return config_from_dict(document, source=path)
