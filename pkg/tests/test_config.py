import numpy as np
import pytest
import yaml

from core.errors import ConfigError
from core.model import UnitMode
from utils.config import Command, OutputFormat, config_from_dict, parse_config
from utils.files import save_run_config, to_plain

MINIMAL_SWEEP = """\
command: snr_sweep
parameters:
  sweep:
    axes:
      - {param: n_units, min: 1, max: 1.0e4, n_points: 11, scale: log10}
"""


def write(tmp_path, text, name="run.yaml"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_minimal_config_takes_defaults(tmp_path):
    config = parse_config(write(tmp_path, MINIMAL_SWEEP))
    assert config.command is Command.SNR_SWEEP
    assert config.section("snr")["finesse"] == 1e4
    assert config.section("sweep")["model"] == "snr_normalized"
    assert config.units is UnitMode.SI
    assert config.formats == [OutputFormat.CSV, OutputFormat.JSON]
    assert "snr.finesse" in config.defaulted
    assert "sweep.axes[0].scale" not in config.defaulted
    axis, = config.axes()
    assert (axis.param_name, axis.n_points, axis.max) == ("n_units", 11, 1e4)


def test_qix_sim_defaults_to_natural_units():
    config = config_from_dict({"command": "qix_sim"})
    assert config.units is UnitMode.NATURAL
    assert config.section("grid") == {"x_min": -3.0, "x_max": 12.0, "n_x": 512}
    assert config.section("time")["t_max"] == 6.0
    assert config.section("chain")["tau"] is None


def test_exponent_without_dot_is_read_as_number(tmp_path):
    text = "command: gated_pulse\nparameters:\n  pulse:\n    delta_r0: 1e-36\n"
    config = parse_config(write(tmp_path, text))
    assert config.section("pulse")["delta_r0"] == 1e-36


CURVATURE_SNR = """\
command: snr_sweep
parameters:
  sweep:
    model: {model}
    fixed: {fixed}
    axes:
      - {{param: {axis}, min: 1, max: 100, n_points: 5, scale: log10}}
"""


def test_fixed_sweep_parameters_read_exponents_as_numbers(tmp_path):
    text = CURVATURE_SNR.format(model="snr_curvature", fixed="{delta_r0: 1e-36, sigma_r: 1e-35}", axis="n_units")
    fixed = parse_config(write(tmp_path, text)).section("sweep")["fixed"]
    assert fixed == {"delta_r0": 1e-36, "sigma_r": 1e-35}
    assert all(type(v) is float for v in fixed.values())


@pytest.mark.parametrize("model, fixed, axis, key", [
    ("snr_curvature", "{delta_r0: tiny}", "n_units", "sweep.fixed.delta_r0"),
    ("clock_freq_shift", "{units: metric}", "delta_r", "sweep.fixed.units"),
    ("gated_pulse", "{sign: up}", "t", "sweep.fixed.sign"),
    ("gated_pulse", "{n_units: 2.5}", "t", "sweep.fixed.n_units"),
])
def test_bad_fixed_sweep_parameters_are_named(tmp_path, model, fixed, axis, key):
    with pytest.raises(ConfigError, match=key):
        parse_config(write(tmp_path, CURVATURE_SNR.format(model=model, fixed=fixed, axis=axis)))


def test_platform_noise_needs_a_noise_model():
    sweep = {"model": "snr_normalized", "axes": [{"param": "n_units", "min": 1, "max": 2}]}
    with pytest.raises(ConfigError, match="platform"):
        config_from_dict({"command": "snr_sweep", "parameters": {"sweep": sweep, "platform": {"kind": "mems"}}})
    clash = {"model": "snr_curvature", "fixed": {"sigma_r": 1e-35}, "axes": sweep["axes"]}
    with pytest.raises(ConfigError, match="sigma_r"):
        config_from_dict({"command": "snr_sweep", "parameters": {"sweep": clash, "platform": {"kind": "mems"}}})


def test_negative_finesse_is_rejected():
    with pytest.raises(ConfigError, match="snr.finesse"):
        config_from_dict({"command": "snr_sweep", "parameters": {
            "snr": {"finesse": -1.0}, "sweep": {"axes": [{"param": "n_units", "min": 1, "max": 2}]}}})


def test_misspelled_key_is_named():
    with pytest.raises(ConfigError, match="finnesse"):
        config_from_dict({"command": "snr_sweep", "parameters": {
            "snr": {"finnesse": 1e4}, "sweep": {"axes": [{"param": "n_units", "min": 1, "max": 2}]}}})


@pytest.mark.parametrize("document", [
    {"command": "launch"},
    {"parameters": {}},
    {"command": "qix_sim", "colour": "red"},
    {"command": "qix_sim", "parameters": {"snr": {}}},
    {"command": "qix_sim", "formats": ["pdf"]},
    {"command": "qix_sim", "units": "cgs"},
    {"command": "qix_sim", "seed": -1},
    {"command": "gated_pulse", "parameters": {"pulse": {"n_units": 2.5}}},
    {"command": "curvature_profile", "parameters": {"curvature": {"sign": "up"}}},
    {"command": "snr_sweep", "parameters": {"sweep": {"axes": []}}},
    {"command": "snr_sweep", "parameters": {"sweep": {"axes": [{"param": "bogus", "min": 1, "max": 2}]}}},
    {"command": "snr_sweep", "parameters": {"sweep": {"axes": [{"param": "spacing", "min": 0, "max": 1,
                                                                "scale": "log10"}]}}},
])
def test_invalid_documents_are_rejected(document):
    with pytest.raises(ConfigError):
        config_from_dict(document)


def test_yaml_error_reports_the_line(tmp_path):
    text = "command: snr_sweep\nparameters:\n  snr: {finesse: [1\n"
    with pytest.raises(ConfigError, match="line"):
        parse_config(write(tmp_path, text))


def test_missing_file_is_a_config_error(tmp_path):
    with pytest.raises(ConfigError):
        parse_config(str(tmp_path / "absent.yaml"))


def test_sidecar_parses_back_to_the_same_run(tmp_path):
    config = parse_config(write(tmp_path, MINIMAL_SWEEP))
    path = save_run_config(config.to_document(), {"defaulted": config.defaulted, "peak": float("nan")},
                           str(tmp_path / "out"), "sweep")
    again = parse_config(path)
    assert again.to_document() == config.to_document()
    with open(path) as f:
        assert yaml.safe_load(f)["metadata"]["artifact_version"]


def test_to_plain_unwraps_enums_and_numpy():
    plain = to_plain({"units": UnitMode.SI, "values": np.arange(3), "x": np.float64(1.5)})
    assert plain == {"units": "si", "values": [0, 1, 2], "x": 1.5}
    assert type(plain["x"]) is float
