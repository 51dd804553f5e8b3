import pytest

from main import EXIT_INVALID, EXIT_IO, EXIT_NUMERICAL, EXIT_OK, main, parse_args

GOOD_PULSE = """\
command: gated_pulse
parameters:
  pulse: {n_units: 10, delta_r0: 1.0e-36}
"""

LOG_OF_ZERO = """\
command: snr_sweep
parameters:
  sweep:
    model: snr_curvature
    log_values: true
    axes:
      - {param: n_units, min: 0, max: 10, n_points: 3}
"""


def write(tmp_path, text, name="run.yaml"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_parse_args_fills_cli_args():
    args = parse_args(["qix_sim", "--config", "c.yaml", "--seed", "3", "--units", "natural", "--quiet"])
    assert (args.action, args.config, args.seed, args.units, args.quiet) == ("qix_sim", "c.yaml", 3, "natural", True)


def test_command_run_writes_data_and_sidecar(tmp_path):
    out = tmp_path / "out"
    code = main(["gated_pulse", "--config", write(tmp_path, GOOD_PULSE), "--out", str(out), "--format", "csv",
                 "--quiet"])
    assert code == EXIT_OK
    assert sorted(p.name for p in out.iterdir()) == ["gated_pulse.config.yaml", "gated_pulse.csv"]
    sidecar = (out / "gated_pulse.config.yaml").read_text()
    assert "output_dir" in sidecar and "defaulted" in sidecar


def test_invalid_config_exits_with_two(tmp_path, capsys):
    bad = GOOD_PULSE.replace("n_units: 10", "n_units: -10")
    assert main(["gated_pulse", "--config", write(tmp_path, bad), "--out", str(tmp_path), "--quiet"]) == EXIT_INVALID
    assert "pulse.n_units" in capsys.readouterr().err


def test_bad_fixed_units_exit_with_two(tmp_path, capsys):
    text = LOG_OF_ZERO.replace("model: snr_curvature", "model: clock_freq_shift\n    fixed: {units: metric}") \
        .replace("param: n_units, min: 0", "param: delta_r, min: 1")
    assert main(["snr_sweep", "--config", write(tmp_path, text), "--out", str(tmp_path / "o"), "--quiet"]) \
        == EXIT_INVALID
    assert "sweep.fixed.units" in capsys.readouterr().err


def test_command_mismatch_exits_with_two(tmp_path):
    assert main(["qix_sim", "--config", write(tmp_path, GOOD_PULSE), "--quiet"]) == EXIT_INVALID


def test_bad_format_exits_with_two(tmp_path):
    assert main(["gated_pulse", "--config", write(tmp_path, GOOD_PULSE), "--format", "pdf", "--quiet"]) \
        == EXIT_INVALID


def test_numerical_failure_exits_with_three(tmp_path):
    code = main(["snr_sweep", "--config", write(tmp_path, LOG_OF_ZERO), "--out", str(tmp_path / "o"), "--quiet"])
    assert code == EXIT_NUMERICAL


def test_unwritable_output_exits_with_four(tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("")
    code = main(["gated_pulse", "--config", write(tmp_path, GOOD_PULSE), "--out", str(blocker / "sub"), "--quiet"])
    assert code == EXIT_IO


def test_list_recipes(capsys):
    assert main(["list-recipes"]) == EXIT_OK
    listing = capsys.readouterr().out
    assert "fig11" in listing and "fig13" in listing


def test_recipe_command(tmp_path):
    assert main(["recipe", "fig6", "--out", str(tmp_path), "--quiet"]) == EXIT_OK
    assert (tmp_path / "fig6" / "fig6_snr_vs_n.dat").exists()


def test_unknown_recipe_is_an_argument_error():
    with pytest.raises(SystemExit):
        parse_args(["recipe", "fig99"])
