"""
Named figure recipes. Each recipe is a list of (stem, config document) steps whose parameters are
fixed to the values the figure was drawn with; every step runs as an ordinary configured command,
so its sidecar can be re-run on its own.
"""
import math
import os
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from core.errors import ValidationError
from pipe.commands import CommandOutput, run_command
from utils.config import OutputFormat, config_from_dict
from utils.emit import write_json

Step = Tuple[str, dict]

# finesse sweep surface with the combined noise floors
TABLE3_SNR = {"squeeze": 1.5, "rep_rate": 1e5, "g_ent": 2.0, "g_shape": 2.0, "g_multi": 2.0, "g_noise": 1.0,
              "table3_noise": True, "temperature": 300.0, "mass": 1e-9, "quality_factor": 1e6}
# normalized threshold surface
TABLE5_SNR = {"squeeze": 1.5, "finesse": 1e4, "rep_rate": 1e5, "g_ent": 10.0, "g_shape": 5.0, "g_multi": 3.0,
              "g_noise": 1.0, "ref_n": 1e3, "ref_d": 0.05}
# both ranges contain the reference point (1e3, 0.05)
N_AXIS = {"param": "n_units", "min": 1.0, "max": 1e4, "n_points": 101, "scale": "log10"}
D_AXIS = {"param": "spacing", "min": 1e-3, "max": 1.0, "n_points": 101, "scale": "log10"}

# per-unit curvature, curvature noise floor and clock stability
DELTA_R0 = 1e-36
SIGMA_R = 1e-35
CLOCK_STABILITY = 1e-18
# detector floors: interferometer strain and path length
STRAIN_FLOOR = 1e-23
PATH_SHIFT_FLOOR = 1e-18


def _fig2() -> List[Step]:
    steps = []
    for finesse in (1e2, 1e3, 1e4, 1e5):
        tag = f"{int(round(math.log10(finesse)))}"
        for model in ("snr_parametric", "snr_normalized"):
            steps.append((f"fig2_F1e{tag}_{model.split('_')[1]}", {
                "command": "snr_sweep",
                "parameters": {
                    "snr": {**TABLE3_SNR, "finesse": finesse},
                    "sweep": {"model": model, "axes": [N_AXIS, D_AXIS], "log_values": True, "levels": [1.0]},
                },
            }))
    return steps


def _fig3() -> List[Step]:
    axis = {"param": "n_units", "min": 1.0, "max": 1e3, "n_points": 121, "scale": "log10"}
    return [
        ("fig3_ideal", {"command": "snr_sweep", "parameters": {"sweep": {
            "model": "delta_r_array", "axes": [axis], "fixed": {"delta_r0": DELTA_R0},
            "band": 0.3, "threshold": SIGMA_R, "levels": [SIGMA_R]}}}),
        ("fig3_floor", {"command": "snr_sweep", "parameters": {"sweep": {
            "model": "delta_r_with_floor", "axes": [axis], "fixed": {"delta_r0": DELTA_R0, "floor": SIGMA_R},
            "band": 0.3, "threshold": SIGMA_R, "levels": [2 ** 0.5 * SIGMA_R]}}}),
    ]


def _profile(architecture: str, n_units: int, spacing: float, sigma: float, epsilon: float = 1e-11) -> dict:
    return {"command": "curvature_profile", "units": "si", "parameters": {
        "grid": {"x_min": -1.0, "x_max": 1.0, "n_x": 2001},
        "stress_energy": {"source": "array", "architecture": architecture, "n_units": n_units,
                          "spacing": spacing, "epsilon": epsilon, "sigma": sigma},
    }}


def _fig5() -> List[Step]:
    # one Gaussian width cannot give all three widths of the architecture comparison: a sum of equal
    # Gaussians is never narrower than one of them, so the synchronized array uses tighter units.
    # The uncoordinated units share one pair's energy and spread it over a wider profile.
    return [
        ("fig5_single", _profile("single", 1, 0.0, 0.1)),
        ("fig5_uncoordinated", _profile("uncoordinated", 5, 0.05, 0.17, epsilon=1e-11 / 5)),
        ("fig5_synchronized", _profile("synchronized", 5, 0.005, 0.045)),
    ]


def _fig6() -> List[Step]:
    return [("fig6_snr_vs_n", {"command": "snr_sweep", "parameters": {"sweep": {
        "model": "snr_curvature", "fixed": {"delta_r0": DELTA_R0, "sigma_r": SIGMA_R},
        "axes": [{"param": "n_units", "min": 1.0, "max": 100.0, "n_points": 100, "scale": "log10"}],
        "levels": [1.0], "threshold": 1.0}}})]


def _fig7() -> List[Step]:
    return [("fig7_gated_pulse", {"command": "gated_pulse", "parameters": {
        "pulse": {"n_units": 10, "delta_r0": DELTA_R0, "t0": 5e-3, "sigma_t": 1e-3},
        "time": {"t_min": 0.0, "t_max": 1e-2, "n_t": 1001},
        "interferometer": {"arm_length": 1.0, "baseline": 1.0},
        "thresholds": {"path_shift": PATH_SHIFT_FLOOR, "strain": STRAIN_FLOOR},
    }})]


def _clock(stem: str, delta_r_min: float) -> Step:
    # L = 1 mm, dt = 1 ms
    return (stem, {"command": "observables", "parameters": {
        "observables": {"quantity": "clock_drift", "delta_r_min": delta_r_min, "delta_r_max": 1e-2,
                        "n_points": 121, "scale": "log10", "threshold": CLOCK_STABILITY},
        "clock": {"extent": 1e-3, "duration": 1e-3, "stability": CLOCK_STABILITY},
    }})


def _fig9() -> List[Step]:
    steps = []
    for arm_length in (1.0, 10.0):
        steps.append((f"fig9_strain_L{int(arm_length)}", {"command": "observables", "parameters": {
            "observables": {"quantity": "strain", "delta_r_min": 1e-38, "delta_r_max": 1e-18, "n_points": 121,
                            "scale": "log10", "threshold": STRAIN_FLOOR},
            "interferometer": {"arm_length": arm_length},
        }}))
    return steps


def _fig11() -> List[Step]:
    return [("fig11_snr_normalized", {"command": "snr_sweep", "parameters": {
        "snr": TABLE5_SNR,
        "sweep": {"model": "snr_normalized", "axes": [N_AXIS, D_AXIS], "log_values": True, "levels": [1.0]},
    }})]


def _fig13() -> List[Step]:
    # N = 10, d = 1, sigma = 0.5, gate interval 0.75 sigma / c
    return [("fig13_qix_chain", {"command": "qix_sim", "units": "natural", "parameters": {
        "grid": {"x_min": -3.0, "x_max": 12.0, "n_x": 512},
        "time": {"t_min": 0.0, "t_max": 6.0, "n_t": 512},
        "chain": {"n_events": 10, "spacing": 1.0, "sigma": 0.5, "gate_interval": 0.375},
    }})]


def _interference() -> List[Step]:
    steps = []
    for label, phase in (("in_phase", 0.0), ("anti_phase", math.pi)):
        steps.append((f"interference_{label}", {"command": "curvature_profile", "units": "si", "parameters": {
            "grid": {"x_min": -1.0, "x_max": 1.0, "n_x": 2001},
            "stress_energy": {"source": "interference"},
            "interference": {"lambda_strength": 1e-11, "x_left": -0.05, "x_right": 0.05, "branch_width": 0.05,
                             "rel_phase": phase},
        }}))
    return steps


@dataclass(frozen=True)
class Recipe:
    name: str
    description: str
    steps: Callable[[], List[Step]]


RECIPES: Dict[str, Recipe] = {r.name: r for r in [
    Recipe("fig2", "log10 SNR over (N, d) for four finesse values, with noise floors", _fig2),
    Recipe("fig3", "dR(N) = N dR0 with and without a 1e-35 noise floor, 30% band", _fig3),
    Recipe("fig5", "static curvature profiles of single, uncoordinated and synchronized arrays", _fig5),
    Recipe("fig6", "curvature SNR versus N at sigma_R = 1e-35", _fig6),
    Recipe("fig7", "time-gated curvature pulse, path shift and strain", _fig7),
    Recipe("fig8", "clock drift versus dR at L = 1 mm, dt = 1 ms", lambda: [_clock("fig8_clock_drift", 1e-14)]),
    Recipe("fig9", "strain versus dR for L = 1 m and L = 10 m", _fig9),
    Recipe("fig10", "clock drift versus dR down to array-scale curvature",
           lambda: [_clock("fig10_clock_drift", 1e-36)]),
    Recipe("fig11", "normalized SNR over (N, d) with its threshold contour", _fig11),
    Recipe("fig13", "retarded curvature of a gated QET chain and its tracked dip", _fig13),
    Recipe("interference", "two-branch energy profile and curvature for in-phase and anti-phase branches",
           _interference),
]}


@dataclass
class RecipeOutput:
    name: str
    files: List[str] = field(default_factory=list)
    outputs: Dict[str, CommandOutput] = field(default_factory=dict)


def list_recipes() -> List[Tuple[str, str]]:
    return [(r.name, r.description) for r in RECIPES.values()]


def run_recipe(name: str, output_root: str = "out", formats: Optional[Sequence[OutputFormat]] = None,
               quiet: bool = False) -> RecipeOutput:
    if name not in RECIPES:
        raise ValidationError(f"unknown recipe '{name}'; available: {', '.join(RECIPES)}")
    recipe = RECIPES[name]
    directory = os.path.join(output_root, name)
    if not quiet:
        print(f"**** starting recipe {name}: {recipe.description} *****")

    out = RecipeOutput(name)
    for stem, document in recipe.steps():
        document = {**document, "output_dir": directory,
                    "formats": [f.value for f in formats] if formats else ["csv", "json", "gnuplot"]}
        config = config_from_dict(document, source=f"recipe:{name}")
        result = run_command(config, stem, quiet, extra_metadata={"recipe": name})
        out.outputs[stem] = result
        out.files += result.files

    summary = os.path.join(directory, f"{name}.summary.json")
    write_json({"recipe": name, "description": recipe.description,
                "steps": {stem: o.metadata for stem, o in out.outputs.items()}}, summary)
    out.files.append(summary)
    return out
