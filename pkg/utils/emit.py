"""
Writers for CSV, JSON and gnuplot data files.

Every float is written as repr(float(v)), the shortest text that reads back to the same double,
so repeated runs produce byte-identical files on any locale.
"""
import json
import os
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from core.errors import OutputError, ValidationError
from core.model import ScalarField
from sweep.grid_sweep import AxisScale, SweepResult
from utils.config import OutputFormat
from utils.files import to_plain

PARAM_UNITS = {
    "spacing": "m", "ref_d": "m", "rep_rate": "Hz", "delta_r": "1/m^2", "delta_r0": "1/m^2", "sigma_r": "1/m^2",
    "floor": "1/m^2", "arm_length": "m", "wavelength": "m", "baseline": "m", "extent": "m", "duration": "s",
    "t": "s", "t0": "s", "sigma_t": "s", "x": "m",
}


@dataclass
class Series:
    """Named columns of equal length, written as one table."""

    columns: Dict[str, np.ndarray]
    units: Dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        lengths = {len(np.atleast_1d(v)) for v in self.columns.values()}
        if len(lengths) > 1:
            raise ValidationError(f"series columns differ in length: {sorted(lengths)}")

    def header(self) -> List[str]:
        return [f"{name} [{self.units.get(name, '1')}]" for name in self.columns]


def fmt(value) -> str:
    return repr(float(value))


def _ensure_dir(directory: str):
    try:
        os.makedirs(directory, exist_ok=True)
    except OSError as e:
        raise OutputError(f"cannot create output directory {directory}: {e.strerror}")


def _write_text(path: str, text: str):
    try:
        with open(path, "w", newline="\n") as f:
            f.write(text)
    except OSError as e:
        raise OutputError(f"cannot write {path}: {e.strerror}")


def write_csv(series: Series, path: str):
    frame = pd.DataFrame({head: [fmt(v) for v in np.atleast_1d(col)]
                          for head, col in zip(series.header(), series.columns.values())})
    try:
        frame.to_csv(path, index=False, lineterminator="\n")
    except OSError as e:
        raise OutputError(f"cannot write {path}: {e.strerror}")


def write_json(document: Dict, path: str):
    try:
        text = json.dumps(to_plain(document), indent=1, allow_nan=False)
    except ValueError as e:
        raise OutputError(f"cannot serialise {path}: {e}")
    _write_text(path, text + "\n")


def write_columns(series: Series, path: str):
    lines = ["# " + " ".join(name.replace(" ", "") for name in series.header())]
    for row in zip(*(np.atleast_1d(col) for col in series.columns.values())):
        lines.append(" ".join(fmt(v) for v in row))
    _write_text(path, "\n".join(lines) + "\n")


def write_matrix(x: np.ndarray, y: np.ndarray, z: np.ndarray, path: str):
    """
    Gnuplot nonuniform matrix: the first row is the column count followed by the x coordinates,
    every following row is a y coordinate followed by that row of z.
    """
    lines = [" ".join([str(len(x))] + [fmt(v) for v in x])]
    for yi, row in zip(y, z):
        lines.append(" ".join([fmt(yi)] + [fmt(v) for v in row]))
    _write_text(path, "\n".join(lines) + "\n")


def write_gp_stub(path: str, data_file: str, xlabel: str, ylabel: str, matrix: bool,
                  logx: bool = False, logy: bool = False, n_columns: int = 2):
    lines = [f"# plot with: gnuplot -p {os.path.basename(path)}",
             f"set xlabel '{xlabel}'", f"set ylabel '{ylabel}'"]
    if logx:
        lines.append("set logscale x")
    if logy:
        lines.append("set logscale y")
    if matrix:
        lines.append(f"plot '{data_file}' nonuniform matrix with image notitle")
    else:
        plots = [f"'{data_file}' using 1:{k} with lines title columnhead({k})" for k in range(2, n_columns + 1)]
        lines.append("set key autotitle columnhead")
        lines.append("plot " + ", \\\n     ".join(plots))
    _write_text(path, "\n".join(lines) + "\n")


def emit_series(series: Series, formats: Sequence[OutputFormat], directory: str, stem: str,
                metadata: Optional[Dict] = None, logx: bool = False, logy: bool = False) -> List[str]:
    _ensure_dir(directory)
    base = os.path.join(directory, stem)
    written = []
    for kind in formats:
        if kind is OutputFormat.CSV:
            write_csv(series, base + ".csv")
            written.append(base + ".csv")
        elif kind is OutputFormat.JSON:
            write_json({"columns": series.columns, "units": series.units, "metadata": metadata or {}},
                       base + ".json")
            written.append(base + ".json")
        elif kind is OutputFormat.GNUPLOT:
            write_columns(series, base + ".dat")
            names = list(series.columns)
            write_gp_stub(base + ".gp", stem + ".dat", series.header()[0], names[1] if len(names) > 1 else "",
                          matrix=False, logx=logx, logy=logy, n_columns=len(names))
            written += [base + ".dat", base + ".gp"]
    return written


def sweep_series(result: SweepResult, band: float = 0.0, threshold: Optional[float] = None) -> Series:
    """Long-format table of a sweep: one row per grid point, axis 1 outer."""
    grids = np.meshgrid(*result.axis_values(), indexing="ij")
    columns = {axis.param_name: g.ravel() for axis, g in zip(result.axes, grids)}
    units = {name: PARAM_UNITS.get(name, "1") for name in columns}
    values = result.values.ravel()
    columns[result.model] = values
    units[result.model] = result.unit
    if result.log_values:
        columns[f"log10_{result.model}"] = np.log10(values)
    if band > 0:
        columns["lower"] = values * (1 - band)
        columns["upper"] = values * (1 + band)
        units["lower"] = units["upper"] = result.unit
    if threshold is not None:
        columns["threshold"] = np.full(len(values), threshold)
        units["threshold"] = result.unit
    return Series(columns, units)


def _sweep_document(result: SweepResult) -> Dict:
    return {
        "model": result.model,
        "unit": result.unit,
        "log_values": result.log_values,
        "axes": [{"param": a.param_name, "min": a.min, "max": a.max, "n_points": a.n_points,
                  "scale": a.scale.value, "values": a.values()} for a in result.axes],
        "values": result.values,
        "fixed": result.fixed,
        "contours": [{"level": c.level, "closed": c.closed, "points": c.points} for c in result.contours],
        "metadata": result.metadata,
    }


def emit_sweep(result: SweepResult, formats: Sequence[OutputFormat], directory: str, stem: str,
               band: float = 0.0, threshold: Optional[float] = None) -> List[str]:
    _ensure_dir(directory)
    base = os.path.join(directory, stem)
    series = sweep_series(result, band, threshold)
    logx = result.axes[0].scale is AxisScale.LOG10
    written = []
    for kind in formats:
        if kind is OutputFormat.CSV:
            write_csv(series, base + ".csv")
            written.append(base + ".csv")
        elif kind is OutputFormat.JSON:
            write_json(_sweep_document(result), base + ".json")
            written.append(base + ".json")
        elif kind is OutputFormat.GNUPLOT and len(result.axes) == 1:
            written += emit_series(series, [OutputFormat.GNUPLOT], directory, stem, logx=logx)
        elif kind is OutputFormat.GNUPLOT:
            outer, inner = result.axes
            z = np.log10(result.values) if result.log_values else result.values
            write_matrix(inner.values(), outer.values(), z, base + ".dat")
            write_gp_stub(base + ".gp", stem + ".dat", inner.param_name, outer.param_name, matrix=True,
                          logx=inner.scale is AxisScale.LOG10, logy=outer.scale is AxisScale.LOG10)
            written += [base + ".dat", base + ".gp"]
            if result.contours:
                contour_lines = []
                for c in result.contours:
                    contour_lines += [f"{fmt(p[1])} {fmt(p[0])}" for p in c.points] + [""]
                _write_text(base + ".contours.dat", "\n".join(contour_lines) + "\n")
                written.append(base + ".contours.dat")
    return written


def field_series(*fields: ScalarField, names: Sequence[str]) -> Series:
    """Side-by-side 1D profiles sharing one grid."""
    grid = fields[0].grid
    columns = {"x": grid.coordinates()}
    units = {"x": "m"}
    for name, f in zip(names, fields):
        if f.grid != grid:
            raise ValidationError("profiles must share one grid")
        columns[name] = f.values
        units[name] = f.quantity.unit
    return Series(columns, units)


def emit_field(field_: ScalarField, formats: Sequence[OutputFormat], directory: str, stem: str,
               name: str = "value", metadata: Optional[Dict] = None) -> List[str]:
    """
    Write a space-time field. CSV is long format (t, x, value); the gnuplot matrix has
    x along the columns and one row per time slice.
    """
    if not field_.is_spacetime:
        return emit_series(field_series(field_, names=[name]), formats, directory, stem, metadata)
    _ensure_dir(directory)
    base = os.path.join(directory, stem)
    grid = field_.grid
    times, xs = grid.mesh()
    written = []
    for kind in formats:
        if kind is OutputFormat.CSV:
            series = Series({"t": times.ravel(), "x": xs.ravel(), name: field_.values.ravel()},
                            {"t": "s", "x": "m", name: field_.quantity.unit})
            write_csv(series, base + ".csv")
            written.append(base + ".csv")
        elif kind is OutputFormat.JSON:
            write_json({"x": grid.coordinates(), "t": grid.times(), "quantity": field_.quantity.value,
                        "unit": field_.quantity.unit, "values": field_.values, "flags": list(field_.flags),
                        "metadata": metadata or {}}, base + ".json")
            written.append(base + ".json")
        elif kind is OutputFormat.GNUPLOT:
            write_matrix(grid.coordinates(), grid.times(), field_.values, base + ".dat")
            write_gp_stub(base + ".gp", stem + ".dat", "x", "t", matrix=True)
            written += [base + ".dat", base + ".gp"]
    return written
