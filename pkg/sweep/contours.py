from typing import List

import numpy as np
from contourpy import LineType, contour_generator

from core.errors import ValidationError
from sweep.grid_sweep import AxisScale, Contour, SweepResult


def _to_parameter(coords: np.ndarray, axis) -> np.ndarray:
    values = 10 ** coords if axis.scale is AxisScale.LOG10 else coords
    return np.clip(values, axis.min, axis.max)


def extract_contour(result: SweepResult, level: float) -> List[Contour]:
    """
    Iso-level polylines of a 2D sweep by marching squares with linear interpolation along cell edges.

    Log-scaled axes are contoured in log10 coordinates, and results marked log_values are contoured
    on log10 of their values; points are always returned in parameter units, as (axis 1, axis 2).
    A level outside the value range gives an empty list.
    """
    if len(result.axes) != 2:
        raise ValidationError("contours need a 2D sweep")
    requested = float(level)
    z = result.values
    if result.log_values:
        if not level > 0:
            return []
        z, level = np.log10(z), np.log10(level)
    if not z.min() <= level <= z.max():
        return []

    outer, inner = result.axes
    # contourpy takes z as (ny, nx): axis 1 runs along y, axis 2 along x
    generator = contour_generator(inner.plot_coordinates(), outer.plot_coordinates(), z,
                                  name="serial", line_type=LineType.Separate)
    contours = []
    for line in generator.lines(level):
        if len(line) < 2:
            continue
        points = np.column_stack([_to_parameter(line[:, 1], outer), _to_parameter(line[:, 0], inner)])
        closed = bool(np.array_equal(line[0], line[-1]) and len(line) > 2)
        contours.append(Contour(requested, points, closed))
    return contours


def add_contours(result: SweepResult, levels) -> SweepResult:
    for level in levels:
        result.contours.extend(extract_contour(result, level))
    return result


def level_crossings(result: SweepResult, level: float) -> List[float]:
    """Axis values where a 1D sweep crosses level, interpolated linearly in plot coordinates."""
    if len(result.axes) != 1:
        raise ValidationError("level crossings need a 1D sweep")
    axis = result.axes[0]
    x = axis.plot_coordinates()
    y = result.values - level
    crossings = []
    for i in np.flatnonzero(np.sign(y[:-1]) * np.sign(y[1:]) <= 0):
        if y[i] == y[i + 1]:
            continue
        at = x[i] - y[i] * (x[i + 1] - x[i]) / (y[i + 1] - y[i])
        crossing = float(_to_parameter(np.array([at]), axis)[0])
        if not crossings or crossing != crossings[-1]:
            crossings.append(crossing)
    return crossings
