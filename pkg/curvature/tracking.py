import warnings
from dataclasses import dataclass

import numpy as np

from core.errors import ValidationError
from core.model import Quantity, ScalarField


@dataclass(frozen=True)
class DipTrack:
    """
    Per-slice curvature minimum and the fitted velocity of its motion.

    valid marks slices with a unique minimum; velocity is nan when the track is degenerate.
    """

    times: np.ndarray
    positions: np.ndarray
    values: np.ndarray
    valid: np.ndarray
    velocity: float
    degenerate: bool


def refine_minimum(x: np.ndarray, y: np.ndarray, idx: int):
    """Parabola through the three samples around idx; returns (x_min, y_min)."""
    if idx == 0 or idx == len(y) - 1:
        return x[idx], y[idx]
    y0, y1, y2 = y[idx - 1], y[idx], y[idx + 1]
    curvature = y0 - 2 * y1 + y2
    if curvature <= 0:
        return x[idx], y1
    offset = 0.5 * (y0 - y2) / curvature
    dx = x[idx + 1] - x[idx]
    return x[idx] + offset * dx, y1 - 0.25 * (y0 - y2) * offset


def track_dip(field: ScalarField, trim: float = 0.1) -> DipTrack:
    """
    Follow the curvature minimum slice by slice and fit its velocity by least squares,
    leaving out the first and last `trim` fraction of the slices.
    """
    if field.quantity is not Quantity.CURVATURE:
        raise ValidationError(f"track_dip expects a curvature field, got {field.quantity.value}")
    if not field.is_spacetime:
        raise ValidationError("track_dip needs a space-time field")
    if not 0 <= trim < 0.5:
        raise ValidationError(f"trim must lie in [0, 0.5), got {trim}")

    grid = field.grid
    xs = grid.coordinates()
    times = grid.times()
    positions = np.full(grid.n_t, np.nan)
    values = np.full(grid.n_t, np.nan)
    valid = np.zeros(grid.n_t, dtype=bool)

    for n, row in enumerate(field.values):
        if row.max() == row.min():
            continue
        idx = int(np.argmin(row))
        positions[n], values[n] = refine_minimum(xs, row, idx)
        valid[n] = True

    skip = int(np.floor(trim * grid.n_t))
    window = np.zeros(grid.n_t, dtype=bool)
    window[skip:grid.n_t - skip] = True
    used = valid & window

    if used.sum() < 2:
        warnings.warn("dip track is degenerate: fewer than two slices with a unique minimum")
        return DipTrack(times, positions, values, valid, float("nan"), True)

    velocity, _ = np.polyfit(times[used], positions[used], 1)
    return DipTrack(times, positions, values, valid, float(velocity), False)
