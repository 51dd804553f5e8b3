import numpy as np

from core.errors import ValidationError
from core.model import Grid1D, ScalarField


def peak_depth(field: ScalarField) -> float:
    """Most negative value of a 1D profile."""
    return float(field.values.min())


def _crossing(x0, y0, x1, y1, level):
    return x0 + (level - y0) * (x1 - x0) / (y1 - y0)


def fwhm(field: ScalarField) -> float:
    """
    Full width at half depth of a dip: distance between the outermost points where the profile
    reaches half its minimum, linearly interpolated between samples.
    """
    if not isinstance(field.grid, Grid1D):
        raise ValidationError("fwhm is defined for 1D profiles only")
    y = field.values
    depth = y.min()
    if not depth < 0:
        raise ValidationError("profile has no dip")
    half = depth / 2
    x = field.grid.coordinates()
    inside = np.flatnonzero(y <= half)
    first, last = inside[0], inside[-1]
    left = x[first] if first == 0 else _crossing(x[first - 1], y[first - 1], x[first], y[first], half)
    right = x[last] if last == len(y) - 1 else _crossing(x[last], y[last], x[last + 1], y[last + 1], half)
    return float(right - left)
