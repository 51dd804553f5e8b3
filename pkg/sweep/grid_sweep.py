from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Union

import numpy as np
from multiprocess import Pool
from tqdm import tqdm

from core.errors import NumericalError, ValidationError
from sweep.models import SweepModel, get_model

MAX_AXIS_POINTS = 2048
DEFAULT_AXIS_POINTS = 101


class AxisScale(str, Enum):
    LINEAR = "linear"
    LOG10 = "log10"


@dataclass(frozen=True)
class AxisSpec:
    param_name: str
    min: float
    max: float
    n_points: int = DEFAULT_AXIS_POINTS
    scale: AxisScale = AxisScale.LINEAR

    def __post_init__(self):
        object.__setattr__(self, "scale", AxisScale(self.scale))
        if int(self.n_points) != self.n_points or not 2 <= self.n_points <= MAX_AXIS_POINTS:
            raise ValidationError(f"axis '{self.param_name}': n_points must be an integer in "
                                  f"[2, {MAX_AXIS_POINTS}], got {self.n_points}")
        object.__setattr__(self, "n_points", int(self.n_points))
        if not self.min < self.max:
            raise ValidationError(f"axis '{self.param_name}': min must be below max, got [{self.min}, {self.max}]")
        if self.scale is AxisScale.LOG10 and not self.min > 0:
            raise ValidationError(f"axis '{self.param_name}': log10 axes need min > 0, got {self.min}")

    def values(self) -> np.ndarray:
        if self.scale is AxisScale.LOG10:
            return np.logspace(np.log10(self.min), np.log10(self.max), self.n_points)
        return np.linspace(self.min, self.max, self.n_points)

    def plot_coordinates(self) -> np.ndarray:
        """Coordinates in which the axis is uniform: log10 of the values on log axes."""
        return np.log10(self.values()) if self.scale is AxisScale.LOG10 else self.values()


@dataclass(frozen=True)
class Contour:
    """Iso-level polyline in parameter coordinates; points has shape (k, 2) as (axis 1, axis 2)."""

    level: float
    points: np.ndarray
    closed: bool


@dataclass
class SweepResult:
    """
    Model outputs on a 1D or 2D parameter grid.

    values has shape (n_1,) or (n_1, n_2) with axis 1 outer. Stored values are the raw model
    outputs; log_values only tells emitters and contour extraction to work on log10 of them.
    """

    model: str
    axes: List[AxisSpec]
    values: np.ndarray
    fixed: Dict[str, object]
    unit: str = "1"
    log_values: bool = False
    contours: List[Contour] = field(default_factory=list)
    metadata: Dict[str, object] = field(default_factory=dict)

    @property
    def shape(self):
        return tuple(axis.n_points for axis in self.axes)

    def axis_values(self) -> List[np.ndarray]:
        return [axis.values() for axis in self.axes]


def _evaluate_row(model: SweepModel, params: Dict[str, object], names: Sequence[str], outer: float,
                  inner: Optional[np.ndarray]) -> np.ndarray:
    point = dict(params)
    point[names[0]] = float(outer)
    if inner is None:
        return np.array([model(**point)])
    row = np.empty(len(inner))
    for j, value in enumerate(inner):
        point[names[1]] = float(value)
        row[j] = model(**point)
    return row


def run_sweep(model: Union[str, SweepModel], fixed: Dict[str, object], axes: Sequence[AxisSpec],
              workers: int = 1, log_values: bool = False, quiet: bool = False) -> SweepResult:
    """
    Evaluate a registered model at every point of a 1D or 2D axis grid.

    Rows (axis 1) are evaluated in order; with workers > 1 they are spread over a process pool whose
    ordered map keeps the result identical to the serial one.

    :param fixed: values for the model parameters that are not swept; the rest take model defaults
    :param log_values: mark the result for log10 treatment at emission and contour time
    """
    model = get_model(model) if isinstance(model, str) else model
    axes = list(axes)
    if len(axes) not in (1, 2):
        raise ValidationError(f"a sweep takes 1 or 2 axes, got {len(axes)}")
    names = [axis.param_name for axis in axes]
    if len(set(names)) != len(names):
        raise ValidationError(f"axes must sweep distinct parameters, got {names}")
    params = model.params(dict(fixed))
    missing = [name for name in names if name not in model.defaults]
    if missing:
        raise ValidationError(f"model '{model.name}' has no parameter(s) {', '.join(missing)} to sweep")

    outer = axes[0].values()
    inner = axes[1].values() if len(axes) == 2 else None
    jobs = [(model, params, names, value, inner) for value in outer]

    if workers > 1:
        with Pool(workers) as pool:
            rows = list(tqdm(pool.imap(lambda job: _evaluate_row(*job), jobs), total=len(jobs),
                             desc=model.name, disable=quiet))
    else:
        rows = [_evaluate_row(*job) for job in tqdm(jobs, desc=model.name, disable=quiet)]

    values = np.vstack(rows)
    if inner is None:
        values = values[:, 0]
    bad = np.argwhere(~np.isfinite(values))
    if len(bad):
        index = tuple(bad[0])
        coords = {name: float(axis.values()[i]) for name, axis, i in zip(names, axes, index)}
        raise NumericalError(f"model '{model.name}' returned {values[index]} at {coords}")
    if log_values and np.any(values <= 0):
        raise NumericalError(f"model '{model.name}' returned non-positive values; log10 output is undefined")

    return SweepResult(model.name, axes, values, params, model.unit, log_values)
