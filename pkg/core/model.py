from dataclasses import dataclass, field
from enum import Enum
from typing import Tuple, Union

import numpy as np

from core.errors import ValidationError

ARTIFACT_VERSION = "0.1.0"

# CODATA 2018
G_SI = 6.67430e-11
C_SI = 299792458.0


class UnitMode(str, Enum):
    SI = "si"
    NATURAL = "natural"


class Quantity(str, Enum):
    ENERGY_DENSITY = "energy_density"
    CURVATURE = "curvature"

    @property
    def unit(self) -> str:
        return "J/m^3" if self is Quantity.ENERGY_DENSITY else "1/m^2"


@dataclass(frozen=True)
class PhysicalConstants:
    """
    Gravitational constant and speed of light used by every curvature computation.

    Natural mode pins G = c = 1 and is meant for the unitless chain simulation.
    """

    G: float = G_SI
    c: float = C_SI
    unit_mode: UnitMode = UnitMode.SI

    def __post_init__(self):
        object.__setattr__(self, "unit_mode", UnitMode(self.unit_mode))
        if not (self.G > 0 and self.c > 0):
            raise ValidationError(f"constants must be positive, got G={self.G}, c={self.c}")
        if self.unit_mode is UnitMode.NATURAL and (self.G != 1.0 or self.c != 1.0):
            raise ValidationError(f"natural units require G == c == 1, got G={self.G}, c={self.c}")

    @classmethod
    def si(cls) -> "PhysicalConstants":
        return cls()

    @classmethod
    def natural(cls) -> "PhysicalConstants":
        return cls(G=1.0, c=1.0, unit_mode=UnitMode.NATURAL)

    @classmethod
    def for_mode(cls, mode: Union[UnitMode, str]) -> "PhysicalConstants":
        return cls.natural() if UnitMode(mode) is UnitMode.NATURAL else cls.si()


@dataclass(frozen=True)
class Grid1D:
    x_min: float
    x_max: float
    n_x: int

    def __post_init__(self):
        if int(self.n_x) != self.n_x or self.n_x < 2:
            raise ValidationError(f"n_x must be an integer >= 2, got {self.n_x}")
        if not (np.isfinite(self.x_min) and np.isfinite(self.x_max)) or not self.x_min < self.x_max:
            raise ValidationError(f"x_min must be below x_max, got [{self.x_min}, {self.x_max}]")
        object.__setattr__(self, "n_x", int(self.n_x))

    @property
    def spacing(self) -> float:
        return (self.x_max - self.x_min) / (self.n_x - 1)

    @property
    def shape(self) -> Tuple[int]:
        return (self.n_x,)

    @property
    def n_points(self) -> int:
        return self.n_x

    def coordinates(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_x)

    def covers(self, lower: float, upper: float) -> bool:
        return self.x_min <= lower and upper <= self.x_max


@dataclass(frozen=True)
class GridST:
    """Space-time lattice. Values on it are stored with shape (n_t, n_x), time outer."""

    space: Grid1D
    t_min: float
    t_max: float
    n_t: int

    def __post_init__(self):
        if int(self.n_t) != self.n_t or self.n_t < 2:
            raise ValidationError(f"n_t must be an integer >= 2, got {self.n_t}")
        if not (np.isfinite(self.t_min) and np.isfinite(self.t_max)) or not self.t_min < self.t_max:
            raise ValidationError(f"t_min must be below t_max, got [{self.t_min}, {self.t_max}]")
        object.__setattr__(self, "n_t", int(self.n_t))

    @property
    def time_spacing(self) -> float:
        return (self.t_max - self.t_min) / (self.n_t - 1)

    @property
    def spacing(self) -> float:
        return self.space.spacing

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.n_t, self.space.n_x)

    @property
    def n_points(self) -> int:
        return self.n_t * self.space.n_x

    def coordinates(self) -> np.ndarray:
        return self.space.coordinates()

    def times(self) -> np.ndarray:
        return np.linspace(self.t_min, self.t_max, self.n_t)

    def mesh(self) -> Tuple[np.ndarray, np.ndarray]:
        """(T, X) arrays of shape (n_t, n_x)."""
        return np.meshgrid(self.times(), self.coordinates(), indexing="ij")


def make_grid_st(space: Grid1D, t_min: float, t_max: float, n_t: int) -> GridST:
    return GridST(space, t_min, t_max, n_t)


Grid = Union[Grid1D, GridST]


@dataclass(frozen=True)
class ScalarField:
    """
    Sampled energy density or curvature on a grid.

    :param grid: 1D spatial grid or space-time grid
    :param values: samples, shape (n_x,) or (n_t, n_x); stored read-only
    :param quantity: what the samples represent
    :param flags: free-form markers raised while computing the field (e.g. superluminal_pattern)
    """

    grid: Grid
    values: np.ndarray
    quantity: Quantity
    flags: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        values = np.array(self.values, dtype=np.float64)
        if values.shape != self.grid.shape:
            raise ValidationError(f"values of shape {values.shape} do not match grid shape {self.grid.shape}")
        if not np.all(np.isfinite(values)):
            raise ValidationError("field values must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "quantity", Quantity(self.quantity))
        object.__setattr__(self, "flags", tuple(self.flags))

    @property
    def is_spacetime(self) -> bool:
        return isinstance(self.grid, GridST)

    def scaled(self, factor: float, quantity: Quantity = None) -> "ScalarField":
        return ScalarField(self.grid, self.values * factor, quantity or self.quantity, self.flags)
