import warnings
from dataclasses import dataclass, field

import numpy as np
from numba import njit, prange

from core.errors import NumericalError, ValidationError
from core.model import GridST, PhysicalConstants, Quantity, ScalarField
from curvature.static import SignConvention, einstein_factor
from sources.stress_energy import COVERAGE_WIDTHS, GaussianPulse, eval_gaussian_t00

# slack when comparing c*dt against dx and when flooring light-cone radii
_CONE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class QixChainConfig:
    """
    Chain of QET events fired one gate interval apart, each displaced by spacing from the previous one.

    tau is the temporal width of every event; None means the light-crossing time sigma / c.
    """

    n_events: int
    spacing: float
    sigma: float
    gate_interval: float
    epsilon: float = 1.0
    constants: PhysicalConstants = field(default_factory=PhysicalConstants.natural)
    tau: float = None

    def __post_init__(self):
        if int(self.n_events) != self.n_events or self.n_events < 1:
            raise ValidationError(f"n_events must be an integer >= 1, got {self.n_events}")
        for name in ("spacing", "sigma", "gate_interval", "epsilon"):
            if not getattr(self, name) > 0:
                raise ValidationError(f"{name} must be > 0, got {getattr(self, name)}")
        if self.tau is not None and not self.tau > 0:
            raise ValidationError(f"tau must be > 0, got {self.tau}")

    @property
    def event_tau(self) -> float:
        return self.sigma / self.constants.c if self.tau is None else self.tau

    @property
    def v_eff(self) -> float:
        return self.spacing / self.gate_interval

    @property
    def superluminal(self) -> bool:
        return self.v_eff > self.constants.c

    def events(self):
        for k in range(self.n_events):
            yield GaussianPulse(self.epsilon, x0=k * self.spacing, t0=k * self.gate_interval,
                                sigma=self.sigma, tau=self.event_tau)


@njit(cache=True)
def _row_prefix_sums(source):
    n_t, n_x = source.shape
    prefix = np.zeros((n_t, n_x + 1))
    for m in range(n_t):
        acc = 0.0
        for j in range(n_x):
            acc += source[m, j]
            prefix[m, j + 1] = acc
    return prefix


@njit(parallel=True, cache=True)
def _light_cone_sums(source, radii):
    """
    out[n, i] = sum over m <= n of sum over |j - i| <= radii[n - m] of source[m, j].
    Each output slice is independent, so slices run in parallel without changing the result.
    """
    n_t, n_x = source.shape
    prefix = _row_prefix_sums(source)
    out = np.zeros((n_t, n_x))
    for n in prange(n_t):
        for i in range(n_x):
            total = 0.0
            for m in range(n + 1):
                r = radii[n - m]
                lo = max(i - r, 0)
                hi = min(i + r, n_x - 1)
                total += prefix[m, hi + 1] - prefix[m, lo]
            out[n, i] = total
    return out


def cone_radii(grid: GridST, c: float) -> np.ndarray:
    """Light-cone half width, in cells, reached after k time steps."""
    lags = np.arange(grid.n_t)
    ratio = c * grid.time_spacing / grid.spacing
    return np.floor(lags * ratio + _CONE_TOLERANCE).astype(np.int64)


def check_cfl(grid: GridST, c: float):
    if c * grid.time_spacing > grid.spacing * (1 + _CONE_TOLERANCE):
        raise ValidationError(f"c*dt = {c * grid.time_spacing} exceeds dx = {grid.spacing}; refine the time axis")


def solve_retarded(source: ScalarField, constants: PhysicalConstants = PhysicalConstants(),
                   sign: SignConvention = SignConvention.DIP_NEGATIVE, kappa: float = 1.0,
                   calibration: float = 1.0) -> ScalarField:
    """
    Curvature from a space-time energy density through the 1+1D retarded kernel (c/2) * Theta(c(t-t') - |x-x'|).

    dR = s * 8 pi G * kappa * calibration * sum of kernel * T00 * dx * dt over the discrete past light cone.
    An impulse of weight W = amplitude * dx * dt therefore yields the plateau s * 8 pi G * kappa * (c/2) * W
    everywhere inside its future light cone and exactly zero outside it.

    :param source: energy density on a GridST
    :param kappa: kernel normalization, 1.0 by default (see DESIGN.md)
    """
    if source.quantity is not Quantity.ENERGY_DENSITY:
        raise ValidationError(f"solve_retarded expects an energy density field, got {source.quantity.value}")
    if not source.is_spacetime:
        raise ValidationError("solve_retarded needs a source sampled on a space-time grid")
    grid = source.grid
    check_cfl(grid, constants.c)

    sums = _light_cone_sums(np.ascontiguousarray(source.values), cone_radii(grid, constants.c))
    scale = einstein_factor(constants, sign, calibration) * kappa * (constants.c / 2) \
        * grid.spacing * grid.time_spacing
    values = scale * sums
    if not np.all(np.isfinite(values)):
        raise NumericalError("retarded solve produced non-finite curvature")
    return ScalarField(grid, values, Quantity.CURVATURE, source.flags)


def chain_t00(config: QixChainConfig, grid: GridST) -> ScalarField:
    """Energy density of the whole firing schedule on the space-time grid."""
    reach = COVERAGE_WIDTHS * config.sigma
    last_x = (config.n_events - 1) * config.spacing
    last_t = (config.n_events - 1) * config.gate_interval
    if not grid.space.covers(-reach, last_x + reach):
        raise ValidationError(f"grid [{grid.space.x_min}, {grid.space.x_max}] does not cover events "
                              f"[0, {last_x}] +- {COVERAGE_WIDTHS} sigma")
    if not (grid.t_min <= 0 and last_t <= grid.t_max):
        raise ValidationError(f"time axis [{grid.t_min}, {grid.t_max}] does not cover firing times [0, {last_t}]")

    times, xs = grid.mesh()
    values = np.zeros(grid.shape)
    for event in config.events():
        values += eval_gaussian_t00(event, xs, times)

    flags = ()
    if config.superluminal:
        warnings.warn(f"chain pattern speed v_eff = {config.v_eff:.4g} exceeds c = {config.constants.c}")
        flags = ("superluminal_pattern",)
    return ScalarField(grid, values, Quantity.ENERGY_DENSITY, flags)


def simulate_qix_chain(config: QixChainConfig, grid: GridST,
                       sign: SignConvention = SignConvention.DIP_NEGATIVE, kappa: float = 1.0,
                       calibration: float = 1.0) -> ScalarField:
    return solve_retarded(chain_t00(config, grid), config.constants, sign, kappa, calibration)
