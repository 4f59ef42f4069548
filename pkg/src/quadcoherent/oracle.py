"""Brute-force grid oracle: quadrature norms, finite-difference ladders, moments.

Everything here deliberately avoids the closed-form machinery it is meant to
check.  Wave functions are sampled on rectangular grids, derivatives come
from 4th-order central differences (np.roll wraps the ends, so a margin of
cells is tracked per field and excluded from every quadrature), and moments
are plain Riemann sums, which converge spectrally fast for Gaussian tails.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DimensionMismatch, GridTooCoarse
from .gaussian import (
    CoherentState,
    GaussianExtremalState,
    LinearFormDecomposition,
    extremal_wavefunction,
)

MIN_COUNT = 32
COVERAGE_SIGMAS = 6.0
RESOLUTION_ATOL = 1e-4   # finite-difference residual budget on a known Gaussian
FOCK_NORM_ATOL = 1e-3
MAX_FOCK_QUANTA = 4


@dataclass(frozen=True, eq=False)
class Grid:
    """Rectangular grid given by per-axis (min, max, count), count >= 32."""

    axes: tuple[tuple[float, float, int], ...]
    coords: tuple[np.ndarray, ...] = field(init=False, repr=False)
    spacing: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        axes = tuple((float(lo), float(hi), int(count)) for lo, hi, count in self.axes)
        for lo, hi, count in axes:
            if count < MIN_COUNT:
                raise DimensionMismatch(f"grid needs >= {MIN_COUNT} points per axis, got {count}")
            if not hi > lo:
                raise DimensionMismatch(f"grid axis needs max > min, got ({lo}, {hi})")
        object.__setattr__(self, "axes", axes)
        coords = tuple(np.linspace(lo, hi, count) for lo, hi, count in axes)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "spacing", np.array([c[1] - c[0] for c in coords]))

    @property
    def ndim(self) -> int:
        return len(self.axes)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(count for _, _, count in self.axes)

    @property
    def cell(self) -> float:
        return float(np.prod(self.spacing))

    def points(self) -> np.ndarray:
        """All grid points, shape (*shape, ndim)."""
        return np.stack(np.meshgrid(*self.coords, indexing="ij"), axis=-1)

    def broadcast_coord(self, axis: int) -> np.ndarray:
        """Coordinate array of one axis shaped for broadcasting over the grid."""
        shape = [1] * self.ndim
        shape[axis] = self.shape[axis]
        return self.coords[axis].reshape(shape)


def grid_for_state(
    state: GaussianExtremalState,
    coherent: CoherentState | None = None,
    count: int | Sequence[int] = 128,
    coverage: float = COVERAGE_SIGMAS,
) -> Grid:
    """Auto-size a grid to cover `coverage` standard deviations per axis.

    The position density of the extremal state is a normal law with
    covariance (2 Re a)^-1; each axis spans +-(coverage * marginal sigma),
    widened by |Gamma| when a displaced state must fit too.
    """
    n = state.n
    counts = [count] * n if np.isscalar(count) else list(count)
    C = np.linalg.inv(2.0 * state.a.real)
    sig = np.sqrt(np.diag(C))
    shift = np.abs(coherent.Gamma) if coherent is not None else np.zeros(n)
    half = coverage * sig + shift
    return Grid(tuple((-half[i], half[i], counts[i]) for i in range(n)))


@dataclass(eq=False)
class SampledField:
    """Complex samples on a grid plus the width of the invalid boundary margin.

    Finite-difference stencils contaminate `margin` cells per side; those
    cells are excluded from every norm, inner product and moment.
    """

    grid: Grid
    values: np.ndarray
    margin: int = 0

    def interior(self) -> tuple[slice, ...]:
        m = self.margin
        if m == 0:
            return tuple(slice(None) for _ in self.grid.shape)
        return tuple(slice(m, s - m) for s in self.grid.shape)

    def norm2(self) -> float:
        sl = self.interior()
        return float(self.grid.cell * np.sum(np.abs(self.values[sl]) ** 2))

    def inner(self, other: "SampledField") -> complex:
        """Quadrature <self|other> over the common valid interior."""
        if other.grid is not self.grid and other.grid.axes != self.grid.axes:
            raise DimensionMismatch("fields live on different grids")
        m = max(self.margin, other.margin)
        sl = SampledField(self.grid, self.values, m).interior()
        return complex(self.grid.cell * np.sum(self.values[sl].conj() * other.values[sl]))


def sample(f: Callable[[np.ndarray], np.ndarray], grid: Grid) -> SampledField:
    """Sample a callable over the grid; f maps points (..., ndim) to amplitudes."""
    values = np.asarray(f(grid.points()), dtype=complex)
    if values.shape != grid.shape:
        raise DimensionMismatch(
            f"sampled values have shape {values.shape}, expected {grid.shape}"
        )
    return SampledField(grid=grid, values=values, margin=0)


def _diff4(values: np.ndarray, axis: int, h: float) -> np.ndarray:
    """4th-order central first derivative along one axis (ends wrap, see margin)."""
    return (
        np.roll(values, 2, axis)
        - 8.0 * np.roll(values, 1, axis)
        + 8.0 * np.roll(values, -1, axis)
        - np.roll(values, -2, axis)
    ) / (12.0 * h)


def gradient_axis(field: SampledField, axis: int) -> SampledField:
    """Finite-difference partial derivative along one axis; margin grows by 2."""
    vals = _diff4(field.values, axis, float(field.grid.spacing[axis]))
    return SampledField(grid=field.grid, values=vals, margin=field.margin + 2)


def apply_linear_form(
    alpha: np.ndarray, beta: np.ndarray, fld: SampledField
) -> SampledField:
    """Apply the operator alpha . grad + (beta . x) to a sampled field.

    This is the differential form of a ladder row B = i P . alpha + X . beta
    with P = -i grad.  The creation partner is obtained by passing
    (-conj(alpha), conj(beta)).
    """
    grid = fld.grid
    n = grid.ndim
    alpha = np.asarray(alpha, dtype=complex).reshape(-1)
    beta = np.asarray(beta, dtype=complex).reshape(-1)
    if len(alpha) != n or len(beta) != n:
        raise DimensionMismatch(f"coefficient vectors must have length {n}")
    out = np.zeros(grid.shape, dtype=complex)
    used_derivative = False
    for j in range(n):
        if alpha[j] != 0:
            out += alpha[j] * _diff4(fld.values, j, float(grid.spacing[j]))
            used_derivative = True
    scalar = np.zeros(grid.shape, dtype=complex)
    for j in range(n):
        if beta[j] != 0:
            scalar = scalar + beta[j] * grid.broadcast_coord(j)
    out += scalar * fld.values
    margin = fld.margin + (2 if used_derivative else 0)
    return SampledField(grid=grid, values=out, margin=margin)


def gradient_residual(state: GaussianExtremalState, grid: Grid) -> float:
    """Worst-axis relative error of the stencil gradient on the known Gaussian.

    The exact gradient of phi_0 is -(a x) phi_0, so this measures pure
    discretization error.  Used as the resolution guard.
    """
    fld = sample(lambda x: extremal_wavefunction(state, x), grid)
    norm = math.sqrt(SampledField(grid, fld.values, 2).norm2())
    worst = 0.0
    pts = grid.points()
    for j in range(grid.ndim):
        exact = -(pts @ state.a[j]) * fld.values
        approx = _diff4(fld.values, j, float(grid.spacing[j]))
        diff = SampledField(grid, approx - exact, 2)
        worst = max(worst, math.sqrt(diff.norm2()) / norm)
    return worst


def check_resolution(state: GaussianExtremalState, grid: Grid) -> None:
    resid = gradient_residual(state, grid)
    if resid > RESOLUTION_ATOL:
        raise GridTooCoarse(
            f"gradient residual {resid:.3e} on the reference Gaussian exceeds "
            f"{RESOLUTION_ATOL:.0e}"
        )


def fock_state(
    nvec: Sequence[int],
    decomp: LinearFormDecomposition,
    state: GaussianExtremalState,
    grid: Grid,
) -> SampledField:
    """Build |n_1..n_n> numerically by repeated creation operators on phi_0.

    Limited to sum(nvec) <= 4 to keep stencil error within budget; the result
    must come out unit-normalized within 1e-3 or the grid is too coarse.
    """
    nvec = np.asarray(nvec, dtype=int).reshape(-1)
    if len(nvec) != state.n:
        raise DimensionMismatch(f"occupation vector needs {state.n} entries")
    if np.any(nvec < 0):
        raise DimensionMismatch("occupations must be nonnegative")
    if int(np.sum(nvec)) > MAX_FOCK_QUANTA:
        raise DimensionMismatch(
            f"at most {MAX_FOCK_QUANTA} total quanta supported, got {int(np.sum(nvec))}"
        )
    check_resolution(state, grid)
    fld = sample(lambda x: extremal_wavefunction(state, x), grid)
    for j in range(state.n):
        for _ in range(int(nvec[j])):
            fld = apply_linear_form(-decomp.alpha[j].conj(), decomp.beta[j].conj(), fld)
    norm_factor = math.sqrt(float(np.prod([math.factorial(int(k)) for k in nvec])))
    fld.values = fld.values / norm_factor
    norm = math.sqrt(fld.norm2())
    if abs(norm - 1.0) > FOCK_NORM_ATOL:
        raise GridTooCoarse(
            f"Fock state norm {norm:.6f} deviates from 1 beyond {FOCK_NORM_ATOL}"
        )
    return fld


@dataclass(frozen=True, eq=False)
class GridMoments:
    """Quadrature moments: means of X and P and central covariance matrix."""

    mean_x: np.ndarray
    mean_p: np.ndarray
    sigma: np.ndarray   # (2n, 2n) symmetrized central second moments


def grid_moments(fld: SampledField) -> GridMoments:
    """First and second moments of a normalized field by quadrature.

    Momentum moments use the stencil gradient: <P_j> = Im <psi | d_j psi>,
    <P_i P_j> = <d_i psi | d_j psi>.  All integrals run over the interior at
    the derivative margin, and are divided by the norm on that same region.
    """
    grid = fld.grid
    n = grid.ndim
    base_norm = fld.norm2()
    if abs(base_norm - 1.0) > 1e-3:
        raise GridTooCoarse(f"field norm^2 {base_norm:.6f} is not 1, moments unreliable")
    dpsi = [gradient_axis(fld, j) for j in range(n)]
    m = max(f.margin for f in dpsi)
    sl = SampledField(grid, fld.values, m).interior()
    cell = grid.cell
    psi = fld.values[sl]
    w = np.abs(psi) ** 2
    W = float(cell * np.sum(w))
    coords = [np.broadcast_to(grid.broadcast_coord(j), grid.shape)[sl] for j in range(n)]
    mean_x = np.array([cell * np.sum(coords[j] * w) for j in range(n)]) / W
    dvals = [d.values[sl] for d in dpsi]
    mean_p = np.array(
        [(-1j * cell * np.sum(psi.conj() * dvals[j])).real for j in range(n)]
    ) / W
    sXX = np.empty((n, n))
    for i in range(n):
        for j in range(i, n):
            sXX[i, j] = sXX[j, i] = (
                cell * np.sum((coords[i] - mean_x[i]) * (coords[j] - mean_x[j]) * w) / W
            )
    sPP = np.empty((n, n))
    for i in range(n):
        for j in range(i, n):
            raw = (cell * np.sum(dvals[i].conj() * dvals[j])).real / W
            sPP[i, j] = sPP[j, i] = raw - mean_p[i] * mean_p[j]
    sXP = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            raw = (-1j * cell * np.sum(psi.conj() * (coords[i] - mean_x[i]) * dvals[j])).real / W
            sXP[i, j] = raw
    sigma = np.block([[sXX, sXP], [sXP.T, sPP]])
    return GridMoments(mean_x=mean_x, mean_p=mean_p, sigma=sigma)


def quadratic_form_energy(fld: SampledField, B: np.ndarray) -> float:
    """Rayleigh quotient <psi|H|psi>/<psi|psi> with H = (1/2) eta^T B eta.

    H acts by finite differences:
    (1/2) x^T Bxx x - (1/2) sum Bpp_jk d_j d_k - i sum Bxp_ij x_i d_j
    - (i/2) tr(Bxp), with second derivatives as two stacked stencils.
    """
    grid = fld.grid
    n = grid.ndim
    B = np.asarray(B, dtype=float)
    if B.shape != (2 * n, 2 * n):
        raise DimensionMismatch(f"B must be {2 * n}x{2 * n} for this grid")
    Bxx = B[:n, :n]
    Bxp = B[:n, n:]
    Bpp = B[n:, n:]
    dpsi = [gradient_axis(fld, j) for j in range(n)]
    quad = np.zeros(grid.shape)
    for i in range(n):
        for j in range(n):
            if Bxx[i, j] != 0:
                quad = quad + Bxx[i, j] * np.broadcast_to(
                    grid.broadcast_coord(i) * grid.broadcast_coord(j), grid.shape
                )
    Hv = 0.5 * quad * fld.values
    margin = fld.margin + 2
    for i in range(n):
        for j in range(n):
            if Bpp[i, j] != 0:
                dd = gradient_axis(dpsi[i], j)
                Hv = Hv - 0.5 * Bpp[i, j] * dd.values
                margin = max(margin, dd.margin)
            if Bxp[i, j] != 0:
                Hv = Hv - 1j * Bxp[i, j] * np.broadcast_to(
                    grid.broadcast_coord(i), grid.shape
                ) * dpsi[j].values
    Hv = Hv - 0.5j * np.trace(Bxp) * fld.values
    hfld = SampledField(grid, Hv, margin)
    base = SampledField(grid, fld.values, margin)
    return float(base.inner(hfld).real / base.norm2())
