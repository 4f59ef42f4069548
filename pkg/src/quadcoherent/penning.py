"""Asymmetric Penning trap: Hamiltonian builder and closed-form reference.

A charged particle (unit mass, hbar = 1) in the trap is governed by

    H = P^2/2 + (omega_c/2)(X P_y - Y P_x)
        + (omega_x^2 X^2 + omega_y^2 Y^2 + omega_z^2 Z^2)/2,

with omega_x^2 = omega_c^2/4 - (omega_z^2/2)(1 + epsilon) and
omega_y^2 = omega_c^2/4 - (omega_z^2/2)(1 - epsilon).  For |epsilon| < 1 and
0 < delta = 2 omega_z^2 / omega_c^2 < 1 all mode frequencies are real, so the
system is always in the trap regime.

The closed forms below (frequencies, Gaussian matrix entries, extremal
energy, uncertainty products) are evaluated on a separate code path with no
helpers shared with the generic spectral pipeline, so agreement between the
two is a genuine cross-check.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParams, NumericalBreakdown
from .model import QuadraticHamiltonian, build_hamiltonian

RADICAND_ATOL = 1e-12

# Canonical slot -> index in the trap-adapted ordering (X, Y, P_x, P_y, Z, P_z).
# The library's canonical ordering is (X, Y, Z, P_x, P_y, P_z).
_TRAP_INDEX_OF_CANONICAL = (0, 1, 4, 2, 3, 5)


def trap_ordering_to_canonical(matrix: np.ndarray) -> np.ndarray:
    """Permute a 6x6 matrix from the trap-adapted operator ordering
    (X, Y, P_x, P_y, Z, P_z) into the canonical (X, Y, Z, P_x, P_y, P_z)."""
    idx = np.asarray(_TRAP_INDEX_OF_CANONICAL)
    return np.asarray(matrix)[np.ix_(idx, idx)]


@dataclass(frozen=True)
class PenningParams:
    """Trap parameters: cyclotron frequency, axial frequency, asymmetry."""

    omega_c: float
    omega_z: float
    epsilon: float

    def __post_init__(self):
        if not (self.omega_c > 0 and self.omega_z > 0):
            raise InvalidParams(
                f"frequencies must be positive, got omega_c={self.omega_c}, "
                f"omega_z={self.omega_z}"
            )
        if not abs(self.epsilon) < 1:
            raise InvalidParams(f"need |epsilon| < 1, got {self.epsilon}")
        if not 0 < self.delta < 1:
            raise InvalidParams(
                f"need 0 < 2 omega_z^2/omega_c^2 < 1, got delta={self.delta}"
            )

    @property
    def delta(self) -> float:
        return 2.0 * self.omega_z**2 / self.omega_c**2

    @classmethod
    def from_delta(cls, delta: float, epsilon: float, omega_c: float = 2.0) -> "PenningParams":
        """Parametrize by (delta, epsilon) at fixed omega_c."""
        if not 0 < delta < 1:
            raise InvalidParams(f"need 0 < delta < 1, got {delta}")
        return cls(omega_c=omega_c, omega_z=omega_c * math.sqrt(delta / 2.0), epsilon=epsilon)


@dataclass(frozen=True, eq=False)
class PenningClosedForms:
    """Closed-form trap data: frequencies, Gaussian entries, energies."""

    omega: tuple[float, float, float]   # (omega_1, omega_2, omega_3)
    R: float
    gamma: tuple[int, int, int]         # (+1, -1, +1)
    a11: float
    a12: complex                        # purely imaginary
    a22: float
    a33: float
    E000: float
    heisenberg_xy: float                # Delta X Delta P_x = Delta Y Delta P_y
    t: tuple[complex, complex, complex]


def penning_hamiltonian(params: PenningParams) -> QuadraticHamiltonian:
    """Assemble the trap's coefficient matrix in canonical ordering.

    omega_x^2 and omega_y^2 may be negative; the quadratic form need not be
    positive for the trap regime to hold.
    """
    oc, oz, eps = params.omega_c, params.omega_z, params.epsilon
    wx2 = oc**2 / 4.0 - oz**2 / 2.0 * (1.0 + eps)
    wy2 = oc**2 / 4.0 - oz**2 / 2.0 * (1.0 - eps)
    B = np.zeros((6, 6))
    B[0, 0] = wx2
    B[1, 1] = wy2
    B[2, 2] = oz**2
    B[3, 3] = B[4, 4] = B[5, 5] = 1.0
    B[0, 4] = B[4, 0] = oc / 2.0    # (omega_c/2) X P_y
    B[1, 3] = B[3, 1] = -oc / 2.0   # -(omega_c/2) Y P_x
    return build_hamiltonian(3, B)


def penning_closed_forms(params: PenningParams) -> PenningClosedForms:
    """Evaluate the closed-form mode data of the asymmetric trap.

    R = sqrt(4(1 - delta) + delta^2 epsilon^2) splits the radial frequencies
    omega_{1,2} = (omega_c/2) sqrt(2 - delta +- R); the axial mode is
    untouched, omega_3 = omega_z.  The Gaussian matrix is diagonal in the
    axial sector (a33 = omega_3) while the radial block has real a11, a22 and
    purely imaginary a12.
    """
    oc, oz, eps = params.omega_c, params.omega_z, params.epsilon
    delta = params.delta
    R2 = 4.0 * (1.0 - delta) + delta**2 * eps**2
    if R2 < RADICAND_ATOL:
        raise NumericalBreakdown(f"radicand of R too small: {R2:.3e}")
    R = math.sqrt(R2)
    for radicand in (2.0 - delta + R, 2.0 - delta - R):
        if abs(radicand) < RADICAND_ATOL:
            raise NumericalBreakdown(f"frequency radicand too small: {radicand:.3e}")
    w1 = oc / 2.0 * math.sqrt(2.0 - delta + R)
    w2 = oc / 2.0 * math.sqrt(2.0 - delta - R)
    w3 = oz

    f1a = oc / 4.0 * (R - delta * eps)
    f1b = 1j * oc**2 / (8.0 * w1) * (2.0 * (1.0 - delta) + delta * eps + R)
    f1c = -1j * oc / (4.0 * w1) * (2.0 - delta * eps + R)
    f2a = -oc / 4.0 * (R + delta * eps)
    f2b = 1j * oc**2 / (8.0 * w2) * (2.0 * (1.0 - delta) + delta * eps - R)
    f2c = -1j * oc / (4.0 * w2) * (2.0 - delta * eps - R)

    rad1 = 2j * (f1a * f1c - f1b)
    rad2 = 2j * (f2b - f2a * f2c)
    denom = f1c + f2c
    for value, name in ((rad1, "t1"), (rad2, "t2"), (denom, "a-denominator")):
        if abs(value) < RADICAND_ATOL:
            raise NumericalBreakdown(f"{name} radicand/denominator too small: {value:.3e}")
    t1 = 1.0 / cmath.sqrt(rad1)
    t2 = 1.0 / cmath.sqrt(rad2)
    t3 = 1.0 / math.sqrt(2.0 * w3)

    a11 = -1j * (f1a - f2a) / denom
    a12 = 1j * (f1b + f2b) / denom
    a22 = 1j * (f1c * f2b - f2c * f1b) / denom
    a33 = w3
    for value, name in ((a11, "a11"), (a22, "a22")):
        if abs(value.imag) > 1e-10 * abs(value) or value.real <= 0:
            raise NumericalBreakdown(f"{name} = {value:.6e} not real positive")
    if abs(a12.real) > 1e-10 * max(1.0, abs(a12)):
        raise NumericalBreakdown(f"a12 = {a12:.6e} not purely imaginary")

    E000 = 0.5 * (w1 - w2 + w3)
    heis = 0.5 * math.sqrt(1.0 + abs(a12) ** 2 / (a11.real * a22.real))
    return PenningClosedForms(
        omega=(w1, w2, w3),
        R=R,
        gamma=(1, -1, 1),
        a11=float(a11.real),
        a12=complex(0.0, a12.imag),
        a22=float(a22.real),
        a33=float(a33),
        E000=E000,
        heisenberg_xy=heis,
        t=(complex(t1), complex(t2), complex(t3)),
    )


def uncertainty_surface(
    deltas: np.ndarray, epsilons: np.ndarray, omega_c: float = 2.0
) -> np.ndarray:
    """Closed-form uncertainty products on a (delta, epsilon) grid.

    Returns an array of shape (len(deltas), len(epsilons), 3) holding
    (Delta X Delta P_x, Delta Y Delta P_y, Delta Z Delta P_z) per point; the
    first two coincide and the axial product is exactly 1/2.
    """
    out = np.empty((len(deltas), len(epsilons), 3))
    for i, d in enumerate(deltas):
        for j, e in enumerate(epsilons):
            cf = penning_closed_forms(PenningParams.from_delta(d, e, omega_c))
            out[i, j] = (cf.heisenberg_xy, cf.heisenberg_xy, 0.5)
    return out
