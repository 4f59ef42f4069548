"""Quadratic Hamiltonians, the symplectic form and the dynamical matrix.

A Hamiltonian is H = (1/2) eta^T B eta with eta = (X_1..X_n, P_1..P_n) the
canonical operator vector and B a real symmetric 2n x 2n matrix.  Units are
hbar = 1 and unit mass throughout.  The Heisenberg equations of motion are
generated by the dynamical matrix JB, where J is the symplectic form.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

import numpy as np

from .errors import DimensionMismatch, InvalidInput, NotSymmetric

# Inputs whose relative asymmetry exceeds this are rejected; below it they
# are silently replaced by the symmetric part.
SYMMETRY_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class QuadraticHamiltonian:
    """Validated coefficient matrix of a quadratic Hamiltonian.

    Attributes:
        n: number of degrees of freedom.
        B: real symmetric 2n x 2n coefficient matrix in the canonical
           ordering (X_1..X_n, P_1..P_n).  Stored read-only.
    """

    n: int
    B: np.ndarray

    def __post_init__(self):
        if self.n < 1:
            raise DimensionMismatch(f"need n >= 1, got n={self.n}")
        B = np.asarray(self.B, dtype=float)
        if B.shape != (2 * self.n, 2 * self.n):
            raise DimensionMismatch(
                f"B must be {2 * self.n}x{2 * self.n} for n={self.n}, got {B.shape}"
            )
        scale = float(np.max(np.abs(B)))
        asym = float(np.max(np.abs(B - B.T)))
        if asym > SYMMETRY_RTOL * scale:
            raise NotSymmetric(
                f"B is not symmetric: max |B - B^T| = {asym:.3e} "
                f"exceeds {SYMMETRY_RTOL:.0e} * max|B| = {SYMMETRY_RTOL * scale:.3e}"
            )
        B = 0.5 * (B + B.T)
        B.flags.writeable = False
        object.__setattr__(self, "B", B)


def build_hamiltonian(n: int, B: np.ndarray) -> QuadraticHamiltonian:
    """Validate and symmetrize B, returning the immutable Hamiltonian value."""
    return QuadraticHamiltonian(n=int(n), B=B)


def symplectic_form(n: int) -> np.ndarray:
    """Return the 2n x 2n block matrix [[0, 1], [-1, 0]].

    It satisfies J^T = -J, J^2 = -1 and det(J) = 1, and encodes the canonical
    commutators as [eta_a, eta_b] = i J_ab.
    """
    if n < 1:
        raise DimensionMismatch(f"need n >= 1, got n={n}")
    J = np.zeros((2 * n, 2 * n))
    J[:n, n:] = np.eye(n)
    J[n:, :n] = -np.eye(n)
    return J


def dynamical_matrix(ham: QuadraticHamiltonian) -> np.ndarray:
    """Return JB, the generator of Heisenberg evolution eta(t) = exp(JB t) eta."""
    return symplectic_form(ham.n) @ ham.B


def hamiltonian_from_json(source: str | bytes | dict[str, Any]) -> QuadraticHamiltonian:
    """Build a Hamiltonian from a JSON document {"n": int, "B": [[...], ...]}.

    Raises InvalidInput (codes "invalid_json", "missing_field", "bad_type"),
    DimensionMismatch or NotSymmetric for rejected documents.
    """
    if isinstance(source, (str, bytes)):
        try:
            doc = json.loads(source)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"not valid JSON: {exc}", code="invalid_json") from exc
    else:
        doc = source
    if not isinstance(doc, dict):
        raise InvalidInput("top-level JSON value must be an object", code="bad_type")
    for key in ("n", "B"):
        if key not in doc:
            raise InvalidInput(f"missing required field {key!r}", code="missing_field")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise InvalidInput('"n" must be an integer', code="bad_type")
    try:
        B = np.array(doc["B"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f'"B" must be a numeric matrix: {exc}', code="bad_type") from exc
    if B.ndim != 2:
        raise DimensionMismatch(f'"B" must be a 2-D matrix, got {B.ndim} dimensions')
    return build_hamiltonian(n, B)
