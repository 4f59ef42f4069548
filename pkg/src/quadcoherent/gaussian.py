"""Extremal-state Gaussian, coherent-state labels and wave functions.

Writing each annihilation operator as B_j = i P . alpha_j + X . beta_j, the
state annihilated by all of them is the Gaussian

    phi_0(x) = c exp(-(1/2) x^T a x),

where the complex symmetric matrix a solves a alpha_j = beta_j for every j
and square integrability requires Re(a) positive definite.  A coherent state
with label z is the displaced Gaussian with real displacement vectors
Gamma (positions) and Sigma (momenta) built linearly from z.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    AsymmetricSolution,
    DimensionMismatch,
    NotNormalizable,
    SingularAlphaMatrix,
)
from .spectral import LadderSystem

ALPHA_COND_MAX = 1e10
ASYMMETRY_ATOL = 1e-8


@dataclass(frozen=True, eq=False)
class LinearFormDecomposition:
    """Position/momentum coefficients of the ladder rows.

    Row j of beta and alpha holds beta_j and alpha_j, so that the stored
    annihilation row reassembles as b_j = (beta_j, i alpha_j).
    """

    alpha: np.ndarray   # (n, n) complex, row j = alpha_j
    beta: np.ndarray    # (n, n) complex, row j = beta_j

    @property
    def n(self) -> int:
        return self.alpha.shape[0]

    def rows(self) -> np.ndarray:
        """Reassemble the annihilation coefficient rows over eta."""
        return np.hstack([self.beta, 1j * self.alpha])


@dataclass(frozen=True, eq=False)
class GaussianExtremalState:
    """Gaussian matrix and normalization of the extremal wave function."""

    a: np.ndarray       # (n, n) complex symmetric, Re(a) positive definite
    c_abs: float        # (det Re a)^(1/4) / pi^(n/4)

    @property
    def n(self) -> int:
        return self.a.shape[0]


@dataclass(frozen=True, eq=False)
class CoherentState:
    """Coherent-state label with its real displacement vectors."""

    z: np.ndarray       # (n,) complex
    Gamma: np.ndarray   # (n,) real, mean positions
    Sigma: np.ndarray   # (n,) real, mean momenta


def decompose_linear_forms(ladder: LadderSystem) -> LinearFormDecomposition:
    """Split each annihilation row b_j into (alpha_j, beta_j)."""
    n = ladder.n
    beta = ladder.b[:, :n].copy()
    alpha = -1j * ladder.b[:, n:]
    return LinearFormDecomposition(alpha=alpha, beta=beta)


def extremal_matrix(decomp: LinearFormDecomposition) -> GaussianExtremalState:
    """Solve a alpha_j = beta_j for the Gaussian matrix of the extremal state.

    The n conditions are solved at once as a = [beta_1..beta_n][alpha_1..alpha_n]^-1.
    The raw solution must come out symmetric (the system is overdetermined in
    that sense); its asymmetry is a consistency diagnostic before the matrix
    is symmetrized.  Square integrability requires Re(a) positive definite.
    """
    n = decomp.n
    A = decomp.alpha.T          # columns alpha_j
    Bm = decomp.beta.T          # columns beta_j
    cond = float(np.linalg.cond(A))
    if not np.isfinite(cond) or cond > ALPHA_COND_MAX:
        raise SingularAlphaMatrix(f"alpha matrix condition number {cond:.3e}")
    a_raw = Bm @ np.linalg.inv(A)
    scale = max(1.0, float(np.max(np.abs(a_raw))))
    asym = float(np.max(np.abs(a_raw - a_raw.T)))
    if asym > ASYMMETRY_ATOL * scale:
        raise AsymmetricSolution(
            f"Gaussian matrix asymmetry {asym:.3e} signals inconsistent ladder input"
        )
    a = 0.5 * (a_raw + a_raw.T)
    re_eigs = np.linalg.eigvalsh(a.real)
    if np.min(re_eigs) <= 0.0:
        raise NotNormalizable(
            f"Re(a) not positive definite (eigenvalues {re_eigs}), state not square integrable"
        )
    sign, logdet = np.linalg.slogdet(a.real)
    c_abs = float(np.exp(0.25 * logdet) * np.pi ** (-n / 4))
    a = a.copy()
    a.flags.writeable = False
    return GaussianExtremalState(a=a, c_abs=c_abs)


def _as_points(x: np.ndarray, n: int) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape == () and n == 1:
        x = x.reshape(1)
    if x.shape[-1] != n:
        raise DimensionMismatch(f"points must have trailing dimension {n}, got {x.shape}")
    return x


def extremal_wavefunction(state: GaussianExtremalState, x: np.ndarray) -> np.ndarray:
    """Evaluate phi_0 at x, shape (..., n); the phase of c is fixed to +1."""
    x = _as_points(x, state.n)
    q = np.einsum("...i,ij,...j->...", x, state.a, x)
    return state.c_abs * np.exp(-0.5 * q)


def displacement_vectors(z: np.ndarray, decomp: LinearFormDecomposition) -> CoherentState:
    """Build Gamma = 2 Re sum_k z_k* alpha_k and Sigma = -2 Im sum_k z_k* beta_k."""
    z = np.asarray(z, dtype=complex).reshape(-1)
    if len(z) != decomp.n:
        raise DimensionMismatch(f"label needs {decomp.n} components, got {len(z)}")
    Gamma = 2.0 * np.real(z.conj() @ decomp.alpha)
    Sigma = -2.0 * np.imag(z.conj() @ decomp.beta)
    return CoherentState(z=z, Gamma=Gamma, Sigma=Sigma)


def coherent_wavefunction(
    state: GaussianExtremalState, coh: CoherentState, x: np.ndarray
) -> np.ndarray:
    """Evaluate phi_z(x) = e^{-i Gamma.Sigma/2} e^{i Sigma.x} phi_0(x - Gamma)."""
    x = _as_points(x, state.n)
    phase = np.exp(-0.5j * float(coh.Gamma @ coh.Sigma))
    plane = np.exp(1j * (x @ coh.Sigma))
    return phase * plane * extremal_wavefunction(state, x - coh.Gamma)


def coherent_wavefunction_expanded(
    state: GaussianExtremalState, coh: CoherentState, x: np.ndarray
) -> np.ndarray:
    """Same amplitude in the expanded form, a Gaussian times exp(linear in x).

    phi_z(x) = e^{-(1/2)(Gamma^T a + i Sigma).Gamma} e^{(Gamma^T a + i Sigma).x} phi_0(x).
    Used as an internal consistency check against the displaced form.
    """
    x = _as_points(x, state.n)
    w = state.a @ coh.Gamma + 1j * coh.Sigma
    front = np.exp(-0.5 * (w @ coh.Gamma))
    return front * np.exp(x @ w) * extremal_wavefunction(state, x)
