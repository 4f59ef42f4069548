"""Moments, covariance matrix, uncertainty relations and time evolution.

Every coherent state shares the second moments of the extremal state, so the
covariance matrix is label-independent.  It is obtained from the linear
system generated by the vanishing extremal expectations of ordered ladder
pairs: <B_i B_j> = <B_i^dag B_j^dag> = <B_i^dag B_j> = 0, expanded over
<eta_a eta_b> = sigma_ab + (i/2) J_ab.  That gives n(2n+1) equations for the
n(2n+1) independent entries of the symmetric sigma.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, SingularMomentSystem
from .gaussian import CoherentState, GaussianExtremalState
from .model import symplectic_form
from .spectral import LadderSystem

MOMENT_RESIDUAL_ATOL = 1e-8
RS_MARGIN_FLOOR = -1e-10


@dataclass(frozen=True, eq=False)
class CovarianceReport:
    """Covariance matrix in canonical ordering with per-axis uncertainty data.

    heisenberg[i] is the product Delta X_i Delta P_i and rs_margin[i] the
    slack sigma_ii sigma_(n+i)(n+i) - sigma_(i)(n+i)^2 - 1/4 of the
    Robertson-Schrodinger bound, nonnegative for physical states.
    """

    sigma: np.ndarray      # (2n, 2n) real symmetric
    heisenberg: np.ndarray  # (n,)
    rs_margin: np.ndarray   # (n,)

    @property
    def n(self) -> int:
        return self.sigma.shape[0] // 2


@dataclass(frozen=True)
class HamiltonianStats:
    """Mean and variance of the Hamiltonian in a coherent state."""

    mean: float
    variance: float


def first_moments(coh: CoherentState) -> tuple[np.ndarray, np.ndarray]:
    """Mean positions and momenta: <X_j> = Gamma_j, <P_j> = Sigma_j.

    The extremal state has vanishing first moments (the ladder rows are
    linearly independent, forcing the trivial solution), so displacement is
    everything.
    """
    return coh.Gamma.copy(), coh.Sigma.copy()


def covariance(ladder: LadderSystem) -> CovarianceReport:
    """Solve the ordered-pair moment system for the covariance matrix."""
    n = ladder.n
    J = symplectic_form(n)
    pairs = [(a, c) for a in range(2 * n) for c in range(a, 2 * n)]
    col = {p: i for i, p in enumerate(pairs)}
    rows: list[np.ndarray] = []
    rhs: list[complex] = []

    def add_equation(p: np.ndarray, q: np.ndarray) -> None:
        row = np.zeros(len(pairs), dtype=complex)
        for (a, c), ci in col.items():
            if a == c:
                row[ci] = p[a] * q[a]
            else:
                row[ci] = p[a] * q[c] + p[c] * q[a]
        rows.append(row)
        rhs.append(-0.5j * (p @ J @ q))

    b = ladder.b
    for i in range(n):
        for j in range(i, n):
            add_equation(b[i], b[j])
    for i in range(n):
        for j in range(i, n):
            add_equation(b[i].conj(), b[j].conj())
    for i in range(n):
        for j in range(n):
            add_equation(b[i].conj(), b[j])
    M = np.array(rows)
    r = np.array(rhs)
    try:
        sol = np.linalg.solve(M, r)
    except np.linalg.LinAlgError as exc:
        raise SingularMomentSystem(f"moment system is singular: {exc}") from exc
    resid = float(np.max(np.abs(M @ sol - r)))
    scale = max(1.0, float(np.max(np.abs(sol))))
    if resid > MOMENT_RESIDUAL_ATOL * scale:
        raise SingularMomentSystem(f"moment system residual {resid:.3e}")
    if float(np.max(np.abs(sol.imag))) > MOMENT_RESIDUAL_ATOL * scale:
        raise SingularMomentSystem(
            f"covariance came out complex (max imag {np.max(np.abs(sol.imag)):.3e})"
        )
    sigma = np.zeros((2 * n, 2 * n))
    for (a, c), ci in col.items():
        sigma[a, c] = sigma[c, a] = sol[ci].real
    heis = np.sqrt(np.diag(sigma)[:n] * np.diag(sigma)[n:])
    rs = np.array(
        [sigma[i, i] * sigma[n + i, n + i] - sigma[i, n + i] ** 2 - 0.25 for i in range(n)]
    )
    if np.any(np.diag(sigma) <= 0.0):
        raise SingularMomentSystem("covariance diagonal not strictly positive")
    if np.any(rs < RS_MARGIN_FLOOR):
        raise SingularMomentSystem(
            f"Robertson-Schrodinger margin violated: min {np.min(rs):.3e}"
        )
    sigma.flags.writeable = False
    return CovarianceReport(sigma=sigma, heisenberg=heis, rs_margin=rs)


def covariance_from_extremal(state: GaussianExtremalState) -> np.ndarray:
    """Closed-form covariance of the Gaussian e^{-x^T a x / 2}.

    sigma_XX = (Re a)^-1 / 2, sigma_XP = -(Re a)^-1 Im a / 2 and
    sigma_PP = (Re a + Im a (Re a)^-1 Im a) / 2.  Serves as an independent
    cross-check of the moment-system route.
    """
    AR = state.a.real
    AI = state.a.imag
    ARi = np.linalg.inv(AR)
    sXX = 0.5 * ARi
    sXP = -0.5 * (ARi @ AI)
    sPP = 0.5 * (AR + AI @ ARi @ AI)
    return np.block([[sXX, sXP], [sXP.T, sPP]])


def hamiltonian_stats(z: np.ndarray, ladder: LadderSystem) -> HamiltonianStats:
    """<H>_z = sum_k gamma_k omega_k |z_k|^2 + g0_prime and
    (Delta H)^2_z = sum_k omega_k^2 |z_k|^2."""
    z = np.asarray(z, dtype=complex).reshape(-1)
    if len(z) != ladder.n:
        raise DimensionMismatch(f"label needs {ladder.n} components, got {len(z)}")
    mod2 = np.abs(z) ** 2
    mean = float(np.sum(ladder.gamma * ladder.omega * mod2) + ladder.g0_prime)
    variance = float(np.sum(ladder.omega**2 * mod2))
    return HamiltonianStats(mean=mean, variance=variance)


def evolve(z: np.ndarray, t: float, ladder: LadderSystem) -> tuple[np.ndarray, float]:
    """Evolve a coherent state for time t.

    Each label rotates at its own frequency, z_k(t) = e^{-i gamma_k omega_k t} z_k
    (clockwise for gamma_k = +1, counterclockwise for -1), and the state picks
    up the global phase -g0_prime t.
    """
    z = np.asarray(z, dtype=complex).reshape(-1)
    if len(z) != ladder.n:
        raise DimensionMismatch(f"label needs {ladder.n} components, got {len(z)}")
    z_t = np.exp(-1j * ladder.gamma * ladder.omega * t) * z
    return z_t, -ladder.g0_prime * t


def kernel(z: np.ndarray, z_prime: np.ndarray) -> complex:
    """Reproducing kernel <z|z'> = exp[-(1/2) sum_j (|z_j|^2 - 2 z_j* z_j' + |z_j'|^2)]."""
    z = np.asarray(z, dtype=complex).reshape(-1)
    zp = np.asarray(z_prime, dtype=complex).reshape(-1)
    if len(z) != len(zp):
        raise DimensionMismatch(f"label lengths differ: {len(z)} vs {len(zp)}")
    expo = -0.5 * np.sum(np.abs(z) ** 2 - 2.0 * z.conj() * zp + np.abs(zp) ** 2)
    return complex(np.exp(expo))


def fock_energy(nvec: np.ndarray, ladder: LadderSystem) -> float:
    """Eigenvalue of the Fock state |n_1..n_n>: sum_k gamma_k omega_k n_k + g0_prime."""
    nvec = np.asarray(nvec, dtype=int).reshape(-1)
    if len(nvec) != ladder.n:
        raise DimensionMismatch(f"occupation vector needs {ladder.n} entries, got {len(nvec)}")
    if np.any(nvec < 0):
        raise DimensionMismatch("occupations must be nonnegative")
    return float(np.sum(ladder.gamma * ladder.omega * nvec) + ladder.g0_prime)
