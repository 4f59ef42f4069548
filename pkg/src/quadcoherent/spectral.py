"""Eigen-analysis of the dynamical matrix and ladder-operator synthesis.

The eigenvalues of JB come in (lambda, -lambda) pairs.  In the trap regime
(all of them purely imaginary and nondegenerate) each pair carries one
oscillator mode: the left eigenvector rows define linear forms in the
canonical operators which, after normalization, become the annihilation and
creation operators B_k, B_k^dag with [B_j, B_k^dag] = delta_jk.  The sign
gamma_k = +-1 distinguishes oscillator from anti-oscillator (inverted) modes,
and the Hamiltonian factorizes as

    H = sum_k gamma_k omega_k B_k^dag B_k + g0_prime.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateSpectrum,
    DimensionMismatch,
    GammaNotReal,
    NotTrapRegime,
    NumericalBreakdown,
    SingularEigenbasis,
)
from .model import QuadraticHamiltonian, build_hamiltonian, symplectic_form

# Relative (to ||JB||) tolerances of the spectral stage.
ZERO_REAL_RTOL = 1e-10     # |Re lambda| below this counts as purely imaginary
DEGENERACY_RTOL = 1e-8     # minimum pairwise spacing of the full spectrum
PAIRING_RTOL = 1e-6        # sanity bound on |lambda_plus + lambda_minus|
EIGENBASIS_COND_MAX = 1e12

COMMUTATOR_ATOL = 1e-9
RECONSTRUCTION_RTOL = 1e-8


class RegimeKind(enum.Enum):
    TRAP = "trap"
    UNSTABLE = "unstable"
    DEGENERATE = "degenerate"


@dataclass(frozen=True, eq=False)
class EigenPairing:
    """Paired spectrum of the dynamical matrix with dual eigenvector sets.

    lam[k] holds the representative eigenvalue of pair k under the convention
    Re > 0, or Im > 0 when the real part vanishes.  Right eigenvectors are
    the columns of u_plus / u_minus, left eigenvectors the rows of
    f_plus / f_minus; duality f_j^r u_k^s = delta_jk delta_rs holds by
    construction because the left set is the inverse of the right set.
    """

    lam: np.ndarray        # (n,) complex
    u_plus: np.ndarray     # (2n, n) columns
    u_minus: np.ndarray    # (2n, n) columns
    f_plus: np.ndarray     # (n, 2n) rows
    f_minus: np.ndarray    # (n, 2n) rows
    matrix_norm: float     # spectral norm of JB, sets tolerance scales

    @property
    def n(self) -> int:
        return len(self.lam)


@dataclass(frozen=True, eq=False)
class RegimeReport:
    """Classification of the spectrum, with the modes that break trapping."""

    kind: RegimeKind
    offending_modes: tuple[tuple[int, complex], ...] = ()


@dataclass(frozen=True, eq=False)
class LadderSystem:
    """Normalized ladder operators of a trap-regime Hamiltonian.

    Row b[k] holds the coefficients of the annihilation operator
    B_k = b[k] . eta over the canonical vector eta; the creation operator is
    the conjugate row.  omega[k] > 0 and gamma[k] in {+1, -1} give the mode
    frequency and its oscillator/anti-oscillator character, and g0_prime is
    the energy of the extremal state annihilated by every B_k.
    """

    n: int
    omega: np.ndarray      # (n,) positive
    gamma: np.ndarray      # (n,) values +-1
    b: np.ndarray          # (n, 2n) complex annihilation rows
    g0_prime: float

    @property
    def b_dag(self) -> np.ndarray:
        """Coefficient rows of the creation operators."""
        return self.b.conj()

    def validate(self, B: np.ndarray | None = None) -> None:
        """Check the canonical commutators and, if B is given, that the
        ladder reconstruction reproduces it.  Raises NumericalBreakdown."""
        J = symplectic_form(self.n)
        comm = 1j * (self.b @ J @ self.b.conj().T)
        err = np.max(np.abs(comm - np.eye(self.n)))
        if err > COMMUTATOR_ATOL:
            raise NumericalBreakdown(
                f"[B_j, B_k^dag] deviates from identity by {err:.3e}"
            )
        cross = np.max(np.abs(1j * (self.b @ J @ self.b.T)))
        if cross > COMMUTATOR_ATOL:
            raise NumericalBreakdown(f"[B_j, B_k] deviates from zero by {cross:.3e}")
        if B is not None:
            rec = reconstruct_coefficients(self)
            scale = max(1.0, float(np.max(np.abs(B))))
            err = float(np.max(np.abs(rec - B)))
            if err > RECONSTRUCTION_RTOL * scale:
                raise NumericalBreakdown(
                    f"ladder reconstruction of B off by {err:.3e} (scale {scale:.3e})"
                )


def reconstruct_coefficients(ladder: LadderSystem) -> np.ndarray:
    """Rebuild B from the ladder rows: 2 sum_k gamma_k omega_k sym Re(b_k* x b_k)."""
    n = ladder.n
    B = np.zeros((2 * n, 2 * n))
    for k in range(n):
        M = np.real(np.outer(ladder.b[k].conj(), ladder.b[k]))
        B += ladder.gamma[k] * ladder.omega[k] * (M + M.T)
    return B


def eigen_pairing(dyn: np.ndarray) -> EigenPairing:
    """Pair the spectrum of the dynamical matrix and build dual eigenvectors.

    The representative of each pair obeys Re(lambda) > 0, falling back to
    Im(lambda) > 0 on the imaginary axis.  Left eigenvectors are obtained by
    inverting the right-eigenvector matrix, so duality is exact up to
    roundoff.  When every eigenvalue sits on the imaginary axis the minus
    eigenvectors are taken as complex conjugates of the plus ones.

    Raises DegenerateSpectrum when the pairing is ambiguous (zero modes,
    convention split failure, unmatched partners) and SingularEigenbasis when
    the eigenvector matrix cannot be inverted reliably.
    """
    dyn = np.asarray(dyn, dtype=float)
    if dyn.ndim != 2 or dyn.shape[0] != dyn.shape[1] or dyn.shape[0] % 2:
        raise DimensionMismatch(f"dynamical matrix must be 2n x 2n, got {dyn.shape}")
    n = dyn.shape[0] // 2
    scale = float(np.linalg.norm(dyn, 2))
    if scale == 0.0:
        raise DegenerateSpectrum("zero dynamical matrix, spectrum cannot be paired")
    w, v = np.linalg.eig(dyn)
    axis_tol = ZERO_REAL_RTOL * scale
    if float(np.min(np.abs(w))) <= axis_tol:
        raise DegenerateSpectrum("eigenvalue at zero, (lambda, -lambda) pairing is ambiguous")
    is_plus = (w.real > axis_tol) | ((np.abs(w.real) <= axis_tol) & (w.imag > 0.0))
    plus = np.flatnonzero(is_plus)
    minus = np.flatnonzero(~is_plus)
    if len(plus) != n:
        raise DegenerateSpectrum(
            f"sign convention selects {len(plus)} of {2 * n} eigenvalues, expected {n}"
        )
    # Deterministic mode order: ascending Im, then ascending Re.  In the trap
    # regime this is ascending frequency.
    plus = plus[np.lexsort((w.real[plus], w.imag[plus]))]
    remaining = list(minus)
    partner = []
    for i in plus:
        dists = [abs(w[j] + w[i]) for j in remaining]
        jbest = remaining[int(np.argmin(dists))]
        if abs(w[jbest] + w[i]) > PAIRING_RTOL * scale:
            raise DegenerateSpectrum(
                f"no partner for eigenvalue {w[i]:.6g} within tolerance"
            )
        remaining.remove(jbest)
        partner.append(jbest)
    lam = w[plus]
    u_plus = v[:, plus]
    trap_like = bool(np.all(np.abs(w.real) <= axis_tol))
    if trap_like:
        u_minus = u_plus.conj()
    else:
        u_minus = v[:, partner]
    U = np.hstack([u_plus, u_minus])
    cond = float(np.linalg.cond(U))
    if not np.isfinite(cond) or cond > EIGENBASIS_COND_MAX:
        raise SingularEigenbasis(
            f"right-eigenvector matrix has condition number {cond:.3e}"
        )
    F = np.linalg.inv(U)
    resid = float(np.max(np.abs(F @ U - np.eye(2 * n))))
    if resid > 1e-9:
        raise SingularEigenbasis(f"duality residual {resid:.3e} after inversion")
    return EigenPairing(
        lam=lam,
        u_plus=u_plus,
        u_minus=u_minus,
        f_plus=F[:n],
        f_minus=F[n:],
        matrix_norm=scale,
    )


def classify_regime(pairing: EigenPairing) -> RegimeReport:
    """Sort the spectrum into trap / unstable / degenerate.

    Trap requires every eigenvalue purely imaginary and the full 2n-point
    spectrum pairwise separated.  Real parts win over degeneracy when both
    conditions fail.
    """
    lam = pairing.lam
    scale = pairing.matrix_norm
    unstable = [
        (k, complex(lam[k]))
        for k in range(len(lam))
        if abs(lam[k].real) > ZERO_REAL_RTOL * scale
    ]
    if unstable:
        return RegimeReport(RegimeKind.UNSTABLE, tuple(unstable))
    full = np.concatenate([lam, -lam])
    gap_tol = DEGENERACY_RTOL * scale
    bad: set[int] = set()
    for a in range(len(full)):
        for bdx in range(a + 1, len(full)):
            if abs(full[a] - full[bdx]) <= gap_tol:
                bad.add(a % len(lam))
                bad.add(bdx % len(lam))
    if bad:
        return RegimeReport(
            RegimeKind.DEGENERATE,
            tuple((k, complex(lam[k])) for k in sorted(bad)),
        )
    return RegimeReport(RegimeKind.TRAP)


def normalize_ladder(pairing: EigenPairing, ham: QuadraticHamiltonian) -> LadderSystem:
    """Scale the dual eigenvectors into annihilation/creation operators.

    For each mode the bracket gamma_tilde_k = i f_k^- J (f_k^+)^T is computed
    (the commutator of the two linear forms); rescaling f_k^+ by
    1/sqrt|gamma_tilde_k| makes |gamma_k| = 1 while duality is preserved by
    scaling u_k^+ oppositely.  The annihilation row is f_k^- when
    gamma_k = +1 and f_k^+ when gamma_k = -1.  The residual phase freedom is
    fixed by rotating each f_k^+ so its largest entry is real and positive.

    g0_prime is the operator-ordering remainder of the factorized form,
    - sum_k gamma_k omega_k (i/2) b_k* J b_k^T, which equals the extremal
    state's energy.
    """
    report = classify_regime(pairing)
    if report.kind is not RegimeKind.TRAP:
        raise NotTrapRegime(
            f"ladder normalization needs the trap regime, got {report.kind.value} "
            f"(offending modes: {list(report.offending_modes)})"
        )
    n = pairing.n
    J = symplectic_form(n)
    f_plus = pairing.f_plus.copy()
    omega = pairing.lam.imag.copy()
    gamma = np.zeros(n, dtype=int)
    for k in range(n):
        g_tilde = 1j * (f_plus[k].conj() @ J @ f_plus[k])
        mag = abs(g_tilde)
        if mag < 1e-12:
            raise GammaNotReal(f"mode {k}: vanishing bracket, |gamma_tilde| = {mag:.3e}")
        if abs(g_tilde.imag) > 1e-9 * mag:
            raise GammaNotReal(
                f"mode {k}: bracket not real, gamma_tilde = {g_tilde:.6e}"
            )
        f_plus[k] /= np.sqrt(mag)
        gamma[k] = 1 if g_tilde.real > 0 else -1
        j = int(np.argmax(np.abs(f_plus[k])))
        phase = f_plus[k][j] / abs(f_plus[k][j])
        f_plus[k] *= phase.conj()
    b = np.array([f_plus[k].conj() if gamma[k] == 1 else f_plus[k] for k in range(n)])
    g0 = 0.0 + 0.0j
    for k in range(n):
        g0 += gamma[k] * omega[k] * (-0.5j) * (b[k].conj() @ J @ b[k])
    if abs(g0.imag) > 1e-9 * max(1.0, abs(g0)):
        raise GammaNotReal(f"ground shift not real: {g0:.6e}")
    ladder = LadderSystem(n=n, omega=omega, gamma=gamma, b=b, g0_prime=float(g0.real))
    ladder.validate(B=ham.B)
    return ladder


def reordered(ladder: LadderSystem, order: np.ndarray | list[int]) -> LadderSystem:
    """Return the same system with modes permuted by the given index order."""
    order = np.asarray(order, dtype=int)
    if sorted(order.tolist()) != list(range(ladder.n)):
        raise DimensionMismatch(f"order must permute 0..{ladder.n - 1}, got {order}")
    return LadderSystem(
        n=ladder.n,
        omega=ladder.omega[order],
        gamma=ladder.gamma[order],
        b=ladder.b[order],
        g0_prime=ladder.g0_prime,
    )


def ladder_operators(ham: QuadraticHamiltonian) -> LadderSystem:
    """Full spectral pipeline: pair the spectrum, check the regime, normalize."""
    from .model import dynamical_matrix

    return normalize_ladder(eigen_pairing(dynamical_matrix(ham)), ham)


@dataclass(frozen=True, eq=False)
class TrapDraw:
    """A randomly generated trap-regime Hamiltonian with its known normal form."""

    hamiltonian: QuadraticHamiltonian
    omega: np.ndarray
    gamma: np.ndarray
    symplectic: np.ndarray


def random_symplectic(n: int, rng: np.random.Generator, strength: float = 0.4) -> np.ndarray:
    """Product of random symplectic shears and a GL block, moderately conditioned."""
    def shear_lower() -> np.ndarray:
        C = rng.standard_normal((n, n))
        C = strength * 0.5 * (C + C.T)
        S = np.eye(2 * n)
        S[n:, :n] = C
        return S

    def shear_upper() -> np.ndarray:
        C = rng.standard_normal((n, n))
        C = strength * 0.5 * (C + C.T)
        S = np.eye(2 * n)
        S[:n, n:] = C
        return S

    M = np.eye(n) + strength * rng.standard_normal((n, n))
    while abs(np.linalg.det(M)) < 0.2:
        M = np.eye(n) + strength * rng.standard_normal((n, n))
    gl = np.zeros((2 * n, 2 * n))
    gl[:n, :n] = M
    gl[n:, n:] = np.linalg.inv(M).T
    return shear_lower() @ gl @ shear_upper()


def random_trap_system(
    n: int,
    seed: int | None = None,
    *,
    rng: np.random.Generator | None = None,
    omega_range: tuple[float, float] = (0.1, 10.0),
    gamma: np.ndarray | None = None,
    omega: np.ndarray | None = None,
    symplectic: np.ndarray | None = None,
    strength: float = 0.4,
    min_gap: float = 0.05,
) -> TrapDraw:
    """Draw a guaranteed trap-regime Hamiltonian with known (omega_k, gamma_k).

    Frequencies are drawn from omega_range with pairwise spacing at least
    min_gap (resampled otherwise), signs uniformly from {+1, -1}.  The normal
    form diag(gamma*omega, gamma*omega) is conjugated by a random symplectic
    matrix, which preserves the spectrum and the mode data.
    """
    if rng is None:
        rng = np.random.default_rng(seed)
    if omega is None:
        while True:
            omega = rng.uniform(*omega_range, size=n)
            if n == 1 or np.min(np.diff(np.sort(omega))) >= min_gap:
                break
    else:
        omega = np.asarray(omega, dtype=float)
    if gamma is None:
        gamma = rng.choice([-1, 1], size=n)
    else:
        gamma = np.asarray(gamma, dtype=int)
    if symplectic is None:
        symplectic = random_symplectic(n, rng, strength)
    diag = np.concatenate([gamma * omega, gamma * omega]).astype(float)
    B0 = np.diag(diag)
    B = symplectic.T @ B0 @ symplectic
    B = 0.5 * (B + B.T)
    return TrapDraw(
        hamiltonian=build_hamiltonian(n, B),
        omega=omega,
        gamma=gamma,
        symplectic=symplectic,
    )


def random_trap_hamiltonian(n: int, seed: int | None = None) -> QuadraticHamiltonian:
    """Convenience wrapper returning only the Hamiltonian of a random draw."""
    return random_trap_system(n, seed).hamiltonian
