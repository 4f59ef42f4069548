#!/usr/bin/env python3
"""Walk through the ladder-operator construction for quadratic Hamiltonians.

Starting from the coefficient matrix B of H = (1/2) eta^T B eta, the recipe
is: form the dynamical matrix JB, pair its eigenvalues (lambda, -lambda),
build dual left/right eigenvectors, and normalize the left rows into
annihilation/creation operators.  We do it for the textbook oscillator and
for a randomly generated three-mode trap system.
"""

import numpy as np

from quadcoherent import (
    build_hamiltonian,
    classify_regime,
    dynamical_matrix,
    eigen_pairing,
    ladder_operators,
    random_trap_system,
    reconstruct_coefficients,
    symplectic_form,
)

np.set_printoptions(precision=6, suppress=True)

print("=" * 72)
print("1. Unit harmonic oscillator, H = (X^2 + P^2)/2")
print("=" * 72)
ham = build_hamiltonian(1, np.eye(2))
print("B =\n", ham.B)
print("JB =\n", dynamical_matrix(ham))

pairing = eigen_pairing(dynamical_matrix(ham))
print("\npaired eigenvalue:", pairing.lam[0], " (purely imaginary: trap regime)")
print("regime:", classify_regime(pairing).kind.value)

ladder = ladder_operators(ham)
print("\nmode frequency omega =", ladder.omega[0])
print("sign gamma =", ladder.gamma[0], " (+1: ordinary oscillator mode)")
print("annihilation row b =", ladder.b[0], " -> B_1 = (X + iP)/sqrt(2)")
print("extremal energy g0' =", ladder.g0_prime, " (the familiar 1/2)")

print()
print("=" * 72)
print("2. Random three-mode trap system with known normal form")
print("=" * 72)
draw = random_trap_system(3, seed=42)
print("drawn frequencies:", np.sort(draw.omega))
print("drawn signs      :", draw.gamma[np.argsort(draw.omega)])

ladder = ladder_operators(draw.hamiltonian)
print("\nrecovered frequencies:", ladder.omega)
print("recovered signs      :", ladder.gamma)

J = symplectic_form(3)
comm = 1j * (ladder.b @ J @ ladder.b.conj().T)
print("\ncommutator matrix [B_j, B_k^dag] (should be the identity):")
print(np.round(comm.real, 10))

rec = reconstruct_coefficients(ladder)
print(
    "\nfactorization check: max |B - 2 sum_k gamma_k omega_k sym Re(b_k* x b_k)| =",
    f"{np.max(np.abs(rec - draw.hamiltonian.B)):.2e}",
)
print(
    "extremal energy g0' =",
    ladder.g0_prime,
    " vs (1/2) sum gamma omega =",
    0.5 * np.sum(ladder.gamma * ladder.omega),
)
