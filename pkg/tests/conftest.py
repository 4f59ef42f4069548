import numpy as np
import pytest

from quadcoherent import (
    PenningParams,
    build_hamiltonian,
    decompose_linear_forms,
    extremal_matrix,
    ladder_operators,
    penning_hamiltonian,
)


@pytest.fixture
def unit_oscillator():
    """H = (X^2 + P^2)/2."""
    return build_hamiltonian(1, np.eye(2))


@pytest.fixture
def penning_params():
    """The reference trap: omega_c = 2, omega_z = 1 (delta = 1/2), epsilon = 1/2."""
    return PenningParams(omega_c=2.0, omega_z=1.0, epsilon=0.5)


@pytest.fixture
def penning_ideal_params():
    """Axially symmetric trap, epsilon = 0."""
    return PenningParams(omega_c=2.0, omega_z=1.0, epsilon=0.0)


def full_stack(ham):
    """ladder -> decomposition -> extremal state for a trap Hamiltonian."""
    ladder = ladder_operators(ham)
    decomp = decompose_linear_forms(ladder)
    state = extremal_matrix(decomp)
    return ladder, decomp, state


@pytest.fixture
def penning_stack(penning_params):
    return full_stack(penning_hamiltonian(penning_params))
