"""Ladder operators and coherent states for quadratic Hamiltonians.

Given H = (1/2) eta^T B eta in the trap regime (all eigenvalues of JB purely
imaginary and nondegenerate), the library constructs the annihilation and
creation operators mode by mode, the Gaussian extremal state they annihilate,
coherent states as displaced Gaussians, and the moments, covariance matrix,
uncertainty products and time evolution that follow.  An independent grid
oracle and closed forms for the asymmetric Penning trap serve as validation
layers.
"""

from .errors import (
    AsymmetricSolution,
    DegenerateSpectrum,
    DimensionMismatch,
    GammaNotReal,
    GridTooCoarse,
    InvalidInput,
    InvalidParams,
    NotNormalizable,
    NotSymmetric,
    NotTrapRegime,
    NumericalBreakdown,
    QuadCoherentError,
    RangeError,
    SingularAlphaMatrix,
    SingularEigenbasis,
    SingularMomentSystem,
)
from .gaussian import (
    CoherentState,
    GaussianExtremalState,
    LinearFormDecomposition,
    coherent_wavefunction,
    coherent_wavefunction_expanded,
    decompose_linear_forms,
    displacement_vectors,
    extremal_matrix,
    extremal_wavefunction,
)
from .model import (
    QuadraticHamiltonian,
    build_hamiltonian,
    dynamical_matrix,
    hamiltonian_from_json,
    symplectic_form,
)
from .observables import (
    CovarianceReport,
    HamiltonianStats,
    covariance,
    covariance_from_extremal,
    evolve,
    first_moments,
    fock_energy,
    hamiltonian_stats,
    kernel,
)
from .penning import (
    PenningClosedForms,
    PenningParams,
    penning_closed_forms,
    penning_hamiltonian,
    trap_ordering_to_canonical,
    uncertainty_surface,
)
from .spectral import (
    EigenPairing,
    LadderSystem,
    RegimeKind,
    RegimeReport,
    TrapDraw,
    classify_regime,
    eigen_pairing,
    ladder_operators,
    normalize_ladder,
    random_symplectic,
    random_trap_hamiltonian,
    random_trap_system,
    reconstruct_coefficients,
    reordered,
)

__version__ = "0.1.0"
