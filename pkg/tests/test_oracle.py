import itertools

import numpy as np
import pytest

from quadcoherent import (
    DimensionMismatch,
    GridTooCoarse,
    coherent_wavefunction,
    decompose_linear_forms,
    displacement_vectors,
    extremal_matrix,
    extremal_wavefunction,
    fock_energy,
    ladder_operators,
    random_trap_system,
)
from quadcoherent.oracle import (
    Grid,
    apply_linear_form,
    check_resolution,
    fock_state,
    grid_for_state,
    grid_moments,
    gradient_residual,
    quadratic_form_energy,
    sample,
)


@pytest.fixture(scope="module")
def ho_stack(request):
    from quadcoherent import build_hamiltonian

    ham = build_hamiltonian(1, np.eye(2))
    ladder = ladder_operators(ham)
    decomp = decompose_linear_forms(ladder)
    state = extremal_matrix(decomp)
    return ham, ladder, decomp, state


@pytest.fixture(scope="module")
def two_mode_stack():
    draw = random_trap_system(
        2, seed=12, omega_range=(0.5, 2.0), strength=0.2
    )
    ladder = ladder_operators(draw.hamiltonian)
    decomp = decompose_linear_forms(ladder)
    state = extremal_matrix(decomp)
    return draw.hamiltonian, ladder, decomp, state


def test_grid_rejects_too_few_points():
    with pytest.raises(DimensionMismatch):
        Grid(((-1.0, 1.0, 16),))


def test_grid_geometry():
    g = Grid(((-1.0, 1.0, 41), (0.0, 2.0, 33)))
    assert g.shape == (41, 33)
    assert g.spacing[0] == pytest.approx(0.05)
    assert g.cell == pytest.approx(0.05 * (2.0 / 32))
    assert g.points().shape == (41, 33, 2)


def test_sample_constant_ones():
    g = Grid(((0.0, 1.0, 32),))
    fld = sample(lambda x: np.ones(x.shape[:-1]), g)
    np.testing.assert_array_equal(fld.values, np.ones(32))


def test_extremal_norm_on_wide_grid(ho_stack):
    _, _, _, state = ho_stack
    g = Grid(((-8.0, 8.0, 512),))
    fld = sample(lambda x: extremal_wavefunction(state, x), g)
    assert fld.norm2() == pytest.approx(1.0, abs=1e-8)


def test_autosized_grid_covers_six_sigma(two_mode_stack):
    _, _, _, state = two_mode_stack
    g = grid_for_state(state, count=64)
    C = np.linalg.inv(2 * state.a.real)
    for i, (lo, hi, _) in enumerate(g.axes):
        assert hi >= 6.0 * np.sqrt(C[i, i]) - 1e-12
        assert lo == -hi


def test_displaced_density_peak(ho_stack):
    _, _, decomp, state = ho_stack
    coh = displacement_vectors(np.array([1.0 + 0j]), decomp)
    assert coh.Gamma[0] == pytest.approx(np.sqrt(2.0))
    g = grid_for_state(state, coh, count=256)
    fld = sample(lambda x: coherent_wavefunction(state, coh, x), g)
    peak = g.coords[0][int(np.argmax(np.abs(fld.values)))]
    assert abs(peak - np.sqrt(2.0)) <= g.spacing[0]


def test_annihilator_kills_extremal(ho_stack):
    _, _, decomp, state = ho_stack
    g = grid_for_state(state, count=256)
    fld = sample(lambda x: extremal_wavefunction(state, x), g)
    resid = apply_linear_form(decomp.alpha[0], decomp.beta[0], fld)
    assert np.sqrt(resid.norm2() / fld.norm2()) <= 1e-5


def test_creation_then_annihilation_commutator(ho_stack):
    """<phi0, B B^dag phi0> = ||B^dag phi0||^2 = 1."""
    _, _, decomp, state = ho_stack
    g = grid_for_state(state, count=256)
    fld = sample(lambda x: extremal_wavefunction(state, x), g)
    created = apply_linear_form(-decomp.alpha[0].conj(), decomp.beta[0].conj(), fld)
    assert created.norm2() == pytest.approx(1.0, abs=1e-4)


def test_first_excited_orthogonal_to_ground(ho_stack):
    _, _, decomp, state = ho_stack
    g = grid_for_state(state, count=256)
    fld = sample(lambda x: extremal_wavefunction(state, x), g)
    created = apply_linear_form(-decomp.alpha[0].conj(), decomp.beta[0].conj(), fld)
    assert abs(created.inner(fld)) <= 1e-6


def test_gradient_residual_guard(two_mode_stack):
    _, _, _, state = two_mode_stack
    fine = grid_for_state(state, count=192)
    assert gradient_residual(state, fine) < 1e-4
    check_resolution(state, fine)
    coarse = grid_for_state(state, count=32, coverage=12.0)
    with pytest.raises(GridTooCoarse):
        check_resolution(state, coarse)


def test_fock_zero_is_extremal(two_mode_stack):
    _, _, decomp, state = two_mode_stack
    g = grid_for_state(state, count=128)
    fld = fock_state([0, 0], decomp, state, g)
    ref = sample(lambda x: extremal_wavefunction(state, x), g)
    np.testing.assert_array_equal(fld.values, ref.values)


def test_fock_quanta_cap(two_mode_stack):
    _, _, decomp, state = two_mode_stack
    g = grid_for_state(state, count=128)
    with pytest.raises(DimensionMismatch):
        fock_state([3, 2], decomp, state, g)


def test_fock_rayleigh_energies(two_mode_stack):
    ham, ladder, decomp, state = two_mode_stack
    g = grid_for_state(state, count=160)
    for nvec in ([0, 0], [1, 0], [0, 1], [1, 1], [2, 0]):
        fld = fock_state(nvec, decomp, state, g)
        e_grid = quadratic_form_energy(fld, ham.B)
        e_ref = fock_energy(nvec, ladder)
        assert e_grid == pytest.approx(e_ref, rel=1e-3), nvec


def test_fock_orthonormality(two_mode_stack):
    _, _, decomp, state = two_mode_stack
    g = grid_for_state(state, count=160)
    occupations = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]
    fields = {nv: fock_state(nv, decomp, state, g) for nv in occupations}
    for nv, mv in itertools.combinations(occupations, 2):
        assert abs(fields[nv].inner(fields[mv])) <= 1e-4, (nv, mv)
    for nv in occupations:
        assert fields[nv].norm2() == pytest.approx(1.0, abs=1e-3)


def test_moments_extremal_centered(two_mode_stack):
    _, _, _, state = two_mode_stack
    g = grid_for_state(state, count=192)
    fld = sample(lambda x: extremal_wavefunction(state, x), g)
    mom = grid_moments(fld)
    assert np.max(np.abs(mom.mean_x)) <= 1e-6
    assert np.max(np.abs(mom.mean_p)) <= 1e-6


def test_moments_track_displacement(two_mode_stack):
    _, _, decomp, state = two_mode_stack
    z = np.array([0.8 - 0.3j, -0.5 + 0.6j])
    coh = displacement_vectors(z, decomp)
    g = grid_for_state(state, coh, count=256)
    fld = sample(lambda x: coherent_wavefunction(state, coh, x), g)
    mom = grid_moments(fld)
    assert np.max(np.abs(mom.mean_x - coh.Gamma)) <= 1e-5
    assert np.max(np.abs(mom.mean_p - coh.Sigma)) <= 1e-5


def test_second_moments_label_independent(two_mode_stack):
    _, _, decomp, state = two_mode_stack
    z = np.array([0.8 - 0.3j, -0.5 + 0.6j])
    coh = displacement_vectors(z, decomp)
    g = grid_for_state(state, coh, count=256)
    ref = grid_moments(sample(lambda x: extremal_wavefunction(state, x), g))
    mom = grid_moments(sample(lambda x: coherent_wavefunction(state, coh, x), g))
    assert np.max(np.abs(mom.sigma - ref.sigma)) <= 1e-5


def test_moments_require_normalized_field(two_mode_stack):
    _, _, _, state = two_mode_stack
    g = grid_for_state(state, count=128)
    fld = sample(lambda x: 2.0 * extremal_wavefunction(state, x), g)
    with pytest.raises(GridTooCoarse):
        grid_moments(fld)


def test_rayleigh_on_unit_oscillator(ho_stack):
    ham, _, _, state = ho_stack
    g = grid_for_state(state, count=256)
    fld = sample(lambda x: extremal_wavefunction(state, x), g)
    assert quadratic_form_energy(fld, ham.B) == pytest.approx(0.5, rel=1e-6)
