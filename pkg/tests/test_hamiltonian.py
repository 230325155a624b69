import numpy as np
import pytest

from hubbardlde.eigensolver import dense_spectrum
from hubbardlde.errors import DomainError
from hubbardlde.fock import enumerate_sector
from hubbardlde.hamiltonian import (
    ModelSpec,
    build_alternating_bonds,
    build_alternating_hopping,
    build_hamiltonian,
    build_uniform,
    spin_raising_matrix,
    spin_squared_operator,
)
from hubbardlde.oracle import dense_hamiltonian, dense_index_and_sign, qudit_hamiltonian


def two_site_exact(U):
    return (U - np.sqrt(U * U + 16.0)) / 2.0


@pytest.mark.parametrize("U", [0.0, 1.0, 4.0, 8.0])
def test_two_site_ground_energy(U):
    H = build_uniform(2, U, (1, 1))
    assert abs(dense_spectrum(H)[0] - two_site_exact(U)) < 1e-10


def test_two_site_free_offdiagonals():
    H = build_uniform(2, 0.0, (1, 1)).toarray()
    off = H[~np.eye(4, dtype=bool)]
    assert set(np.round(np.abs(off[off != 0.0]), 12)) == {1.0}
    assert np.all(np.diag(H) == 0.0)


def test_alternating_bonds_reduces_to_uniform():
    Ha = build_alternating_bonds(6, 0.0, 3.0).matrix
    Hu = build_uniform(6, 3.0).matrix
    assert (Ha != Hu).nnz == 0


def test_alternating_hopping_reduces_to_uniform():
    Ha = build_alternating_hopping(6, 1.0, 1.0, 2.0).matrix
    Hu = build_uniform(6, 2.0).matrix
    assert (Ha != Hu).nnz == 0


def test_bond_amplitude_patterns():
    assert np.allclose(ModelSpec("alt-bonds", 6, 0.0, delta=0.5).bond_amplitudes(),
                       [0.5, 1.5, 0.5, 1.5, 0.5])
    assert np.allclose(ModelSpec("alt-bonds", 4, 0.0, delta=1.0).bond_amplitudes(),
                       [0.0, 2.0, 0.0])
    assert np.allclose(ModelSpec("alt-hopping", 6, 0.0, tau_a=1.5, tau_b=0.25).bond_amplitudes(),
                       [1.5, 0.25, 1.5, 0.25, 1.5])


def test_delta_one_keeps_only_middle_bond():
    # end bonds vanish: a strength-2 dimer on (2,3) plus two free sites
    w = dense_spectrum(build_alternating_bonds(4, 1.0, 0.0))
    assert abs(w[0] - (-4.0)) < 1e-12  # half-filled dimer at amplitude 2
    assert w[3] - w[0] < 1e-12  # the leftover up+down on sites 1, 4: 4 states
    assert w[4] - w[0] > 0.1


def test_tau_b_zero_decouples_dimers():
    for U in (0.0, 4.0):
        H = build_alternating_hopping(4, 1.0, 0.0, U)
        e0 = dense_spectrum(H)[0]
        assert abs(e0 - 2.0 * two_site_exact(U)) < 1e-10


def test_tau_a_zero_degenerate_ground():
    H = build_alternating_hopping(4, 0.0, 1.0, 0.0)
    w = dense_spectrum(H)
    assert w[1] - w[0] < 1e-12


@pytest.mark.parametrize(
    "model",
    [
        ModelSpec("uniform", 5, 3.0),
        ModelSpec("alt-bonds", 6, 2.0, delta=0.7),
        ModelSpec("alt-hopping", 6, 1.0, tau_a=0.5, tau_b=2.0),
    ],
)
def test_matrices_exactly_symmetric(model):
    H = build_hamiltonian(model).matrix
    assert (H != H.T).nnz == 0


@pytest.mark.parametrize("L", [2, 4, 6])
def test_particle_hole_symmetry_at_half_filling(L):
    w = dense_spectrum(build_uniform(L, 0.0))
    assert np.allclose(w, -w[::-1], atol=1e-12)


def test_alt_bonds_delta_zero_spectrum_matches_uniform():
    for L in (4, 6):
        wa = dense_spectrum(build_alternating_bonds(L, 0.0, 4.0))
        wu = dense_spectrum(build_uniform(L, 4.0))
        assert np.allclose(wa, wu, atol=1e-12)


@pytest.mark.parametrize(
    "model",
    [
        ModelSpec("uniform", 3, 4.0),
        ModelSpec("uniform", 4, 2.0),
        ModelSpec("alt-bonds", 4, 4.0, delta=0.5),
        ModelSpec("alt-hopping", 4, 1.0, tau_a=1.0, tau_b=2.0),
    ],
)
def test_sector_matrix_matches_dense_oracle(model):
    """Entry-wise agreement with the site-product JW construction (L <= 4)."""
    L = model.L
    basis = enumerate_sector(L, L // 2, (L + 1) // 2)
    H = build_hamiltonian(model, basis).toarray()
    Hd = dense_hamiltonian(model)
    idx = np.empty(basis.size, dtype=int)
    sgn = np.empty(basis.size)
    for a, s in enumerate(basis.states):
        idx[a], sgn[a] = dense_index_and_sign(int(s), L)
    Hd_sector = sgn[:, None] * sgn[None, :] * Hd[np.ix_(idx, idx)]
    assert np.abs(H - Hd_sector).max() < 1e-12


def test_sector_matrix_matches_qubit_oracle():
    """The spin-major qubit-string construction is sign-identical (no resigning)."""
    model = ModelSpec("alt-bonds", 4, 3.0, delta=0.4)
    basis = enumerate_sector(4, 2, 2)
    H = build_hamiltonian(model, basis).toarray()
    Hq = qudit_hamiltonian(model)
    L = 4
    qidx = [
        sum(((int(s) >> p) & 1) << (2 * L - 1 - p) for p in range(2 * L))
        for s in basis.states
    ]
    assert np.abs(H - Hq[np.ix_(qidx, qidx)]).max() < 1e-12


def test_validation_errors():
    with pytest.raises(DomainError):
        ModelSpec("alt-bonds", 5, 0.0, delta=0.5)
    with pytest.raises(DomainError):
        ModelSpec("alt-bonds", 4, 0.0, delta=1.5)
    with pytest.raises(DomainError):
        ModelSpec("alt-hopping", 4, 0.0, tau_a=-0.1)
    with pytest.raises(DomainError):
        ModelSpec("wrong", 4, 0.0)
    with pytest.raises(DomainError):
        build_uniform(4, 0.0, max_dim=10)


def test_spin_squared_in_two_site_sector():
    basis = enumerate_sector(2, 1, 1)
    apply_s2 = spin_squared_operator(basis)
    s2 = np.column_stack([apply_s2(col) for col in np.eye(basis.size)])
    evals = np.sort(np.linalg.eigvalsh(s2))
    assert np.allclose(evals, [0.0, 0.0, 0.0, 2.0], atol=1e-12)


def test_spin_raising_empty_when_up_band_full():
    basis = enumerate_sector(3, 3, 1)
    mat, raised = spin_raising_matrix(basis)
    assert raised is None
    assert mat.shape == (0, basis.size)
