import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dicke_optics.operators import (
    FockBasis,
    OperatorMatrix,
    SpinBasis,
    annihilation,
    collective_spin,
    creation,
    identity,
    number,
    quadrature_square_matrices,
    spin_ladder,
    tensor,
)


def test_annihilation_cutoff_one():
    a = annihilation(FockBasis(1))
    assert np.array_equal(a.entries, [[0.0, 1.0], [0.0, 0.0]])
    assert not a.symmetric


def test_annihilation_entry():
    a = annihilation(FockBasis(4)).entries
    assert a[3, 4] == 2.0
    assert np.count_nonzero(a) == 4


def test_transpose_acts_as_creation():
    fock = FockBasis(3)
    a, ad = annihilation(fock).entries, creation(fock).entries
    vac = fock.state(0)
    assert vac @ a @ ad @ vac == pytest.approx(1.0)


@pytest.mark.parametrize("cutoff", [1, 2, 7, 30])
def test_commutator_except_corner(cutoff):
    a = annihilation(FockBasis(cutoff)).entries
    comm = a @ a.T - a.T @ a
    expected = np.eye(cutoff + 1)
    expected[-1, -1] = -cutoff
    assert np.allclose(comm, expected, atol=1e-12)


def test_basis_validation():
    with pytest.raises(ValueError):
        FockBasis(0)
    with pytest.raises(ValueError):
        SpinBasis(0)
    with pytest.raises(ValueError):
        FockBasis(2.5)


def test_operator_matrix_is_immutable_and_checked():
    m = identity(3, "x")
    with pytest.raises(ValueError):
        m.entries[0, 0] = 2.0
    with pytest.raises(ValueError):
        OperatorMatrix(np.array([[0.0, 1.0], [0.0, 0.0]]), "x", symmetric=True)
    with pytest.raises(ValueError):
        OperatorMatrix(np.zeros((2, 3)), "x")


@pytest.mark.parametrize("cutoff", [1, 5, 20])
def test_vacuum_quadrature_variance(cutoff):
    fock = FockBasis(cutoff)
    x1sq, x2sq = quadrature_square_matrices(fock)
    vac = fock.state(0)
    assert vac @ x1sq.entries @ vac == pytest.approx(0.25)
    assert vac @ x2sq.entries @ vac == pytest.approx(0.25)
    assert x1sq.symmetric and x2sq.symmetric


def test_quadrature_sum_interior_diagonal():
    # Oracle: (X1^2 + X2^2) = (a†a + a a†)/2 from direct matrix arithmetic.
    fock = FockBasis(12)
    x1sq, x2sq = quadrature_square_matrices(fock)
    a = annihilation(fock).entries
    oracle = 0.5 * (a.T @ a + a @ a.T)
    total = x1sq.entries + x2sq.entries
    assert np.allclose(total, oracle, atol=1e-13)
    n = np.arange(fock.cutoff)
    assert np.allclose(np.diag(total)[:-1], n + 0.5)


def test_single_spin():
    jz, jx = collective_spin(SpinBasis(1))
    assert np.array_equal(jz.entries, np.diag([-0.5, 0.5]))
    assert jx.entries[0, 1] == 0.5 and jx.entries[1, 0] == 0.5


def test_spin_one_ladder():
    jp = spin_ladder(SpinBasis(2)).entries
    # <1,0|J+|1,-1>
    assert jp[1, 0] == pytest.approx(np.sqrt(2))


def _pauli_sum(n_atoms):
    # Brute-force oracle: J = sum of single-spin operators on the 2^N space.
    sx = np.array([[0.0, 1.0], [1.0, 0.0]]) / 2
    sz = np.array([[-1.0, 0.0], [0.0, 1.0]]) / 2
    dim = 2**n_atoms
    jx = np.zeros((dim, dim))
    jz = np.zeros((dim, dim))
    for site in range(n_atoms):
        left, right = np.eye(2**site), np.eye(2 ** (n_atoms - site - 1))
        jx += np.kron(np.kron(left, sx), right)
        jz += np.kron(np.kron(left, sz), right)
    return jz, jx


@pytest.mark.parametrize("n_atoms", [1, 2, 3, 4])
def test_collective_spin_matches_spin_sum_in_top_sector(n_atoms):
    jz_full, jx_full = _pauli_sum(n_atoms)
    jz, jx = collective_spin(SpinBasis(n_atoms))
    # Extremal eigenvalues of the full sum live in the j = N/2 sector.
    assert np.linalg.eigvalsh(jx_full).max() == pytest.approx(np.linalg.eigvalsh(jx.entries).max())
    assert np.linalg.eigvalsh(jx_full).min() == pytest.approx(np.linalg.eigvalsh(jx.entries).min())
    assert np.allclose(np.diag(jz.entries), np.arange(n_atoms + 1) - n_atoms / 2)


@pytest.mark.parametrize("n_atoms", [1, 2, 5, 8])
def test_jx_spectrum_equals_jz(n_atoms):
    jz, jx = collective_spin(SpinBasis(n_atoms))
    assert np.allclose(np.linalg.eigvalsh(jx.entries), np.diag(jz.entries), atol=1e-12)


@pytest.mark.parametrize("n_atoms", [1, 3, 6, 11])
def test_spin_algebra_exact(n_atoms):
    spin = SpinBasis(n_atoms)
    jz, jx = collective_spin(spin)
    jp = spin_ladder(spin).entries
    jm = jp.T
    z = jz.entries
    assert np.allclose(z @ jp - jp @ z, jp, atol=1e-12)
    assert np.allclose(z @ jm - jm @ z, -jm, atol=1e-12)
    assert np.allclose(jp @ jm - jm @ jp, 2 * z, atol=1e-12)
    j = spin.j
    casimir = jx.entries @ jx.entries + z @ z
    assert np.linalg.eigvalsh(casimir).max() <= j * (j + 1) + 1e-12


def test_tensor_identity_and_dims():
    out = tensor(identity(2, "a"), identity(3, "b"))
    assert np.array_equal(out.entries, np.eye(6))
    assert out.dim == 6
    assert out.symmetric
    assert out.basis_tag == "a*b"


def test_tensor_symmetry_flag():
    fock = FockBasis(2)
    assert not tensor(annihilation(fock), number(fock)).symmetric


def test_tensor_mixed_product():
    # Oracle: explicit multiplication of the factors.
    A = OperatorMatrix(np.array([[1.0, 2.0], [3.0, 4.0]]), "a")
    B = OperatorMatrix(np.array([[0.0, -1.0], [5.0, 2.0]]), "b")
    I2a, I2b = identity(2, "a"), identity(2, "b")
    lhs = tensor(A, I2b).entries @ tensor(I2a, B).entries
    expected = np.array(
        [[A.entries[i // 2, k // 2] * B.entries[i % 2, k % 2] for k in range(4)] for i in range(4)]
    )
    assert np.allclose(lhs, expected)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6))
def test_tensor_photon_index_slowest(cutoff, n_atoms):
    fock, spin = FockBasis(cutoff), SpinBasis(n_atoms)
    nop = tensor(number(fock), identity(spin.dim, spin.tag))
    jz, _ = collective_spin(spin)
    mop = tensor(identity(fock.dim, fock.tag), jz)
    for n in range(fock.dim):
        for s in range(spin.dim):
            row = n * spin.dim + s
            assert nop.entries[row, row] == n
            assert mop.entries[row, row] == s - spin.j
