import numpy as np
import pytest

from quatpoly import NoConvergenceError, NonSquareError, SingularMatrixError, eig_complex
from quatpoly.eigensolver import eigenvector, inverse_complex, lu_factor, lu_solve


def sorted_vals(vals):
    return np.array(sorted(vals, key=lambda z: (z.real, z.imag)))


def assert_spectra_match(mine, reference, tol):
    mine = sorted_vals(mine)
    reference = sorted_vals(reference)
    assert mine.shape == reference.shape
    assert np.max(np.abs(mine - reference)) <= tol


def test_rotation_block():
    vals = eig_complex(np.array([[0.0, 1.0], [-1.0, 0.0]]))
    assert_spectra_match(vals, [1j, -1j], 1e-12)


def test_diagonal():
    vals = eig_complex(np.diag([1.0, 0.0]))
    assert_spectra_match(vals, [1.0, 0.0], 1e-14)


def test_companion_of_quadratic():
    # z^2 + z - 1: roots (-1 +- sqrt(5)) / 2
    comp = np.array([[0.0, 1.0], [1.0, -1.0]])
    vals = eig_complex(comp)
    golden = np.sqrt(5.0)
    assert_spectra_match(vals, [(-1 + golden) / 2, (-1 - golden) / 2], 1e-12)


@pytest.mark.parametrize("n", [2, 3, 5, 8, 12])
def test_matches_library_eigensolver(n):
    rng = np.random.default_rng(100 + n)
    for _ in range(5):
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        mine = eig_complex(a)
        reference = np.linalg.eigvals(a)
        assert_spectra_match(mine, reference, 1e-8 * np.linalg.norm(a))


def test_hermitian_eigenvalues_real():
    rng = np.random.default_rng(200)
    a = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    h = a + a.conj().T
    vals = eig_complex(h)
    assert np.max(np.abs(vals.imag)) <= 1e-10 * np.linalg.norm(h)
    assert_spectra_match(vals, np.linalg.eigvalsh(h), 1e-8 * np.linalg.norm(h))


def test_defective_jordan_block():
    a = np.array([[1.0, 1.0], [0.0, 1.0]])
    vals = eig_complex(a)
    assert np.max(np.abs(vals - 1.0)) <= 1e-6


def test_badly_scaled_matrix_balanced():
    rng = np.random.default_rng(300)
    a = rng.standard_normal((5, 5))
    d = np.diag([1e-6, 1e-3, 1.0, 1e3, 1e6])
    scaled = np.linalg.solve(d, a) @ d
    assert_spectra_match(eig_complex(scaled), np.linalg.eigvals(a),
                         1e-7 * np.linalg.norm(a))


def test_eigenvector_residuals():
    rng = np.random.default_rng(400)
    for n in (3, 6, 9):
        a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        scale = np.linalg.norm(a)
        for lam in eig_complex(a):
            v, res = eigenvector(a, lam)
            assert res <= 1e-8 * scale
            assert np.linalg.norm(a @ v - lam * v) <= 1e-8 * scale * np.linalg.norm(v)


def test_eigenvector_for_multiple_eigenvalue():
    a = np.diag([2.0, 2.0, 5.0]).astype(complex)
    v, res = eigenvector(a, 2.0)
    assert res <= 1e-10
    assert abs(v[2]) <= 1e-8


def test_no_convergence_on_exhausted_sweep_budget():
    rng = np.random.default_rng(600)
    a = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    with pytest.raises(NoConvergenceError):
        eig_complex(a, max_sweeps_per_dim=0)


def test_shape_and_size_guards():
    with pytest.raises(NonSquareError):
        eig_complex(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        eig_complex(np.zeros((513, 513)))
    with pytest.raises(ValueError):
        eig_complex(np.array([[np.nan, 0], [0, 1.0]]))


def test_lu_solve_roundtrip():
    rng = np.random.default_rng(500)
    a = rng.standard_normal((7, 7)) + 1j * rng.standard_normal((7, 7))
    b = rng.standard_normal(7) + 1j * rng.standard_normal(7)
    lu, piv = lu_factor(a)
    x = lu_solve(lu, piv, b)
    assert np.linalg.norm(a @ x - b) <= 1e-10 * np.linalg.norm(b)


def test_inverse_complex_and_singularity():
    rng = np.random.default_rng(501)
    a = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
    inv = inverse_complex(a, min_pivot=1e-12 * np.linalg.norm(a))
    assert np.linalg.norm(a @ inv - np.eye(5)) <= 1e-9
    singular = np.ones((3, 3), dtype=complex)
    with pytest.raises(SingularMatrixError):
        inverse_complex(singular, min_pivot=1e-12 * np.linalg.norm(singular))
