import unittest

import numpy as np
from parameterized import parameterized

from classy_separable.base.exceptions import InvalidInputError
from classy_separable.numerics import functions as f
from classy_separable.sepops.generators import ginibre, random_state


def random_psd(dim: int, seed: int) -> np.ndarray:
    matrix = ginibre((dim, dim), np.random.default_rng(seed))
    return matrix @ matrix.conj().T


class FunctionsTestBase(unittest.TestCase):
    def assert_np_almost_equal(self, a, b, decimal=9, msg=None):
        return np.testing.assert_array_almost_equal(a, b, decimal=decimal, err_msg=msg)


class SvdTests(FunctionsTestBase):
    def test_identity(self):
        _, s, _ = f.svd(np.eye(2))

        self.assert_np_almost_equal(s, [1, 1])

    def test_diagonal_ascending(self):
        _, s, _ = f.svd(np.diag([3, 0]))

        self.assert_np_almost_equal(s, [0, 3])

    def test_non_finite(self):
        with self.assertRaises(InvalidInputError):
            f.svd([[1, np.nan], [0, 1]])

    @parameterized.expand(((0,), (1,), (2,)))
    def test_against_eigenvalues(self, seed):
        """Squared singular values are eigenvalues of m^dagger m"""
        matrix = ginibre((3, 3), np.random.default_rng(seed))
        _, s, _ = f.svd(matrix)

        eigenvalues = np.linalg.eigvalsh(matrix.conj().T @ matrix)

        self.assert_np_almost_equal(s**2, eigenvalues)

    @parameterized.expand([(dim, seed) for dim in (2, 5, 8, 16) for seed in (0, 1, 2)])
    def test_reconstruction(self, dim, seed):
        for shape in ((dim, dim), (dim, max(1, dim // 2)), (max(1, dim // 2), dim)):
            matrix = ginibre(shape, np.random.default_rng(seed))
            u, s, v = f.svd(matrix)

            self.assertLessEqual(f.norm(u @ np.diag(s) @ v.conj().T - matrix), 1e-9)
            self.assertTrue(np.all(np.diff(s) >= 0))


    def test_orthonormal_columns(self):
        u, _, v = f.svd(ginibre((4, 4), np.random.default_rng(4)))

        self.assertTrue(f.is_unitary(u))
        self.assertTrue(f.is_unitary(v))


class HermitianEigTests(FunctionsTestBase):
    def test_identity(self):
        self.assert_np_almost_equal(f.hermitian_eig(np.eye(2)).eigenvalues, [1, 1])

    def test_ascending(self):
        self.assert_np_almost_equal(f.hermitian_eig(np.diag([0.8, 0.2])).eigenvalues, [0.2, 0.8])

    def test_non_square(self):
        with self.assertRaises(InvalidInputError):
            f.hermitian_eig(np.ones((2, 3)))

    def test_non_hermitian(self):
        with self.assertRaises(InvalidInputError):
            f.hermitian_eig([[0, 1], [0, 0]])

    def test_round_off_asymmetry(self):
        """Tiny asymmetry is accepted and symmetrized"""
        matrix = np.array([[1, 1e-13], [0, 1]])

        self.assert_np_almost_equal(f.hermitian_eig(matrix).eigenvalues, [1, 1])

    @parameterized.expand(((0,), (1,), (2,)))
    def test_trace(self, seed):
        matrix = ginibre((4, 4), np.random.default_rng(seed))
        matrix = matrix + matrix.conj().T

        spectrum = f.hermitian_eig(matrix)

        self.assertAlmostEqual(np.sum(spectrum.eigenvalues), np.trace(matrix).real, places=10)

    @parameterized.expand([(dim, seed) for dim in (2, 5, 8, 16) for seed in (0, 1, 2)])
    def test_reconstruction(self, dim, seed):
        matrix = random_psd(dim, seed)
        spectrum = f.hermitian_eig(matrix)

        self.assertLessEqual(f.norm(spectrum.reconstruct() - matrix), 1e-9)
        self.assertTrue(f.is_unitary(spectrum.eigenvectors))
        self.assertTrue(np.all(np.diff(spectrum.eigenvalues) >= 0))



class ChiTests(FunctionsTestBase):
    def test_equal_halves(self):
        self.assertAlmostEqual(f.chi_n(np.diag([0.5, 0.5]), 1), 0.5)

    def test_trace(self):
        self.assertAlmostEqual(f.chi_n(np.diag([0.2, 0.8]), 2), 1.0)

    @parameterized.expand(((0,), (3,)))
    def test_n_out_of_range(self, n):
        with self.assertRaises(InvalidInputError):
            f.chi_n(np.eye(2), n)

    def test_not_psd(self):
        with self.assertRaises(InvalidInputError):
            f.chi_n(np.diag([-1, 1]), 1)

    def test_chi_all(self):
        self.assert_np_almost_equal(f.chi_all(np.diag([0.7, 0.1, 0.2])), [0.1, 0.3, 1.0])

    @parameterized.expand(((0,), (1,), (2,)))
    def test_variational(self, seed):
        """chi_n is the minimum of Tr(P m P) over rank-n projectors;
        projectors onto random subspaces never go below it"""
        rng = np.random.default_rng(seed)
        matrix = random_psd(3, seed)

        for n in (1, 2, 3):
            value = f.chi_n(matrix, n)

            for _ in range(50):
                basis, _ = np.linalg.qr(ginibre((3, n), rng))
                projected = np.trace(basis.conj().T @ matrix @ basis).real
                self.assertGreaterEqual(projected, value - 1e-10)

            # and the lowest eigenvectors attain it
            vectors = f.hermitian_eig(matrix).eigenvectors[:, :n]
            self.assertAlmostEqual(np.trace(vectors.conj().T @ matrix @ vectors).real, value, places=10)


class KronTests(FunctionsTestBase):
    def test_identities(self):
        np.testing.assert_array_equal(f.kron(np.eye(2), np.eye(2)), np.eye(4))

    def test_scalar(self):
        self.assert_np_almost_equal(f.kron([[2]], np.eye(2)), 2 * np.eye(2))

    @parameterized.expand(((2,), (3,)))
    def test_mixed_product(self, dim):
        rng = np.random.default_rng(dim)
        a, b, c, d = (ginibre((dim, dim), rng) for _ in range(4))

        self.assert_np_almost_equal(f.kron(a, b) @ f.kron(c, d), f.kron(a @ c, b @ d), decimal=12)

    def test_rectangular(self):
        rng = np.random.default_rng(1)
        a, b = ginibre((3, 2), rng), ginibre((2, 3), rng)

        self.assertEqual(f.kron(a, b).shape, (6, 6))
        self.assert_np_almost_equal(f.kron(a, b)[2:4, 3:6], a[1, 1] * b, decimal=12)



class PartialTraceTests(FunctionsTestBase):
    def test_bell_trace_a(self):
        bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
        rho = np.outer(bell, bell)

        self.assert_np_almost_equal(f.partial_trace(rho, (2, 2), "A"), np.eye(2) / 2)

    def test_product_trace_b(self):
        rho = np.kron(np.diag([1, 0]), np.diag([0, 1]))

        self.assert_np_almost_equal(f.partial_trace(rho, (2, 2), "B"), np.diag([1, 0]))

    def test_unequal_dims(self):
        rho = np.kron(np.diag([0.25, 0.75]), np.eye(3) / 3)

        self.assert_np_almost_equal(f.partial_trace(rho, (2, 3), "A"), np.eye(3) / 3)
        self.assert_np_almost_equal(f.partial_trace(rho, (2, 3), "B"), np.diag([0.25, 0.75]))

    def test_dimension_mismatch(self):
        with self.assertRaises(InvalidInputError):
            f.partial_trace(np.eye(4), (2, 3), "A")

    def test_invalid_side(self):
        with self.assertRaises(InvalidInputError):
            f.partial_trace(np.eye(4), (2, 2), "C")

    @parameterized.expand(((0, (2, 3)), (1, (3, 3)), (2, (4, 2))))
    def test_spectra_agree(self, seed, dims):
        state = random_state(dims, seed)
        rho = state.density()

        on_b = np.linalg.eigvalsh(f.partial_trace(rho, dims, "A"))
        on_a = np.linalg.eigvalsh(f.partial_trace(rho, dims, "B"))
        count = min(dims)

        self.assert_np_almost_equal(on_a[-count:], on_b[-count:], decimal=10)


class OperatorNormTests(FunctionsTestBase):
    def test_scaling(self):
        self.assertAlmostEqual(f.operator_norm(4 * np.eye(3)), 4)

    def test_diagonal(self):
        self.assertAlmostEqual(f.operator_norm(np.diag([0.1, 0.9])), 0.9)

    def test_not_psd(self):
        with self.assertRaises(InvalidInputError):
            f.operator_norm(np.diag([-1, 0.5]))

    def test_rayleigh_bound(self):
        """No Rayleigh quotient exceeds the norm, the best of many comes close"""
        rng = np.random.default_rng(1)
        matrix = random_psd(3, 1)
        value = f.operator_norm(matrix)

        vectors = ginibre((3, 2000), rng)
        vectors /= np.linalg.norm(vectors, axis=0)
        quotients = np.einsum("ij,ik,kj->j", vectors.conj(), matrix, vectors).real

        self.assertLessEqual(np.max(quotients), value + 1e-10)
        self.assertGreaterEqual(np.max(quotients), 0.9 * value)


class ComplementProjectorTests(FunctionsTestBase):
    def test_zero(self):
        self.assert_np_almost_equal(f.complement_projector(np.zeros((2, 2))), np.eye(2))

    def test_identity(self):
        self.assert_np_almost_equal(f.complement_projector(np.eye(2)), np.zeros((2, 2)))

    @parameterized.expand(((0,), (1,), (2,)))
    def test_rank_one(self, seed):
        rng = np.random.default_rng(seed)
        vector = ginibre((3, 1), rng)
        matrix = vector @ ginibre((1, 3), rng)

        projector = f.complement_projector(matrix)

        self.assertEqual(f.numerical_rank(projector), 2)
        self.assertLessEqual(f.norm(projector @ matrix), 1e-10)
        self.assertLessEqual(f.norm(projector @ projector - projector), 1e-10)


class RankTests(FunctionsTestBase):
    def test_zero(self):
        self.assertEqual(f.numerical_rank(np.zeros((3, 3))), 0)

    def test_deficient(self):
        self.assertEqual(f.numerical_rank(np.diag([1, 1e-14, 0])), 1)


class ValidationTests(FunctionsTestBase):
    @parameterized.expand(
        (
            ([1, 2],),
            ([[]],),
            ([[1, np.inf]],),
        )
    )
    def test_as_matrix_invalid(self, data):
        with self.assertRaises(InvalidInputError):
            f.as_matrix(data)

    @parameterized.expand(((np.zeros((2, 2)),), ([],), ([np.nan],)))
    def test_as_vector_invalid(self, data):
        with self.assertRaises(InvalidInputError):
            f.as_vector(data)
