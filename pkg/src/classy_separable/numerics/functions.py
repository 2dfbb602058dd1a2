"""Dense complex linear algebra kernels; everything else is built on these.
Singular values and eigenvalues are always returned in ascending order."""
from typing import Optional, Tuple

import numpy as np
import scipy.linalg

from classy_separable.base.exceptions import InvalidInputError
from classy_separable.numerics.spectrum import HermitianSpectrum
from classy_separable.types import DimsType, MatrixType, NPMatrixType, NPVectorType, SideType, VectorType
from classy_separable.util.constants import DTYPE, TOL


def as_matrix(matrix: MatrixType, name: str = "matrix") -> NPMatrixType:
    """Converts input to a 2D complex numpy array; raises
    if it isn't 2-dimensional or has non-finite entries"""
    array = np.asarray(matrix, dtype=DTYPE)

    if array.ndim != 2 or array.shape[0] < 1 or array.shape[1] < 1:
        raise InvalidInputError(f"{name} must be a non-empty 2D array, got shape {array.shape}")

    if not np.all(np.isfinite(array)):
        raise InvalidInputError(f"{name} has non-finite entries")

    return array


def as_vector(vector: VectorType, name: str = "vector") -> NPVectorType:
    """Same as as_matrix() for 1D arrays"""
    array = np.asarray(vector, dtype=DTYPE)

    if array.ndim != 1 or array.shape[0] < 1:
        raise InvalidInputError(f"{name} must be a non-empty 1D array, got shape {array.shape}")

    if not np.all(np.isfinite(array)):
        raise InvalidInputError(f"{name} has non-finite entries")

    return array


def dagger(matrix: NPMatrixType) -> NPMatrixType:
    """Conjugate transpose"""
    return matrix.conj().T


def norm(matrix: NPMatrixType) -> float:
    """Operator (spectral) norm of any matrix"""
    return float(scipy.linalg.norm(matrix, 2))


def _require_square(matrix: NPMatrixType, name: str) -> None:
    if matrix.shape[0] != matrix.shape[1]:
        raise InvalidInputError(f"{name} must be square, got shape {matrix.shape}")


def _require_hermitian(matrix: NPMatrixType, tol: float, name: str) -> None:
    _require_square(matrix, name)

    asymmetry = norm(matrix - dagger(matrix))
    if asymmetry > tol * max(1.0, norm(matrix)):
        raise InvalidInputError(f"{name} is not Hermitian", f"|m - m^dagger| = {asymmetry:.3e}")


def svd(matrix: MatrixType) -> Tuple[NPMatrixType, NPVectorType, NPMatrixType]:
    """Returns (U, s, V) with s ascending and U diag(s) V^dagger = matrix;
    U and V have min(rows, cols) orthonormal columns"""
    matrix = as_matrix(matrix)

    try:
        u, s, vh = scipy.linalg.svd(matrix, full_matrices=False, lapack_driver="gesdd")
    except np.linalg.LinAlgError:
        # the divide-and-conquer driver occasionally fails to converge
        u, s, vh = scipy.linalg.svd(matrix, full_matrices=False, lapack_driver="gesvd")

    order = np.arange(len(s))[::-1]

    return u[:, order], s[order], dagger(vh)[:, order]


def hermitian_eig(matrix: MatrixType, tol: Optional[float] = None) -> HermitianSpectrum:
    """Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix;
    input is symmetrized before solving to suppress round-off asymmetry"""
    if tol is None:
        tol = TOL.hermitian

    matrix = as_matrix(matrix)
    _require_hermitian(matrix, tol, "matrix")

    symmetric = (matrix + dagger(matrix)) / 2
    values, vectors = scipy.linalg.eigh(symmetric)

    return HermitianSpectrum(values, vectors)


def _psd_spectrum(matrix: MatrixType, tol: Optional[float]) -> HermitianSpectrum:
    if tol is None:
        tol = TOL.psd

    spectrum = hermitian_eig(matrix, tol)

    if spectrum.eigenvalues[0] < -tol * max(1.0, abs(spectrum.largest)):
        raise InvalidInputError(
            "matrix is not positive semidefinite", f"smallest eigenvalue: {spectrum.eigenvalues[0]:.3e}"
        )

    return spectrum


def chi_n(matrix: MatrixType, n: int, tol: Optional[float] = None) -> float:
    """Sum of the n smallest eigenvalues of a positive semidefinite matrix"""
    spectrum = _psd_spectrum(matrix, tol)

    if not 1 <= n <= spectrum.dim:
        raise InvalidInputError(f"n must be between 1 and {spectrum.dim}, got {n}")

    return spectrum.smallest(n)


def chi_all(matrix: MatrixType, tol: Optional[float] = None) -> NPVectorType:
    """chi_n for every n = 1..dim in a single eigensolve"""
    return np.cumsum(_psd_spectrum(matrix, tol).eigenvalues)


def kron(matrix_1: MatrixType, matrix_2: MatrixType) -> NPMatrixType:
    """Kronecker product; dimensions multiply"""
    return np.kron(as_matrix(matrix_1, "a"), as_matrix(matrix_2, "b"))


def partial_trace(rho: MatrixType, dims: DimsType, side: SideType, tol: Optional[float] = None) -> NPMatrixType:
    """Traces out subsystem 'side' of an operator on H_A (x) H_B;
    side='A' returns the reduced operator on B and vice versa"""
    if tol is None:
        tol = TOL.hermitian

    rho = as_matrix(rho, "rho")
    dim_a, dim_b = dims

    if rho.shape != (dim_a * dim_b, dim_a * dim_b):
        raise InvalidInputError(f"rho must be {dim_a * dim_b}x{dim_a * dim_b} for dims {dims}, got {rho.shape}")

    _require_hermitian(rho, tol, "rho")

    tensor = rho.reshape(dim_a, dim_b, dim_a, dim_b)

    if side == "A":
        return np.einsum("ijik->jk", tensor)

    if side == "B":
        return np.einsum("ijkj->ik", tensor)

    raise InvalidInputError(f"side must be 'A' or 'B', got {side}")


def operator_norm(matrix: MatrixType, tol: Optional[float] = None) -> float:
    """Largest eigenvalue of a positive semidefinite matrix"""
    return _psd_spectrum(matrix, tol).largest


def numerical_rank(matrix: MatrixType, tol: Optional[float] = None) -> int:
    """Number of singular values above tol * (largest singular value)"""
    if tol is None:
        tol = TOL.rank

    values = scipy.linalg.svdvals(as_matrix(matrix))
    if values[0] == 0:
        return 0

    return int(np.sum(values > tol * values[0]))


def complement_projector(matrix: MatrixType, tol: Optional[float] = None) -> NPMatrixType:
    """Orthogonal projector onto the complement of the range of 'matrix';
    tol is relative to the largest singular value"""
    if tol is None:
        tol = TOL.rank

    matrix = as_matrix(matrix)

    # the complement of range(m) is the null space of m^dagger
    basis = scipy.linalg.null_space(dagger(matrix), rcond=tol)

    return basis @ dagger(basis)


def is_unitary(matrix: NPMatrixType, tol: Optional[float] = None) -> bool:
    """Checks orthonormality of columns (an isometry when not square)"""
    if tol is None:
        tol = TOL.orthonormal

    gram = dagger(matrix) @ matrix
    return norm(gram - np.eye(gram.shape[0])) <= tol
