from typing import Optional

import numpy as np
import scipy.linalg

from classy_separable.base.exceptions import InvalidInputError
from classy_separable.numerics.functions import as_matrix, as_vector
from classy_separable.types import DimsType, MatrixType, NPMatrixType, NPVectorType, VectorType
from classy_separable.util.constants import DTYPE, TOL


class PureState:
    """A normalized state vector on H_A (x) H_B;
    amplitude of |i>|j> is stored at index i*D_B + j"""

    def __init__(self, dim_a: int, dim_b: int, amplitudes: VectorType, tol: Optional[float] = None):
        if tol is None:
            tol = TOL.norm_input

        if dim_a < 1 or dim_b < 1:
            raise InvalidInputError(f"Local dimensions must be positive, got ({dim_a}, {dim_b})")

        amplitudes = as_vector(amplitudes, "amplitudes")
        if len(amplitudes) != dim_a * dim_b:
            raise InvalidInputError(
                f"Expected {dim_a * dim_b} amplitudes for dims ({dim_a}, {dim_b}), got {len(amplitudes)}"
            )

        length = float(scipy.linalg.norm(amplitudes))
        if abs(length - 1) > tol:
            raise InvalidInputError("State is not normalized", f"norm = {length:.17g}")

        self.dim_a = int(dim_a)
        self.dim_b = int(dim_b)
        self.amplitudes: NPVectorType = amplitudes.copy()
        self.amplitudes.flags.writeable = False

    @classmethod
    def normalized(cls, dim_a: int, dim_b: int, vector: VectorType) -> "PureState":
        """Divides the vector by its norm; used for states the library produces"""
        vector = as_vector(vector)
        length = float(scipy.linalg.norm(vector))

        if length == 0:
            raise InvalidInputError("Cannot normalize a zero vector")

        return cls(dim_a, dim_b, vector / length, tol=TOL.norm)

    @classmethod
    def from_matrix(cls, matrix: MatrixType, tol: Optional[float] = None) -> "PureState":
        """State from its D_A x D_B coefficient matrix"""
        matrix = as_matrix(matrix)
        return cls(matrix.shape[0], matrix.shape[1], matrix.reshape(-1), tol)

    @classmethod
    def product(cls, dims: DimsType, i: int = 0, j: int = 0) -> "PureState":
        """Computational basis product state |i>|j>"""
        dim_a, dim_b = dims
        if not (0 <= i < dim_a and 0 <= j < dim_b):
            raise InvalidInputError(f"Basis indexes ({i}, {j}) out of range for dims {dims}")

        amplitudes = np.zeros(dim_a * dim_b, dtype=DTYPE)
        amplitudes[i * dim_b + j] = 1

        return cls(dim_a, dim_b, amplitudes)

    @classmethod
    def from_schmidt(
        cls,
        weights: VectorType,
        dims: Optional[DimsType] = None,
        basis_a: Optional[MatrixType] = None,
        basis_b: Optional[MatrixType] = None,
    ) -> "PureState":
        """Builds sum_j sqrt(w_j) |a_j>|b_j>; bases default to the
        computational ones and dims to (len(weights), len(weights))"""
        weights = np.asarray(weights, dtype=float)

        if weights.ndim != 1 or len(weights) < 1 or not np.all(np.isfinite(weights)):
            raise InvalidInputError("Schmidt weights must be a non-empty vector of finite numbers")
        if np.any(weights < 0):
            raise InvalidInputError(f"Schmidt weights must be nonnegative, got {weights}")

        count = len(weights)
        if dims is None:
            dims = (count, count)

        dim_a, dim_b = dims
        if count > min(dim_a, dim_b):
            raise InvalidInputError(f"{count} Schmidt weights do not fit into dims {dims}")

        basis_a = np.eye(dim_a, count, dtype=DTYPE) if basis_a is None else as_matrix(basis_a, "basis_a")
        basis_b = np.eye(dim_b, count, dtype=DTYPE) if basis_b is None else as_matrix(basis_b, "basis_b")

        # sum_j sqrt(w_j) a_j b_j^T is the coefficient matrix
        matrix = (basis_a[:, :count] * np.sqrt(weights)) @ basis_b[:, :count].T

        return cls(dim_a, dim_b, matrix.reshape(-1))

    @property
    def dims(self) -> DimsType:
        return (self.dim_a, self.dim_b)

    @property
    def matrix(self) -> NPMatrixType:
        """D_A x D_B coefficient matrix c_ij"""
        return self.amplitudes.reshape(self.dim_a, self.dim_b)

    @property
    def norm(self) -> float:
        return float(scipy.linalg.norm(self.amplitudes))

    def density(self) -> NPMatrixType:
        """|psi><psi|"""
        return np.outer(self.amplitudes, self.amplitudes.conj())

    def overlap(self, other: "PureState") -> float:
        """|<self|other>|"""
        if self.dims != other.dims:
            raise InvalidInputError(f"Cannot compare states with dims {self.dims} and {other.dims}")

        return float(abs(np.vdot(self.amplitudes, other.amplitudes)))

    def same_as(self, other: "PureState", tol: Optional[float] = None) -> bool:
        """Equality up to global phase"""
        if tol is None:
            tol = TOL.reconstruction

        return self.dims == other.dims and self.overlap(other) >= 1 - tol

    def __repr__(self) -> str:
        return f"PureState(dims={self.dims}, amplitudes={self.amplitudes.tolist()})"
