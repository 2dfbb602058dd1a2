import dataclasses

import numpy as np

from classy_separable.types import NPMatrixType, NPVectorType


@dataclasses.dataclass(frozen=True)
class HermitianSpectrum:
    """Eigen-decomposition of a Hermitian operator;
    eigenvalues ascending, eigenvectors in columns"""

    eigenvalues: NPVectorType
    eigenvectors: NPMatrixType

    @property
    def dim(self) -> int:
        return len(self.eigenvalues)

    def reconstruct(self) -> NPMatrixType:
        """V diag(e) V^dagger"""
        vectors = self.eigenvectors
        return (vectors * self.eigenvalues) @ vectors.conj().T

    def smallest(self, n: int) -> float:
        """Sum of the n smallest eigenvalues"""
        return float(np.sum(self.eigenvalues[:n]))

    @property
    def largest(self) -> float:
        return float(self.eigenvalues[-1])
