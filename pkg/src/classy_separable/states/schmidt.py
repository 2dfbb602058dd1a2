"""Schmidt decomposition and the pure-state monotones built on Schmidt weights"""
import dataclasses
from typing import Optional

import numpy as np
import scipy.stats

from classy_separable.base.exceptions import InvalidInputError
from classy_separable.numerics.functions import svd
from classy_separable.states.state import PureState
from classy_separable.types import NPMatrixType, NPVectorType, VectorType
from classy_separable.util.constants import TOL


@dataclasses.dataclass(frozen=True)
class SchmidtDecomposition:
    """|psi> = sum_j sqrt(weights[j]) |a_j>|b_j> with ascending weights;
    basis vectors are columns of basis_a (D_A x D) and basis_b (D_B x D)"""

    weights: NPVectorType
    basis_a: NPMatrixType
    basis_b: NPMatrixType

    @property
    def dim(self) -> int:
        """D = min(D_A, D_B)"""
        return len(self.weights)

    def reconstruct(self) -> PureState:
        return PureState.from_schmidt(
            self.weights, (self.basis_a.shape[0], self.basis_b.shape[0]), self.basis_a, self.basis_b
        )


def schmidt_decompose(state: PureState) -> SchmidtDecomposition:
    """Schmidt weights are squared singular values of the coefficient matrix"""
    if abs(state.norm - 1) > TOL.norm_input:
        raise InvalidInputError("State is not normalized", f"norm = {state.norm:.17g}")

    # c = U diag(s) V^dagger = sum_j s_j u_j conj(v_j)^T
    u, s, v = svd(state.matrix / state.norm)

    return SchmidtDecomposition(s**2, u, v.conj())


def padded_weights(weights: VectorType, length: int) -> NPVectorType:
    """Pads ascending weights with zeros at the low end"""
    weights = np.asarray(weights, dtype=float)

    if len(weights) > length:
        raise InvalidInputError(f"Cannot pad {len(weights)} weights to length {length}")

    return np.concatenate((np.zeros(length - len(weights)), weights))


def e_n_vector(state: PureState) -> NPVectorType:
    """E_n for n = 1..D: sums of the n smallest Schmidt weights;
    D is the smaller local dimension"""
    return np.cumsum(schmidt_decompose(state).weights)


def padded_e_n(state: PureState, length: int) -> NPVectorType:
    """E_n vector of a state whose weights were padded to 'length'"""
    return np.cumsum(padded_weights(schmidt_decompose(state).weights, length))


def _clean_weights(state: PureState) -> NPVectorType:
    # round-off can leave tiny negative values
    return np.clip(schmidt_decompose(state).weights, 0, None)


def entanglement_entropy(state: PureState) -> float:
    """-sum_j w_j log2 w_j with 0 log 0 = 0"""
    return float(scipy.stats.entropy(_clean_weights(state), base=2))


def renyi_entropy(state: PureState, alpha: float) -> float:
    """Renyi entropy of the Schmidt weights in bits; alpha=1 is the entanglement entropy"""
    if alpha <= 0:
        raise InvalidInputError(f"Renyi parameter alpha must be positive, got {alpha}")

    if alpha == 1:
        return entanglement_entropy(state)

    weights = _clean_weights(state)
    weights = weights[weights > 0]

    if np.isinf(alpha):
        return float(-np.log2(np.max(weights)))

    return float(np.log2(np.sum(weights**alpha)) / (1 - alpha))


def schmidt_rank(state: PureState, tol: Optional[float] = None) -> int:
    """Number of Schmidt weights above tol"""
    if tol is None:
        tol = TOL.reconstruction

    return int(np.sum(schmidt_decompose(state).weights > tol))


def truncated_state(state: PureState, n: int) -> NPVectorType:
    """Unnormalized |psi_n> = sum_{j<=n} sqrt(w_j)|a_j>|b_j>,
    keeping the n smallest Schmidt components"""
    decomposition = schmidt_decompose(state)

    if not 1 <= n <= decomposition.dim:
        raise InvalidInputError(f"n must be between 1 and {decomposition.dim}, got {n}")

    basis_a = decomposition.basis_a[:, :n]
    basis_b = decomposition.basis_b[:, :n]
    matrix = (basis_a * np.sqrt(decomposition.weights[:n])) @ basis_b.T

    return matrix.reshape(-1)
