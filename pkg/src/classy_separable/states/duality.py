"""Map-state duality: a bipartite state |psi> = sum c_ij |i>|j>
corresponds to the D_A x D_B matrix c, a map from H_B to H_A.
Partial traces become products: c c^dagger acts on H_A and
c^T conj(c) on H_B; both share the Schmidt weights as nonzero spectrum."""
import dataclasses
from typing import Tuple

import numpy as np

from classy_separable.base.exceptions import InvalidInputError
from classy_separable.numerics.functions import as_matrix
from classy_separable.states.schmidt import schmidt_decompose
from classy_separable.states.state import PureState
from classy_separable.types import MatrixType, NPMatrixType


@dataclasses.dataclass(frozen=True)
class StateMap:
    """Coefficient matrix of a state in a product basis"""

    matrix: NPMatrixType

    def __post_init__(self):
        object.__setattr__(self, "matrix", as_matrix(self.matrix, "map"))

    @property
    def shape(self) -> Tuple[int, int]:
        return self.matrix.shape

    @property
    def is_diagonal(self) -> bool:
        off_diagonal = self.matrix.copy()
        np.fill_diagonal(off_diagonal, 0)

        return not np.any(off_diagonal)

    def reduced_a(self) -> NPMatrixType:
        """psi psi^dagger, the reduced density operator on H_A"""
        return self.matrix @ self.matrix.conj().T

    def reduced_b(self) -> NPMatrixType:
        """psi^T conj(psi), the reduced density operator on H_B"""
        return self.matrix.T @ self.matrix.conj()


def state_to_map(state: PureState) -> StateMap:
    return StateMap(state.matrix.copy())


def map_to_state(state_map: StateMap) -> PureState:
    return PureState.from_matrix(state_map.matrix)


def schmidt_map(state: PureState) -> StateMap:
    """The state's map written in its own Schmidt bases:
    D x D diagonal with ascending sqrt(weights)"""
    weights = np.clip(schmidt_decompose(state).weights, 0, None)

    return StateMap(np.diag(np.sqrt(weights)))


def truncate_map(state_map: StateMap, n: int) -> Tuple[StateMap, StateMap]:
    """Splits a diagonal ascending map as psi = psi_n + psi_tilde_n;
    psi_n keeps the n smallest diagonal entries, psi_tilde_n the rest"""
    matrix = state_map.matrix

    if not state_map.is_diagonal:
        raise InvalidInputError("Only diagonal maps (Schmidt-basis representation) can be truncated")

    diagonal = np.diag(matrix)
    if np.any(diagonal.imag != 0) or np.any(diagonal.real < 0):
        raise InvalidInputError("Diagonal of the map must be real and nonnegative")
    if np.any(np.diff(diagonal.real) < 0):
        raise InvalidInputError("Diagonal of the map must be in ascending order")

    if not 1 <= n <= len(diagonal):
        raise InvalidInputError(f"n must be between 1 and {len(diagonal)}, got {n}")

    kept = np.zeros_like(matrix)
    kept[:n, :n] = matrix[:n, :n]

    return StateMap(kept), StateMap(matrix - kept)
