"""Separable operations as sets of product Kraus operators A_k (x) B_k"""
import dataclasses
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from classy_separable.base.exceptions import ConsistencyError, InvalidInputError, PreconditionError
from classy_separable.numerics.functions import as_matrix, dagger, kron, norm, operator_norm
from classy_separable.states.ensemble import Ensemble, Outcome
from classy_separable.states.state import PureState
from classy_separable.types import DimsType, MatrixType, NPMatrixType
from classy_separable.util.constants import TOL

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class KrausPair:
    """Factors of a single product Kraus operator A (x) B;
    A maps H_A to H_A' (D_A' x D_A), B maps H_B to H_B'"""

    a: NPMatrixType
    b: NPMatrixType

    def __post_init__(self):
        object.__setattr__(self, "a", as_matrix(self.a, "A"))
        object.__setattr__(self, "b", as_matrix(self.b, "B"))

    @property
    def dims_in(self) -> DimsType:
        return (self.a.shape[1], self.b.shape[1])

    @property
    def dims_out(self) -> DimsType:
        return (self.a.shape[0], self.b.shape[0])

    @property
    def operator(self) -> NPMatrixType:
        """A (x) B as a dense matrix"""
        return kron(self.a, self.b)

    def scaled(self, factor: float) -> "KrausPair":
        """Multiplies the A factor; the product operator scales by the same amount"""
        return KrausPair(self.a * factor, self.b)


def _check_dims(pairs: Sequence[KrausPair]) -> Tuple[DimsType, DimsType]:
    """Returns common (dims_in, dims_out); raises on inconsistent sets"""
    if len(pairs) == 0:
        raise InvalidInputError("A Kraus set needs at least one pair")

    dims_in = {pair.dims_in for pair in pairs}
    dims_out = {pair.dims_out for pair in pairs}

    if len(dims_in) != 1 or len(dims_out) != 1:
        raise InvalidInputError(
            "Kraus pairs have inconsistent dimensions", f"input: {sorted(dims_in)}, output: {sorted(dims_out)}"
        )

    return dims_in.pop(), dims_out.pop()


@dataclasses.dataclass(frozen=True)
class ProductKrausSet:
    """A separable operation {A_k (x) B_k}; closure metadata is
    attached by checked() and is None until then"""

    pairs: Tuple[KrausPair, ...]
    closed: Optional[bool] = None
    residual: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(self.pairs))
        _check_dims(self.pairs)

    @classmethod
    def from_matrices(cls, matrices: Sequence[Tuple[MatrixType, MatrixType]]) -> "ProductKrausSet":
        return cls(tuple(KrausPair(a, b) for a, b in matrices))

    @property
    def closure_checked(self) -> bool:
        return self.closed is not None

    @property
    def dims_in(self) -> DimsType:
        return self.pairs[0].dims_in

    @property
    def dims_out(self) -> DimsType:
        return self.pairs[0].dims_out

    def checked(self, tol: Optional[float] = None) -> "ProductKrausSet":
        """Returns the same set with closure metadata attached"""
        closed, residual = check_closure(self, tol)
        return dataclasses.replace(self, closed=closed, residual=residual)

    def kraus_operators(self) -> List[NPMatrixType]:
        return [pair.operator for pair in self.pairs]

    def __len__(self) -> int:
        return len(self.pairs)


def compute_r(pairs: Sequence[KrausPair]) -> Tuple[NPMatrixType, float]:
    """R = sum_k A_k^dagger A_k (x) B_k^dagger B_k and its largest eigenvalue"""
    _check_dims(pairs)

    r = sum(np.kron(dagger(pair.a) @ pair.a, dagger(pair.b) @ pair.b) for pair in pairs)
    r = (r + dagger(r)) / 2

    return r, operator_norm(r)


def check_closure(operation: ProductKrausSet, tol: Optional[float] = None) -> Tuple[bool, float]:
    """Closure condition sum_k A_k^dagger A_k (x) B_k^dagger B_k = I;
    returns (is_closed, operator norm of the difference)"""
    if tol is None:
        tol = TOL.closure

    r, _ = compute_r(operation.pairs)
    residual = norm(r - np.eye(r.shape[0]))

    return residual <= tol, residual


def apply_to_pure(
    operation: ProductKrausSet, state: PureState, prune_tol: Optional[float] = None, tol: Optional[float] = None
) -> Ensemble:
    """Outcome k is (A_k (x) B_k)|psi> = sqrt(p_k)|phi_k>; outcomes with p_k < prune_tol
    are dropped and their probability is reported as pruned mass"""
    if prune_tol is None:
        prune_tol = TOL.prune
    if tol is None:
        tol = TOL.probability

    if operation.dims_in != state.dims:
        raise InvalidInputError(f"Operation acts on {operation.dims_in}, state has dims {state.dims}")

    if not operation.closure_checked:
        operation = operation.checked()
    if not operation.closed:
        raise PreconditionError("Operation not separable-closed", f"closure residual: {operation.residual:.3e}")

    dim_a, dim_b = operation.dims_out
    outcomes: List[Outcome] = []
    pruned_mass = 0.0
    total = 0.0

    for pair in operation.pairs:
        # (A (x) B)|psi> corresponds to the map A c B^T
        vector = (pair.a @ state.matrix @ pair.b.T).reshape(-1)
        probability = float(np.vdot(vector, vector).real)
        total += probability

        if probability < prune_tol:
            pruned_mass += probability
            continue

        if not np.any(vector):
            raise ConsistencyError(f"Zero-norm outcome with probability {probability:.3e}")

        outcomes.append(Outcome(probability, PureState.normalized(dim_a, dim_b, vector)))

    if abs(total - 1) > tol:
        raise ConsistencyError("Outcome probabilities do not sum to 1", f"sum = {total:.17g}")

    if pruned_mass > 0:
        logger.debug(f"Pruned {len(operation) - len(outcomes)} outcome(s), mass {pruned_mass:.3e}")

    return Ensemble(outcomes, pruned_mass, tol)


def apply_to_density(operation: ProductKrausSet, rho: MatrixType) -> NPMatrixType:
    """sum_k (A_k (x) B_k) rho (A_k (x) B_k)^dagger"""
    rho = as_matrix(rho, "rho")
    operators = operation.kraus_operators()

    if rho.shape[0] != operators[0].shape[1] or rho.shape[1] != operators[0].shape[1]:
        raise InvalidInputError(f"rho of shape {rho.shape} does not match operation dims {operation.dims_in}")

    return sum(op @ rho @ dagger(op) for op in operators)


def local_unitary(u_a: MatrixType, u_b: MatrixType) -> ProductKrausSet:
    """A single-pair operation U_A (x) U_B"""
    return ProductKrausSet((KrausPair(u_a, u_b),)).checked()


def mix_operations(op_1: ProductKrausSet, op_2: ProductKrausSet, q: float) -> ProductKrausSet:
    """Does op_1 with probability q and op_2 otherwise;
    pairs with zero weight are left out"""
    if not 0 <= q <= 1:
        raise InvalidInputError(f"Mixing probability must be in [0, 1], got {q}")

    if op_1.dims_in != op_2.dims_in or op_1.dims_out != op_2.dims_out:
        raise InvalidInputError(f"Cannot mix operations on {op_1.dims_in} and {op_2.dims_in}")

    for operation in (op_1, op_2):
        if not operation.checked().closed:
            raise PreconditionError("Only closed operations can be mixed")

    pairs: List[KrausPair] = []
    if q > 0:
        pairs += [pair.scaled(np.sqrt(q)) for pair in op_1.pairs]
    if q < 1:
        pairs += [pair.scaled(np.sqrt(1 - q)) for pair in op_2.pairs]

    return ProductKrausSet(tuple(pairs)).checked()
