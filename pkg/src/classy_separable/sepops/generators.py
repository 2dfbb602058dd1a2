"""Random states and operations; everything is reproducible from a seed.

Haar-random isometries are obtained from a QR decomposition of a complex
Ginibre matrix with the phases of R's diagonal moved into Q, which makes
the decomposition unique and the distribution exactly Haar."""
import logging
from typing import List, Literal, Optional, Tuple

import numpy as np
import scipy.linalg

from classy_separable.base.exceptions import ConsistencyError, InvalidInputError, ResourceLimitError
from classy_separable.numerics.functions import is_unitary
from classy_separable.sepops.kraus import KrausPair, ProductKrausSet
from classy_separable.states.state import PureState
from classy_separable.types import DimsType, NPMatrixType, NPVectorType
from classy_separable.util.constants import DTYPE, MAX_KRAUS
from classy_separable.util.tools import get_rng

logger = logging.getLogger(__name__)


def ginibre(shape: Tuple[int, int], rng: np.random.Generator) -> NPMatrixType:
    """Matrix of independent standard complex normal entries (E|z|^2 = 1)"""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def haar_isometry(rows: int, cols: int, seed=None) -> NPMatrixType:
    """rows x cols matrix with orthonormal columns, Haar distributed"""
    if cols > rows:
        raise InvalidInputError(f"An isometry needs rows >= cols, got {rows}x{cols}")

    rng = get_rng(seed)
    q, r = scipy.linalg.qr(ginibre((rows, cols), rng), mode="economic")

    diagonal = np.diagonal(r)
    # zero diagonal entries have probability zero
    q *= diagonal / np.abs(diagonal)

    if not is_unitary(q):
        raise ConsistencyError(f"QR of a {rows}x{cols} Ginibre matrix lost orthonormality")

    return q


def haar_unitary(dim: int, seed=None) -> NPMatrixType:
    return haar_isometry(dim, dim, seed)


def random_state(dims: DimsType, seed=None) -> PureState:
    """Haar-random pure state on H_A (x) H_B"""
    rng = get_rng(seed)
    dim_a, dim_b = dims
    vector = rng.standard_normal(dim_a * dim_b) + 1j * rng.standard_normal(dim_a * dim_b)

    return PureState.normalized(dim_a, dim_b, vector)


def random_schmidt_weights(dim: int, seed=None, zeros: int = 0) -> NPVectorType:
    """Flat Dirichlet weights in ascending order; the 'zeros' smallest are set to 0"""
    if not 0 <= zeros < dim:
        raise InvalidInputError(f"Can zero between 0 and {dim - 1} weights, got {zeros}")

    rng = get_rng(seed)
    weights = np.sort(rng.dirichlet(np.ones(dim - zeros)))

    return np.concatenate((np.zeros(zeros), weights))


def random_state_with_weights(dims: DimsType, weights: NPVectorType, seed=None) -> PureState:
    """A state with given Schmidt weights in random local bases"""
    rng = get_rng(seed)
    dim_a, dim_b = dims
    count = len(weights)

    return PureState.from_schmidt(
        weights, dims, haar_isometry(dim_a, count, rng), haar_isometry(dim_b, count, rng)
    )


def gen_local_instrument(dim: int, n_outcomes: int, seed=None, projective: bool = False) -> List[NPMatrixType]:
    """Measurement operators {M_i} with sum_i M_i^dagger M_i = I;
    the blocks of a Haar-random (n_outcomes * dim) x dim isometry,
    or rank-1 projectors onto a random basis when projective"""
    if n_outcomes < 1:
        raise InvalidInputError(f"An instrument needs at least one outcome, got {n_outcomes}")

    rng = get_rng(seed)

    if projective:
        if n_outcomes != dim:
            raise InvalidInputError(f"A rank-1 projective instrument has {dim} outcomes, got {n_outcomes}")

        basis = haar_unitary(dim, rng)
        return [np.outer(basis[:, i], basis[:, i].conj()) for i in range(dim)]

    isometry = haar_isometry(n_outcomes * dim, dim, rng)

    return [isometry[i * dim : (i + 1) * dim, :] for i in range(n_outcomes)]


def gen_separable_locc(
    dims: DimsType,
    rounds: int,
    outcomes_per_round: int,
    seed=None,
    first: Literal["A", "B"] = "A",
    branch_dependent: bool = True,
) -> ProductKrausSet:
    """Alternating local instruments, Alice first by default;
    each round's instrument is drawn anew for every branch of earlier outcomes
    unless branch_dependent is False. The result has outcomes_per_round**rounds pairs."""
    if rounds < 1:
        raise InvalidInputError(f"At least one round is needed, got {rounds}")
    if outcomes_per_round < 1:
        raise InvalidInputError(f"At least one outcome per round is needed, got {outcomes_per_round}")
    if first not in ("A", "B"):
        raise InvalidInputError(f"First party must be 'A' or 'B', got {first}")

    count = outcomes_per_round**rounds
    if count > MAX_KRAUS:
        raise ResourceLimitError(f"{count} Kraus operators requested", f"Limit: {MAX_KRAUS}")

    rng = get_rng(seed)
    dim_a, dim_b = dims
    branches = [(np.eye(dim_a, dtype=DTYPE), np.eye(dim_b, dtype=DTYPE))]

    for index in range(rounds):
        alice = (index % 2 == 0) == (first == "A")
        dim = dim_a if alice else dim_b

        shared = None if branch_dependent else gen_local_instrument(dim, outcomes_per_round, rng)
        next_branches = []

        for a, b in branches:
            instrument = shared if shared is not None else gen_local_instrument(dim, outcomes_per_round, rng)

            for measurement in instrument:
                if alice:
                    next_branches.append((measurement @ a, b))
                else:
                    next_branches.append((a, measurement @ b))

        branches = next_branches

    logger.debug(f"Generated LOCC operation: {rounds} round(s), {len(branches)} Kraus pairs on {dims}")

    return ProductKrausSet(tuple(KrausPair(a, b) for a, b in branches)).checked()


def gen_random_product_collection(
    dims: DimsType, n: int, scale: float = 1, seed=None
) -> List[KrausPair]:
    """n independent pairs of square Ginibre matrices times 'scale';
    no closure whatsoever"""
    if n < 1:
        raise InvalidInputError(f"At least one pair is needed, got {n}")
    if n > MAX_KRAUS:
        raise ResourceLimitError(f"{n} Kraus operators requested", f"Limit: {MAX_KRAUS}")

    rng = get_rng(seed)
    dim_a, dim_b = dims

    return [
        KrausPair(scale * ginibre((dim_a, dim_a), rng), scale * ginibre((dim_b, dim_b), rng)) for _ in range(n)
    ]


def state_pair(dims: DimsType, seed=None, rank_deficient: Optional[bool] = None) -> Tuple[PureState, PureState]:
    """Two random states on the same dims; optionally with zeroed smallest weights
    (drawn at random when rank_deficient is None)"""
    rng = get_rng(seed)
    dim = min(dims)
    states = []

    for _ in range(2):
        deficient = rng.random() < 0.25 if rank_deficient is None else rank_deficient
        zeros = int(rng.integers(0, dim)) if deficient else 0
        states.append(random_state_with_weights(dims, random_schmidt_weights(dim, rng, zeros), rng))

    return states[0], states[1]
