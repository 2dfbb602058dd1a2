import dataclasses
from typing import Iterator, List, Optional

import numpy as np

from classy_separable.base.exceptions import InvalidInputError
from classy_separable.states.state import PureState
from classy_separable.types import DimsType, NPVectorType
from classy_separable.util.constants import TOL


@dataclasses.dataclass(frozen=True)
class Outcome:
    """A single member of an ensemble"""

    probability: float
    state: PureState


class Ensemble:
    """Outcomes {(p_k, |phi_k>)} of an operation on a pure state;
    probability dropped with negligible outcomes is kept in pruned_mass
    so that sum(p_k) + pruned_mass = 1"""

    def __init__(self, outcomes: List[Outcome], pruned_mass: float = 0, tol: Optional[float] = None):
        if tol is None:
            tol = TOL.probability

        if len(outcomes) == 0:
            raise InvalidInputError("An ensemble needs at least one outcome")

        for outcome in outcomes:
            if not -tol <= outcome.probability <= 1 + tol:
                raise InvalidInputError(f"Probability out of range: {outcome.probability}")

        dims = {outcome.state.dims for outcome in outcomes}
        if len(dims) != 1:
            raise InvalidInputError(f"All ensemble states must share dimensions, got {sorted(dims)}")

        if pruned_mass < 0:
            raise InvalidInputError(f"Pruned mass must be nonnegative, got {pruned_mass}")

        total = sum(outcome.probability for outcome in outcomes) + pruned_mass
        if abs(total - 1) > tol:
            raise InvalidInputError("Ensemble probabilities do not sum to 1", f"sum = {total:.17g}")

        self.outcomes = list(outcomes)
        self.pruned_mass = float(pruned_mass)

    @classmethod
    def single(cls, state: PureState) -> "Ensemble":
        """A deterministic outcome"""
        return cls([Outcome(1.0, state)])

    @property
    def dims(self) -> DimsType:
        return self.outcomes[0].state.dims

    @property
    def probabilities(self) -> NPVectorType:
        return np.array([outcome.probability for outcome in self.outcomes])

    @property
    def states(self) -> List[PureState]:
        return [outcome.state for outcome in self.outcomes]

    def __len__(self) -> int:
        return len(self.outcomes)

    def __iter__(self) -> Iterator[Outcome]:
        return iter(self.outcomes)
