"""Majorization conditions on Schmidt weights: which ensembles a separable
operation (equivalently, an LOCC protocol) can produce from a pure state.
An ensemble {p_k, phi_k} is reachable from psi iff for every n
    sum_k p_k E_n(phi_k) <= E_n(psi)
where E_n is the sum of the n smallest Schmidt weights."""
import dataclasses
from typing import Callable, Dict, Optional, Tuple

import numpy as np
import scipy.optimize

from classy_separable.base.exceptions import InvalidInputError
from classy_separable.states.ensemble import Ensemble, Outcome
from classy_separable.states.schmidt import (
    e_n_vector,
    entanglement_entropy,
    padded_e_n,
    renyi_entropy,
    schmidt_rank,
)
from classy_separable.states.state import PureState
from classy_separable.types import MeasureType, NPVectorType
from classy_separable.util.constants import TOL


@dataclasses.dataclass(frozen=True)
class MajorizationReport:
    """Both sides of the majorization inequalities for n = 1..D"""

    lhs: NPVectorType
    rhs: NPVectorType
    tolerance: float

    @property
    def slack(self) -> NPVectorType:
        return self.rhs - self.lhs

    @property
    def min_slack(self) -> float:
        return float(np.min(self.slack))

    @property
    def worst_n(self) -> int:
        """1-based index of the tightest inequality"""
        return int(np.argmin(self.slack)) + 1

    @property
    def verdict(self) -> bool:
        return self.min_slack >= -self.tolerance

    @property
    def n_values(self) -> Dict[int, Tuple[float, float]]:
        return {n + 1: (float(self.lhs[n]), float(self.rhs[n])) for n in range(len(self.lhs))}

    def to_dict(self) -> dict:
        return {
            "n_values": [
                {"n": n, "lhs": lhs, "rhs": rhs, "slack": rhs - lhs} for n, (lhs, rhs) in self.n_values.items()
            ],
            "min_slack": self.min_slack,
            "worst_n": self.worst_n,
            "verdict": self.verdict,
            "tolerance": self.tolerance,
        }


def check_ensemble_majorization(
    source: PureState, ensemble: Ensemble, tol: Optional[float] = None
) -> MajorizationReport:
    """Can a separable operation produce 'ensemble' from 'source'?
    Reported probabilities are used as they are; pruned mass only lowers the left side."""
    if tol is None:
        tol = TOL.inequality

    if ensemble.dims != source.dims:
        raise InvalidInputError(f"Ensemble dims {ensemble.dims} differ from source dims {source.dims}")

    rhs = e_n_vector(source)
    lhs = np.zeros_like(rhs)

    for outcome in ensemble:
        lhs += outcome.probability * e_n_vector(outcome.state)

    return MajorizationReport(lhs, rhs, tol)


def _common_e_n(source: PureState, target: PureState) -> Tuple[NPVectorType, NPVectorType]:
    length = max(min(source.dims), min(target.dims))
    return padded_e_n(source, length), padded_e_n(target, length)


def can_transform_deterministic(
    source: PureState, target: PureState, tol: Optional[float] = None
) -> Tuple[bool, NPVectorType]:
    """psi -> phi with certainty iff E_n(phi) <= E_n(psi) for all n;
    returns the verdict and E_n(psi) - E_n(phi) per n"""
    if tol is None:
        tol = TOL.inequality

    e_source, e_target = _common_e_n(source, target)
    slack = e_source - e_target

    return bool(np.all(slack >= -tol)), slack


def pmax_sep(source: PureState, target: PureState, tol: Optional[float] = None) -> float:
    """Optimal probability of psi -> phi: min_n E_n(psi) / E_n(phi);
    n with E_n(phi) = 0 are skipped (0/0) or infinite (x/0)"""
    if tol is None:
        tol = TOL.inequality

    feasible, _ = can_transform_deterministic(source, target, tol)
    if feasible:
        return 1.0

    e_source, e_target = _common_e_n(source, target)
    ratios = [
        e_source[n] / e_target[n] if e_target[n] > TOL.zero else np.inf
        for n in range(len(e_target))
        if e_target[n] > TOL.zero or e_source[n] > TOL.zero
    ]

    if len(ratios) == 0:
        return 1.0

    return float(np.clip(min(ratios), 0, 1))


def optimal_ensemble(source: PureState, target: PureState, probability: Optional[float] = None) -> Ensemble:
    """{(p, target), (1-p, product state)}; p defaults to pmax_sep"""
    if probability is None:
        probability = pmax_sep(source, target)

    failure = PureState.product(target.dims)

    if probability >= 1:
        return Ensemble.single(target)
    if probability <= 0:
        return Ensemble.single(failure)

    return Ensemble([Outcome(probability, target), Outcome(1 - probability, failure)])


def pmax_by_bisection(
    source: PureState, target: PureState, precision: Optional[float] = None, tol: Optional[float] = None
) -> float:
    """Largest p for which optimal_ensemble(source, target, p) passes
    the majorization test; an independent route to pmax_sep"""
    if precision is None:
        precision = TOL.bisection
    if tol is None:
        tol = TOL.bisection_margin

    if source.dims != target.dims:
        raise InvalidInputError(f"Bisection needs equal dims, got {source.dims} and {target.dims}")

    def margin(probability: float) -> float:
        ensemble = optimal_ensemble(source, target, probability)
        return check_ensemble_majorization(source, ensemble, tol).min_slack + tol

    if margin(1) >= 0:
        return 1.0
    if margin(0) < 0:
        raise InvalidInputError("Source cannot even reach a product state")

    # margin is piecewise linear and non-increasing in p
    return float(scipy.optimize.brentq(margin, 0, 1, xtol=precision))


MEASURES: Dict[str, Callable[..., float]] = {
    "entropy": entanglement_entropy,
    "renyi": renyi_entropy,
    "schmidt_rank": lambda state: float(np.log2(max(schmidt_rank(state), 1))),
}


def check_average_monotone(
    source: PureState,
    ensemble: Ensemble,
    measure: MeasureType = "entropy",
    alpha: float = 0.5,
    tol: Optional[float] = None,
) -> Tuple[bool, float]:
    """E(psi) - sum_k p_k E(phi_k) >= 0; for the E_n family
    the smallest deficit over n is returned.
    Renyi entropies are concave, hence monotone on average, only for alpha <= 1."""
    if tol is None:
        tol = TOL.inequality

    if measure == "e_n":
        deficit = check_ensemble_majorization(source, ensemble, tol).min_slack
    elif measure in MEASURES:
        function = MEASURES[measure]
        args = (alpha,) if measure == "renyi" else ()

        average = sum(outcome.probability * function(outcome.state, *args) for outcome in ensemble)
        deficit = function(source, *args) - average
    else:
        raise InvalidInputError(f"Unknown measure: {measure}", f"Available: e_n, {', '.join(MEASURES)}")

    return deficit >= -tol, float(deficit)
