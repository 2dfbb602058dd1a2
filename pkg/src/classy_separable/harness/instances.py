"""Random instances for every verification target: how they are drawn from
a seed, how they are (de)serialized for replay and how they are judged.
Every check is exact in theory; a failed instance is a defect, not noise."""
import abc
import dataclasses
from typing import Any, ClassVar, Dict, Type

import numpy as np

from classy_separable.base.exceptions import InvalidInputError, ResourceLimitError, UnknownTargetError
from classy_separable.cli import io
from classy_separable.harness.config import CampaignConfig
from classy_separable.majorization.feasibility import (
    can_transform_deterministic,
    check_average_monotone,
    check_ensemble_majorization,
    pmax_by_bisection,
    pmax_sep,
)
from classy_separable.majorization.theorems import verify_lemma1, verify_theorem2
from classy_separable.numerics.functions import chi_all, partial_trace
from classy_separable.sepops.generators import (
    gen_random_product_collection,
    gen_separable_locc,
    ginibre,
    haar_unitary,
    random_schmidt_weights,
    random_state,
    random_state_with_weights,
    state_pair,
)
from classy_separable.sepops.kraus import apply_to_pure, local_unitary, mix_operations
from classy_separable.states.schmidt import e_n_vector, schmidt_decompose
from classy_separable.states.state import PureState
from classy_separable.types import DimsType, RangeType
from classy_separable.util.constants import Tolerances
from classy_separable.util.tools import get_rng


@dataclasses.dataclass
class InstanceResult:
    """Outcome of a single check; slack < 0 means the claim failed"""

    passed: bool
    slack: float
    worst_n: int
    details: Dict[str, Any]


def _draw(rng: np.random.Generator, bounds: RangeType) -> int:
    return int(rng.integers(bounds[0], bounds[1] + 1))


def _draw_dims(rng: np.random.Generator, config: CampaignConfig) -> DimsType:
    return (_draw(rng, config.dims_a), _draw(rng, config.dims_b))


def _draw_state(rng: np.random.Generator, dims: DimsType) -> PureState:
    """Haar-random, or with some Schmidt weights set to zero a quarter of the time"""
    dim = min(dims)

    if dim > 1 and rng.random() < 0.25:
        zeros = _draw(rng, (1, dim - 1))
        return random_state_with_weights(dims, random_schmidt_weights(dim, rng, zeros), rng)

    return random_state(dims, rng)


class Target(abc.ABC):
    """A claim that is checked on randomly drawn instances"""

    name: ClassVar[str]

    @abc.abstractmethod
    def generate(self, seed: int, config: CampaignConfig) -> Dict[str, Any]:
        """Draws an instance; the same seed and config give the same instance"""

    @abc.abstractmethod
    def evaluate(self, instance: Dict[str, Any], tol: Tolerances) -> InstanceResult:
        """Checks the claim on an instance"""

    @abc.abstractmethod
    def serialize(self, instance: Dict[str, Any]) -> dict:
        """JSON-ready instance data"""

    @abc.abstractmethod
    def deserialize(self, data: dict) -> Dict[str, Any]:
        """Inverse of serialize(); validates the data"""


class EnsembleTarget(Target):
    """Instances are a random LOCC operation (sometimes a mixture of two) and a state"""

    def generate(self, seed, config):
        rng = get_rng(seed)
        dims = _draw_dims(rng, config)
        rounds = _draw(rng, config.rounds)
        outcomes = _draw(rng, config.outcomes)

        count = outcomes**rounds
        if count > config.kraus[1]:
            raise ResourceLimitError(f"Instance needs {count} Kraus pairs", f"Budget: {config.kraus[1]}")

        first = "A" if rng.random() < 0.5 else "B"
        operation = gen_separable_locc(dims, rounds, outcomes, rng, first=first)

        if 2 * count <= config.kraus[1] and rng.random() < 0.25:
            other = gen_separable_locc(dims, rounds, outcomes, rng, first="B" if first == "A" else "A")
            operation = mix_operations(operation, other, float(rng.random()))

        return {"operation": operation, "state": _draw_state(rng, dims)}

    def serialize(self, instance):
        return {"state": io.state_to_json(instance["state"]), "operation": io.operation_to_json(instance["operation"])}

    def deserialize(self, data):
        return {"state": io.json_to_state(data["state"]), "operation": io.json_to_operation(data["operation"])}


class Theorem1Target(EnsembleTarget):
    """Ensembles produced by separable operations satisfy the majorization condition"""

    name = "thm1"

    def evaluate(self, instance, tol):
        state: PureState = instance["state"]
        ensemble = apply_to_pure(instance["operation"], state, tol.prune, tol.probability)
        report = check_ensemble_majorization(state, ensemble, tol.inequality)

        details = report.to_dict()
        details["outcomes"] = len(ensemble)
        details["pruned_mass"] = ensemble.pruned_mass

        return InstanceResult(report.verdict, report.min_slack, report.worst_n, details)


class MonotoneTarget(EnsembleTarget):
    """Pure-state monotones do not increase on average"""

    name = "monotone"
    MEASURES: ClassVar = (("entropy", 1.0), ("renyi", 0.5), ("schmidt_rank", 1.0))

    def evaluate(self, instance, tol):
        state: PureState = instance["state"]
        ensemble = apply_to_pure(instance["operation"], state, tol.prune, tol.probability)
        report = check_ensemble_majorization(state, ensemble, tol.inequality)

        deficits = {"e_n": report.min_slack}
        for measure, alpha in self.MEASURES:
            _, deficit = check_average_monotone(state, ensemble, measure, alpha, tol.inequality)
            deficits[measure] = deficit

        slack = min(deficits.values())
        details = {"deficits": deficits, "feasible": report.verdict, "majorization": report.to_dict()}

        return InstanceResult(report.verdict and slack >= -tol.inequality, slack, report.worst_n, details)


class Theorem2Target(Target):
    """The product-operator inequality, no closure"""

    name = "thm2"

    def generate(self, seed, config):
        rng = get_rng(seed)
        dims = _draw_dims(rng, config)

        low, high = config.kraus
        # geometric: small collections are the common case
        count = min(high, low - 1 + int(rng.geometric(0.35)))
        scale = float(np.exp(rng.uniform(np.log(0.25), np.log(2))))
        pairs = gen_random_product_collection(dims, count, scale, rng)

        return {"pairs": pairs, "state": _draw_state(rng, dims)}

    def evaluate(self, instance, tol):
        report = verify_theorem2(instance["pairs"], instance["state"], tol.inequality)
        passed = report.holds and report.chain_holds and report.map_form_agrees

        return InstanceResult(passed, report.min_slack, report.worst_n, report.to_dict())

    def serialize(self, instance):
        return {"state": io.state_to_json(instance["state"]), "operation": io.pairs_to_json(instance["pairs"])}

    def deserialize(self, data):
        return {"state": io.json_to_state(data["state"]), "pairs": io.json_to_pairs(data["operation"])}


class Lemma1Target(Target):
    """The single-operator bound and its projector; D is drawn from dims_a"""

    name = "lemma1"

    def generate(self, seed, config):
        rng = get_rng(seed)
        dim = _draw(rng, config.dims_a)

        zeros = _draw(rng, (1, dim - 1)) if dim > 1 and rng.random() < 0.25 else 0
        psi_diag = np.sqrt(random_schmidt_weights(dim, rng, zeros))

        return {
            "a": ginibre((dim, dim), rng),
            "b": ginibre((dim, dim), rng),
            "psi_diag": psi_diag,
            "n": _draw(rng, (1, dim)),
        }

    def evaluate(self, instance, tol):
        report = verify_lemma1(
            instance["a"], instance["b"], instance["psi_diag"], instance["n"], tol.inequality, tol.projector
        )

        return InstanceResult(report.holds, report.slack, report.n, report.to_dict())

    def serialize(self, instance):
        return {
            "a": io.matrix_to_json(instance["a"]),
            "b": io.matrix_to_json(instance["b"]),
            "psi_diag": [float(value) for value in instance["psi_diag"]],
            "n": int(instance["n"]),
        }

    def deserialize(self, data):
        return {
            "a": io.json_to_matrix(data["a"]),
            "b": io.json_to_matrix(data["b"]),
            "psi_diag": np.asarray(data["psi_diag"], dtype=float),
            "n": int(data["n"]),
        }


class StatePairTarget(Target):
    def generate(self, seed, config):
        rng = get_rng(seed)
        source, target = state_pair(_draw_dims(rng, config), rng)

        return {"source": source, "target": target}

    def serialize(self, instance):
        return {"source": io.state_to_json(instance["source"]), "target": io.state_to_json(instance["target"])}

    def deserialize(self, data):
        return {"source": io.json_to_state(data["source"]), "target": io.json_to_state(data["target"])}


class PmaxTarget(StatePairTarget):
    """Optimal conversion probability agrees with bisection on the majorization test,
    and equals 1 exactly when the deterministic conversion is possible"""

    name = "pmax-consistency"

    def evaluate(self, instance, tol):
        source, target = instance["source"], instance["target"]

        probability = pmax_sep(source, target, tol.inequality)
        bisected = pmax_by_bisection(source, target, tol.bisection, tol.bisection_margin)
        deterministic, per_n = can_transform_deterministic(source, target, tol.inequality)

        difference = abs(probability - bisected)
        consistent = (probability == 1.0) == deterministic
        slack = tol.bisection_agreement - difference

        details = {
            "pmax": probability,
            "bisection": bisected,
            "deterministic": deterministic,
            "per_n_slack": [float(value) for value in per_n],
        }

        return InstanceResult(slack >= 0 and consistent, slack, int(np.argmin(per_n)) + 1, details)


class SingleStateTarget(Target):
    def serialize(self, instance):
        return {"state": io.state_to_json(instance["state"])}

    def deserialize(self, data):
        return {"state": io.json_to_state(data["state"])}


class Eq8Target(SingleStateTarget):
    """E_n from Schmidt weights equals chi_n of the reduced density operator"""

    name = "eq8"

    def generate(self, seed, config):
        rng = get_rng(seed)
        return {"state": _draw_state(rng, _draw_dims(rng, config))}

    def evaluate(self, instance, tol):
        state: PureState = instance["state"]
        dim_a, dim_b = state.dims

        from_weights = e_n_vector(state)
        reduced = partial_trace(state.density(), state.dims, "A" if dim_b <= dim_a else "B")
        from_spectrum = chi_all(reduced)

        differences = np.abs(from_weights - from_spectrum)
        details = {"e_n": from_weights.tolist(), "chi_n": from_spectrum.tolist()}

        return InstanceResult(
            bool(np.all(differences <= tol.spectrum)),
            float(tol.spectrum - np.max(differences)),
            int(np.argmax(differences)) + 1,
            details,
        )


class LocalUnitaryTarget(SingleStateTarget):
    """Schmidt weights do not change under U_A (x) U_B"""

    name = "lu-invariance"

    def generate(self, seed, config):
        rng = get_rng(seed)
        dims = _draw_dims(rng, config)

        return {"state": _draw_state(rng, dims), "u_a": haar_unitary(dims[0], rng), "u_b": haar_unitary(dims[1], rng)}

    def evaluate(self, instance, tol):
        state: PureState = instance["state"]
        ensemble = apply_to_pure(local_unitary(instance["u_a"], instance["u_b"]), state, tol.prune, tol.probability)

        if len(ensemble) != 1:
            return InstanceResult(False, -1.0, 1, {"outcomes": len(ensemble)})

        before = schmidt_decompose(state).weights
        after = schmidt_decompose(ensemble.outcomes[0].state).weights
        differences = np.concatenate(
            (np.abs(before - after), np.abs(e_n_vector(state) - e_n_vector(ensemble.outcomes[0].state)))
        )

        details = {"weights_before": before.tolist(), "weights_after": after.tolist()}

        return InstanceResult(
            bool(np.all(differences <= tol.reconstruction)),
            float(tol.reconstruction - np.max(differences)),
            int(np.argmax(differences)) % len(before) + 1,
            details,
        )

    def serialize(self, instance):
        data = super().serialize(instance)
        data["u_a"] = io.matrix_to_json(instance["u_a"])
        data["u_b"] = io.matrix_to_json(instance["u_b"])

        return data

    def deserialize(self, data):
        instance = super().deserialize(data)
        instance["u_a"] = io.json_to_matrix(data["u_a"])
        instance["u_b"] = io.json_to_matrix(data["u_b"])

        return instance


TARGET_CLASSES: Dict[str, Type[Target]] = {
    cls.name: cls
    for cls in (
        Theorem1Target,
        Theorem2Target,
        Lemma1Target,
        PmaxTarget,
        MonotoneTarget,
        Eq8Target,
        LocalUnitaryTarget,
    )
}


def get_target(name: str) -> Target:
    if name not in TARGET_CLASSES:
        raise UnknownTargetError(f"Unknown target: {name}", f"Available: {', '.join(TARGET_CLASSES)}")

    return TARGET_CLASSES[name]()


def deserialize_instance(target: Target, data: Any) -> Dict[str, Any]:
    """Wraps missing keys and bad types into InvalidInputError"""
    try:
        return target.deserialize(data)
    except (KeyError, TypeError, ValueError) as err:
        raise InvalidInputError(f"Malformed {target.name} instance", repr(err)) from err


__all__ = ["TARGET_CLASSES", "InstanceResult", "Target", "deserialize_instance", "get_target"]
