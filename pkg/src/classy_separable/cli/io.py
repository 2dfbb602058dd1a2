"""JSON formats: complex numbers are [re, im] pairs, matrices nested rows of pairs.

StateFile:     {"dims": [D_A, D_B], "amplitudes": [[re, im], ...]}   (index i*D_B + j)
OperationFile: {"pairs": [{"a": [[[re, im], ...], ...], "b": [...]}, ...]}
EnsembleFile:  {"outcomes": [{"p": ..., "state": StateFile}, ...], "pruned_mass": ...}"""
import json
import logging
import sys
from typing import Any, List, Optional, Sequence

import numpy as np

from classy_separable.base.exceptions import InvalidInputError
from classy_separable.sepops.kraus import KrausPair, ProductKrausSet
from classy_separable.states.ensemble import Ensemble, Outcome
from classy_separable.states.state import PureState
from classy_separable.types import ComplexPairType, MatrixType, NPMatrixType, NPVectorType, VectorType
from classy_separable.util.constants import DTYPE, float_format

logger = logging.getLogger(__name__)


def complex_to_json(value: complex) -> ComplexPairType:
    return [float_format(value.real), float_format(value.imag)]


def vector_to_json(vector: VectorType) -> List[ComplexPairType]:
    return [complex_to_json(complex(value)) for value in np.asarray(vector, dtype=DTYPE)]


def json_to_vector(data: Any) -> NPVectorType:
    try:
        array = np.asarray(data, dtype=float)
        if array.ndim != 2 or array.shape[1] != 2:
            raise ValueError(f"expected a list of [re, im] pairs, got shape {array.shape}")
    except (TypeError, ValueError) as err:
        raise InvalidInputError("Malformed complex vector", str(err)) from err

    return array[:, 0] + 1j * array[:, 1]


def matrix_to_json(matrix: MatrixType) -> List[List[ComplexPairType]]:
    return [vector_to_json(row) for row in np.asarray(matrix, dtype=DTYPE)]


def json_to_matrix(data: Any) -> NPMatrixType:
    try:
        array = np.asarray(data, dtype=float)
        if array.ndim != 3 or array.shape[2] != 2:
            raise ValueError(f"expected nested rows of [re, im] pairs, got shape {array.shape}")
    except (TypeError, ValueError) as err:
        raise InvalidInputError("Malformed complex matrix", str(err)) from err

    return array[:, :, 0] + 1j * array[:, :, 1]


def _get(data: Any, key: str, what: str) -> Any:
    if not isinstance(data, dict) or key not in data:
        raise InvalidInputError(f"Malformed {what}: missing '{key}'")

    return data[key]


def state_to_json(state: PureState) -> dict:
    return {"dims": [state.dim_a, state.dim_b], "amplitudes": vector_to_json(state.amplitudes)}


def json_to_state(data: Any) -> PureState:
    dims = _get(data, "dims", "state")
    amplitudes = json_to_vector(_get(data, "amplitudes", "state"))

    if not isinstance(dims, list) or len(dims) != 2 or not all(isinstance(d, int) for d in dims):
        raise InvalidInputError(f"Malformed state: 'dims' must be two integers, got {dims}")

    return PureState(dims[0], dims[1], amplitudes)


def pairs_to_json(pairs: Sequence[KrausPair]) -> dict:
    return {"pairs": [{"a": matrix_to_json(pair.a), "b": matrix_to_json(pair.b)} for pair in pairs]}


def operation_to_json(operation: ProductKrausSet) -> dict:
    return pairs_to_json(operation.pairs)


def json_to_pairs(data: Any) -> List[KrausPair]:
    pairs = _get(data, "pairs", "operation")
    if not isinstance(pairs, list):
        raise InvalidInputError("Malformed operation: 'pairs' must be a list")

    return [
        KrausPair(json_to_matrix(_get(pair, "a", "Kraus pair")), json_to_matrix(_get(pair, "b", "Kraus pair")))
        for pair in pairs
    ]


def json_to_operation(data: Any) -> ProductKrausSet:
    """Loads a Kraus set and attaches closure metadata"""
    operation = ProductKrausSet(tuple(json_to_pairs(data))).checked()
    logger.info(f"Loaded {len(operation)} Kraus pair(s), closure residual {operation.residual:.3e}")

    return operation


def ensemble_to_json(ensemble: Ensemble) -> dict:
    return {
        "outcomes": [
            {"p": float_format(outcome.probability), "state": state_to_json(outcome.state)} for outcome in ensemble
        ],
        "pruned_mass": float_format(ensemble.pruned_mass),
    }


def json_to_ensemble(data: Any) -> Ensemble:
    outcomes = _get(data, "outcomes", "ensemble")
    if not isinstance(outcomes, list):
        raise InvalidInputError("Malformed ensemble: 'outcomes' must be a list")

    return Ensemble(
        [Outcome(float(_get(item, "p", "outcome")), json_to_state(_get(item, "state", "outcome"))) for item in outcomes],
        float(data.get("pruned_mass", 0)),
    )


def is_ensemble(data: Any) -> bool:
    return isinstance(data, dict) and "outcomes" in data


def load_json(path: str) -> Any:
    with open(path, encoding="utf-8") as file:
        return json.load(file)


def dump_json(data: Any) -> str:
    return json.dumps(data, indent=2)


def write_json(data: Any, path: Optional[str] = None) -> None:
    """Writes to 'path' or to stdout when there's none"""
    text = dump_json(data) + "\n"

    if path is None:
        sys.stdout.write(text)
        return

    with open(path, "w", encoding="utf-8") as file:
        file.write(text)
