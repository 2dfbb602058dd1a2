"""Command-line front end; exit codes: 0 success or feasible,
1 infeasible or violations found, 2 usage or data errors"""
import argparse
import logging
import sys
from typing import Dict, List, Optional

import numpy as np

from classy_separable.base.exceptions import ClassySeparableError, InvalidInputError
from classy_separable.cli import io
from classy_separable.harness.campaign import replay, run_campaign
from classy_separable.harness.config import TARGETS, CampaignConfig
from classy_separable.majorization.feasibility import check_ensemble_majorization, pmax_sep
from classy_separable.sepops.generators import (
    gen_random_product_collection,
    gen_separable_locc,
    random_state,
    random_state_with_weights,
)
from classy_separable.sepops.kraus import apply_to_pure
from classy_separable.states.ensemble import Ensemble
from classy_separable.states.schmidt import e_n_vector, schmidt_decompose
from classy_separable.util.constants import EXIT_ERROR, EXIT_FAIL, EXIT_OK, TOL, float_format
from classy_separable.util.tools import parse_range

logger = logging.getLogger("classy_separable.cli")

# decimals of the reported conversion probability
PMAX_DIGITS = 12


def _floats(values) -> List[float]:
    return [float_format(value) for value in values]


def _entropy_seed() -> int:
    return int(np.random.SeedSequence().entropy) % 2**64


def _parse_tolerances(items: Optional[List[str]]) -> Dict[str, float]:
    """'name=value' pairs"""
    tolerances: Dict[str, float] = {}

    for item in items or []:
        name, separator, value = item.partition("=")
        try:
            if not separator:
                raise ValueError("missing '='")
            tolerances[name.strip()] = float(value)
        except ValueError as err:
            raise InvalidInputError(f"Invalid tolerance: '{item}'", "Expecting name=value") from err

    return tolerances


def _parse_weights(text: str) -> np.ndarray:
    try:
        weights = np.array([float(value) for value in text.split(",")])
    except ValueError as err:
        raise InvalidInputError(f"Invalid Schmidt weights: '{text}'", "Expecting comma-separated numbers") from err

    if np.any(weights < 0) or not np.all(np.isfinite(weights)) or np.sum(weights) <= 0:
        raise InvalidInputError(f"Schmidt weights must be nonnegative with a positive sum, got {text}")

    total = np.sum(weights)
    if abs(total - 1) > TOL.probability:
        logger.warning(f"Schmidt weights sum to {total:.6g}, normalizing")
        weights = weights / total

    return np.sort(weights)


def cmd_schmidt(args: argparse.Namespace) -> int:
    state = io.json_to_state(io.load_json(args.state_file))
    decomposition = schmidt_decompose(state)

    io.write_json({"weights": _floats(decomposition.weights), "e_n": _floats(e_n_vector(state))}, args.out)

    return EXIT_OK


def cmd_apply(args: argparse.Namespace) -> int:
    operation = io.json_to_operation(io.load_json(args.op_file))
    state = io.json_to_state(io.load_json(args.state_file))

    ensemble = apply_to_pure(operation, state, args.prune_tol)
    io.write_json(io.ensemble_to_json(ensemble), args.out)

    return EXIT_OK


def cmd_feasible(args: argparse.Namespace) -> int:
    source = io.json_to_state(io.load_json(args.state_file))
    data = io.load_json(args.target_file)

    if io.is_ensemble(data):
        if args.pmax:
            raise InvalidInputError("--pmax needs a target state, got an ensemble")
        ensemble = io.json_to_ensemble(data)
        target = None
    else:
        target = io.json_to_state(data)
        ensemble = Ensemble.single(target)

    majorization = check_ensemble_majorization(source, ensemble, args.tolerance)
    output = majorization.to_dict()

    if args.pmax and target is not None:
        # ratios of SVD-derived sums carry round-off past 12 digits
        output["pmax"] = round(pmax_sep(source, target, args.tolerance), PMAX_DIGITS)

    io.write_json(output, args.out)
    logger.info("Feasible" if majorization.verdict else f"Infeasible, worst n = {majorization.worst_n}")

    return EXIT_OK if majorization.verdict else EXIT_FAIL


def cmd_verify(args: argparse.Namespace) -> int:
    seed = args.seed
    if seed is None:
        if args.json_out is not None:
            raise InvalidInputError("--seed is required with --json-out")
        seed = _entropy_seed()
        logger.warning(f"No --seed given, drawn from system entropy: {seed}")

    dims_a = parse_range(args.dims, 1) if args.dims else None
    config = CampaignConfig(
        target=args.target,
        instances=args.instances,
        master_seed=seed,
        dims_a=dims_a,
        dims_b=parse_range(args.dims_b, 1) if args.dims_b else dims_a,
        kraus=parse_range(args.kraus, 1) if args.kraus else None,
        rounds=parse_range(args.rounds, 1),
        outcomes=parse_range(args.outcomes, 1),
        tolerances=_parse_tolerances(args.tolerance),
    )

    campaign = run_campaign(config, args.workers)
    io.write_json(campaign.to_dict(include_timing=args.timing), args.json_out)

    return EXIT_OK if campaign.passed else EXIT_FAIL


def cmd_gen(args: argparse.Namespace) -> int:
    seed = args.seed
    if seed is None:
        seed = _entropy_seed()
        logger.warning(f"No --seed given, drawn from system entropy: {seed}")

    dims = tuple(args.dims) if args.dims else None

    if args.kind == "state":
        if args.schmidt:
            weights = _parse_weights(args.schmidt)
            if dims is None:
                dims = (len(weights), len(weights))
            state = random_state_with_weights(dims, weights, seed)
        else:
            state = random_state(dims or (2, 2), seed)

        data = io.state_to_json(state)
    elif args.kind == "sepop":
        operation = gen_separable_locc(dims or (2, 2), args.rounds, args.outcomes, seed, first=args.first)
        logger.info(f"Generated {len(operation)} Kraus pair(s), closure residual {operation.residual:.3e}")
        data = io.operation_to_json(operation)
    else:
        data = io.pairs_to_json(gen_random_product_collection(dims or (2, 2), args.count, args.scale, seed))

    io.write_json(data, args.out)

    return EXIT_OK


def cmd_replay(args: argparse.Namespace) -> int:
    config = None
    instance = None

    if args.report is not None:
        report = io.load_json(args.report)
        config = CampaignConfig.from_dict(report["config"])
        for violation in report.get("violations", []):
            if violation["seed"] == args.seed:
                instance = violation["instance"]

    if args.instance is not None:
        instance = io.load_json(args.instance)

    record = replay(args.seed, args.target, config, instance, _parse_tolerances(args.tolerance) or None)
    io.write_json(record, args.out)

    return EXIT_OK if record["passed"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="classy-separable", description="Separable operations on bipartite pure states"
    )
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="debug output on stderr")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="warnings and errors only")

    commands = parser.add_subparsers(dest="command", required=True)

    schmidt = commands.add_parser("schmidt", help="Schmidt weights and E_n of a state")
    schmidt.add_argument("state_file")
    schmidt.add_argument("--out", default=None)
    schmidt.set_defaults(function=cmd_schmidt)

    apply = commands.add_parser("apply", help="apply a separable operation to a state")
    apply.add_argument("op_file")
    apply.add_argument("state_file")
    apply.add_argument("--prune-tol", type=float, default=TOL.prune)
    apply.add_argument("--out", default=None)
    apply.set_defaults(function=cmd_apply)

    feasible = commands.add_parser("feasible", help="can a separable operation produce an ensemble or a state?")
    feasible.add_argument("state_file")
    feasible.add_argument("target_file", help="an ensemble file or a target state file")
    feasible.add_argument("--pmax", action="store_true", help="optimal conversion probability to a target state")
    feasible.add_argument("--tolerance", type=float, default=TOL.inequality)
    feasible.add_argument("--out", default=None)
    feasible.set_defaults(function=cmd_feasible)

    verify = commands.add_parser("verify", help="randomized verification campaign")
    verify.add_argument("target", help=f"one of: {', '.join(TARGETS)}")
    verify.add_argument("--instances", type=int, default=100)
    verify.add_argument("--seed", type=int, default=None)
    verify.add_argument("--dims", default=None, help="LO..HI range of D_A (and of D_B unless --dims-b is given)")
    verify.add_argument("--dims-b", default=None)
    verify.add_argument("--kraus", default=None, help="LO..HI Kraus budget")
    verify.add_argument("--rounds", default="1..2")
    verify.add_argument("--outcomes", default="2..4")
    verify.add_argument("--tolerance", action="append", help="NAME=VALUE override, repeatable")
    verify.add_argument("--workers", type=int, default=1)
    verify.add_argument("--json-out", default=None)
    verify.add_argument("--timing", action="store_true", help="include wall-clock in the report")
    verify.set_defaults(function=cmd_verify)

    gen = commands.add_parser("gen", help="random states and operations")
    gen.add_argument("kind", choices=("state", "sepop", "collection"))
    gen.add_argument("--dims", type=int, nargs=2, default=None, metavar=("D_A", "D_B"))
    gen.add_argument("--schmidt", default=None, help="comma-separated Schmidt weights")
    gen.add_argument("--rounds", type=int, default=1)
    gen.add_argument("--outcomes", type=int, default=2)
    gen.add_argument("--first", choices=("A", "B"), default="A")
    gen.add_argument("--count", type=int, default=2, help="pairs in a product collection")
    gen.add_argument("--scale", type=float, default=1.0)
    gen.add_argument("--seed", type=int, default=None)
    gen.add_argument("--out", default=None)
    gen.set_defaults(function=cmd_gen)

    replay_parser = commands.add_parser("replay", help="re-evaluate a single campaign instance")
    replay_parser.add_argument("target")
    replay_parser.add_argument("--seed", type=int, required=True)
    replay_parser.add_argument("--report", default=None, help="campaign report to take config and instance from")
    replay_parser.add_argument("--instance", default=None, help="serialized instance file")
    replay_parser.add_argument("--tolerance", action="append", help="NAME=VALUE override, repeatable")
    replay_parser.add_argument("--out", default=None)
    replay_parser.set_defaults(function=cmd_replay)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)

    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format="%(levelname)s: %(message)s", stream=sys.stderr)
    logging.getLogger("classy_separable").setLevel(level)

    try:
        return args.function(args)
    except (ClassySeparableError, OSError, ValueError, KeyError) as err:
        logger.error(str(err))
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
