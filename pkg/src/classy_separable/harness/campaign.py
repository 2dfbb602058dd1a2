import concurrent.futures
import dataclasses
import logging
import time
from typing import Any, Dict, List, Optional

import numpy as np

from classy_separable.base.exceptions import ClassySeparableError, InvalidInputError, ResourceLimitError
from classy_separable.harness.config import CampaignConfig, derive_seed
from classy_separable.harness.instances import deserialize_instance, get_target
from classy_separable.util.constants import float_format
from classy_separable.util.tools import report

logger = logging.getLogger(__name__)


@dataclasses.dataclass
class InstanceRecord:
    """What the reducer needs from a single instance"""

    index: int
    seed: int
    passed: bool
    slack: float
    worst_n: int
    # only filled in for violations
    instance: Optional[dict] = None
    error: Optional[str] = None

    def to_dict(self) -> dict:
        data = {
            "index": self.index,
            "seed": self.seed,
            "worst_n": self.worst_n,
            "slack": float_format(self.slack),
            "instance": self.instance,
        }

        if self.error is not None:
            data["error"] = self.error

        return data


def run_instance(config: CampaignConfig, index: int) -> InstanceRecord:
    """Generates and checks one instance; library errors other than
    the Kraus budget are recorded as violations"""
    target = get_target(config.target)
    seed = derive_seed(config.master_seed, index)
    instance = target.generate(seed, config)

    try:
        result = target.evaluate(instance, config.tolerance_record)
    except ResourceLimitError:
        raise
    except ClassySeparableError as err:
        logger.warning(f"Instance {index} (seed {seed}) raised {type(err).__name__}: {err.msg}")
        error = f"{type(err).__name__}: {err}"
        return InstanceRecord(index, seed, False, -np.inf, 0, target.serialize(instance), error)

    record = InstanceRecord(index, seed, result.passed, result.slack, result.worst_n)
    if not result.passed:
        logger.warning(f"Violation at instance {index} (seed {seed}): slack {result.slack:.3e} at n = {result.worst_n}")
        record.instance = target.serialize(instance)

    return record


def _run_instance(arguments) -> InstanceRecord:
    # top-level so that worker processes can unpickle it
    config, index = arguments
    return run_instance(config, index)


@dataclasses.dataclass
class CampaignReport:
    config: CampaignConfig
    records: List[InstanceRecord]
    wall_clock: float = 0

    @property
    def instances(self) -> int:
        return len(self.records)

    @property
    def violations(self) -> List[InstanceRecord]:
        return [record for record in self.records if not record.passed]

    @property
    def passed(self) -> bool:
        return len(self.violations) == 0

    @property
    def slack_summary(self) -> Dict[str, float]:
        """Quartiles of per-instance slack; errored instances are left out"""
        slacks = np.array([record.slack for record in self.records if np.isfinite(record.slack)])

        if len(slacks) == 0:
            return {}

        values = np.quantile(slacks, [0, 0.25, 0.5, 0.75, 1])

        return {
            name: float_format(value) for name, value in zip(("min", "q1", "median", "q3", "max"), values)
        }

    def to_dict(self, include_timing: bool = False) -> dict:
        data: Dict[str, Any] = {
            "target": self.config.target,
            "instances": self.instances,
            "master_seed": self.config.master_seed,
            "config": self.config.to_dict(),
            "violation_count": len(self.violations),
            "violations": [record.to_dict() for record in self.violations],
            "slack": self.slack_summary,
        }

        if include_timing:
            data["wall_clock"] = self.wall_clock

        return data


def run_campaign(config: CampaignConfig, workers: int = 1) -> CampaignReport:
    """Runs config.instances instances; the report does not depend on worker count"""
    if workers < 1:
        raise InvalidInputError(f"At least one worker is needed, got {workers}")

    report(f"Running {config.instances} '{config.target}' instance(s), master seed {config.master_seed}")
    start = time.perf_counter()

    arguments = [(config, index) for index in range(config.instances)]
    records: List[InstanceRecord] = []
    step = max(1, config.instances // 10)

    if workers == 1:
        records = _collect(map(_run_instance, arguments), step, config.instances)
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as executor:
            # map() yields in submission order
            records = _collect(executor.map(_run_instance, arguments), step, config.instances)

    campaign = CampaignReport(config, records, time.perf_counter() - start)
    report(
        f"Finished {campaign.instances} instance(s) in {campaign.wall_clock:.2f} s, "
        f"{len(campaign.violations)} violation(s)"
    )

    return campaign


def _collect(results, step: int, total: int) -> List[InstanceRecord]:
    records = []

    for record in results:
        records.append(record)
        if len(records) % step == 0:
            logger.debug(f"{len(records)}/{total} instances done")

    return records


def replay(
    seed: int,
    target: str,
    config: Optional[CampaignConfig] = None,
    instance: Optional[dict] = None,
    tolerance: Optional[Dict[str, float]] = None,
) -> dict:
    """Re-evaluates a single instance with verbose output: a serialized one
    when given, otherwise the one regenerated from 'seed' with 'config'
    (per-target defaults when there's none)"""
    checker = get_target(target)

    if config is None:
        config = CampaignConfig(target)
    elif config.target != target:
        raise InvalidInputError(f"Config is for target '{config.target}', replaying '{target}'")

    tolerances = config.tolerance_record
    if tolerance is not None:
        tolerances = tolerances.override(**tolerance)

    if instance is None:
        generated = checker.generate(seed, config)
    else:
        generated = deserialize_instance(checker, instance)

    result = checker.evaluate(generated, tolerances)

    return {
        "target": target,
        "seed": seed,
        "passed": result.passed,
        "slack": result.slack,
        "worst_n": result.worst_n,
        "details": result.details,
        "instance": checker.serialize(generated),
        "tolerances": dataclasses.asdict(tolerances),
    }
