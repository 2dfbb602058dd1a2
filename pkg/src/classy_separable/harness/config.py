import dataclasses
import hashlib
from typing import ClassVar, Dict, Optional, Tuple, get_args

from classy_separable.base.exceptions import InvalidInputError, UnknownTargetError
from classy_separable.types import RangeType, TargetType
from classy_separable.util.constants import TOL, Tolerances

TARGETS: Tuple[str, ...] = get_args(TargetType)


def derive_seed(master_seed: int, index: int) -> int:
    """Per-instance seed that does not depend on the order instances are run in"""
    digest = hashlib.blake2b(digest_size=8)
    digest.update(str(master_seed).encode("utf-8"))
    digest.update(b"|")
    digest.update(str(index).encode("utf-8"))

    return int.from_bytes(digest.digest(), byteorder="big", signed=False)


@dataclasses.dataclass
class CampaignConfig:
    """What to verify and how instances are drawn; ranges are inclusive.
    Ranges left as None take per-target defaults."""

    DEFAULT_DIMS: ClassVar[Dict[str, RangeType]] = {
        "thm1": (2, 4),
        "thm2": (2, 4),
        "lemma1": (2, 5),
        "pmax-consistency": (2, 3),
        "monotone": (2, 4),
        "eq8": (2, 4),
        "lu-invariance": (2, 4),
    }
    DEFAULT_KRAUS: ClassVar[Dict[str, RangeType]] = {
        "thm1": (1, 16),
        "thm2": (1, 8),
        "monotone": (1, 16),
    }

    target: str
    instances: int = 100
    master_seed: int = 0
    dims_a: Optional[RangeType] = None
    dims_b: Optional[RangeType] = None
    kraus: Optional[RangeType] = None
    rounds: RangeType = (1, 2)
    outcomes: RangeType = (2, 4)
    tolerances: Dict[str, float] = dataclasses.field(default_factory=dict)

    def __post_init__(self):
        if self.target not in TARGETS:
            raise UnknownTargetError(f"Unknown target: {self.target}", f"Available: {', '.join(TARGETS)}")

        if self.instances < 1:
            raise InvalidInputError(f"At least one instance is needed, got {self.instances}")

        if self.dims_a is None:
            self.dims_a = self.DEFAULT_DIMS[self.target]
        if self.dims_b is None:
            self.dims_b = self.dims_a
        if self.kraus is None:
            self.kraus = self.DEFAULT_KRAUS.get(self.target, (1, 16))

        # json and argparse give lists
        self.dims_a = tuple(self.dims_a)
        self.dims_b = tuple(self.dims_b)
        self.kraus = tuple(self.kraus)
        self.rounds = tuple(self.rounds)
        self.outcomes = tuple(self.outcomes)

        for name, minimum in (("dims_a", 1), ("dims_b", 1), ("kraus", 1), ("rounds", 1), ("outcomes", 1)):
            lo, hi = getattr(self, name)
            if lo > hi or lo < minimum:
                raise InvalidInputError(f"Invalid range for {name}: {lo}..{hi}")

        # fail early on unknown names
        _ = self.tolerance_record

    @property
    def tolerance_record(self) -> Tolerances:
        return TOL.override(**self.tolerances)

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "instances": self.instances,
            "master_seed": self.master_seed,
            "dims_a": list(self.dims_a),
            "dims_b": list(self.dims_b),
            "kraus": list(self.kraus),
            "rounds": list(self.rounds),
            "outcomes": list(self.outcomes),
            "tolerances": dict(sorted(self.tolerances.items())),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CampaignConfig":
        try:
            return cls(**data)
        except TypeError as err:
            raise InvalidInputError("Invalid campaign configuration", str(err)) from err
