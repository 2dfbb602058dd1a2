"""Misc utilities"""
import logging
from typing import Optional

import numpy as np

from classy_separable.base.exceptions import InvalidInputError
from classy_separable.types import RangeType

logger = logging.getLogger("classy_separable")


def report(text: str) -> None:
    """Progress messages from long-running tasks"""
    logger.info(text)


def get_rng(seed=None) -> np.random.Generator:
    """Accepts an integer seed, a Generator or None (system entropy)"""
    return np.random.default_rng(seed)


def parse_range(text: str, minimum: Optional[int] = None) -> RangeType:
    """Parses 'lo..hi' or a single integer 'n' into an inclusive (lo, hi) pair"""
    try:
        if ".." in text:
            lo_text, hi_text = text.split("..", 1)
            lo, hi = int(lo_text), int(hi_text)
        else:
            lo = hi = int(text)
    except ValueError as err:
        raise InvalidInputError(f"Invalid range: '{text}'", "Expecting 'lo..hi' or a single integer") from err

    if lo > hi:
        raise InvalidInputError(f"Empty range: {lo}..{hi}")

    if minimum is not None and lo < minimum:
        raise InvalidInputError(f"Range {lo}..{hi} must start at {minimum} or above")

    return lo, hi
