from typing import Optional


class ClassySeparableError(Exception):
    """Base class for all errors raised by classy_separable;
    carries a message and optional details"""

    def __init__(self, msg: str, details: Optional[str] = None, *args) -> None:
        self.msg = msg
        self.details = details

        info = self.msg
        if self.details:
            info += f"\n\t{self.details}"

        super().__init__(info, *args)


class InvalidInputError(ClassySeparableError):
    """Raised when input data is malformed: non-finite entries,
    wrong dimensions, unnormalized states, out-of-range parameters"""


class UnknownTargetError(InvalidInputError):
    """Raised when a verification campaign target does not exist"""


class PreconditionError(ClassySeparableError):
    """Raised when a valid object is used where a stronger condition
    is required, for instance a non-closed Kraus set applied to a state"""


class ResourceLimitError(ClassySeparableError):
    """Raised when the number of Kraus operators exceeds the allowed budget"""


class ConsistencyError(ClassySeparableError):
    """Raised when an internal invariant is broken; never expected
    with valid inputs and signals a bug"""
