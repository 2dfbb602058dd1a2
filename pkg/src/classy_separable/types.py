from typing import Any, List, Literal, Sequence, Tuple, Union

from nptyping import NDArray, Shape

# dense complex matrices: operators, Kraus factors, coefficient maps
NPMatrixType = NDArray[Shape["*, *"], Any]
MatrixType = Union[NPMatrixType, Sequence[Sequence[complex]]]
# amplitude vectors, singular values, eigenvalues, E_n vectors
NPVectorType = NDArray[Shape["*"], Any]
VectorType = Union[NPVectorType, Sequence[complex], Sequence[float]]

# local dimensions (D_A, D_B)
DimsType = Tuple[int, int]
# inclusive integer range (lo, hi)
RangeType = Tuple[int, int]

# which subsystem a partial trace removes
SideType = Literal["A", "B"]

# verification campaigns
TargetType = Literal["thm1", "thm2", "lemma1", "pmax-consistency", "monotone", "eq8", "lu-invariance"]

# measures for average monotonicity checks
MeasureType = Literal["e_n", "entropy", "renyi", "schmidt_rank"]

# serialized complex numbers: [re, im]
ComplexPairType = List[float]
