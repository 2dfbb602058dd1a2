import dataclasses

from classy_separable.base.exceptions import InvalidInputError

# data type
DTYPE = "complex"  # dtype as taken by np.array()


@dataclasses.dataclass(frozen=True)
class Tolerances:
    """Every default tolerance in one place; operations take
    an optional override that falls back to these values"""

    # |m - m^dagger| relative to max(1, |m|)
    hermitian: float = 1e-10
    # smallest eigenvalue of a 'positive' operator, relative to max(1, |m|)
    psd: float = 1e-10
    # columns of unitaries, isometries and Schmidt bases
    orthonormal: float = 1e-10
    # factorization residuals in operator norm
    reconstruction: float = 1e-9
    # numerical rank: singular values below rank * s_max count as zero
    rank: float = 1e-10
    # normalization of states produced by the library
    norm: float = 1e-10
    # normalization of states given by the user (files, constructors)
    norm_input: float = 1e-8
    # probability sums
    probability: float = 1e-9
    # closure condition residual
    closure: float = 1e-9
    # majorization and theorem inequalities, relative to max(1, rhs)
    inequality: float = 1e-9
    # outcomes with smaller probabilities are dropped from ensembles
    prune: float = 1e-12
    # idempotency and annihilation checks of projectors
    projector: float = 1e-10
    # the same spectrum computed two different ways
    spectrum: float = 1e-10
    # E_n values below this are treated as exact zeros in ratios
    zero: float = 1e-14
    # probability resolution of the bisection route to pmax
    bisection: float = 1e-9
    # majorization tolerance inside the bisection oracle
    bisection_margin: float = 1e-12
    # allowed difference between closed-form and bisected pmax
    bisection_agreement: float = 1e-6

    def override(self, **values: float) -> "Tolerances":
        """Returns a copy with some values replaced"""
        names = {field.name for field in dataclasses.fields(self)}
        unknown = set(values.keys()) - names

        if unknown:
            raise InvalidInputError(f"Unknown tolerance(s): {sorted(unknown)}", f"Available: {sorted(names)}")

        return dataclasses.replace(self, **values)


TOL = Tolerances()

# the largest Kraus set generators will produce
MAX_KRAUS = 4096

# command-line exit codes
EXIT_OK = 0
EXIT_FAIL = 1
EXIT_ERROR = 2


# number formatting
def float_format(value: float) -> float:
    """Rounds to 17 significant digits; for doubles
    this is lossless and json writes the shortest repr"""
    return float(f"{value:.17g}")
