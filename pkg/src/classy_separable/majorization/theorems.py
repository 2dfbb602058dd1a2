"""Direct numerical checks of the two inequalities behind the majorization result.

For any collection of product operators {A_k (x) B_k} (no closure needed)
and every n:
    sum_k chi_n(Tr_A[(A_k (x) B_k)|psi><psi|(A_k (x) B_k)^dagger]) <= |R| chi_n(Tr_A |psi><psi|)
with R = sum_k A_k^dagger A_k (x) B_k^dagger B_k. Each term is bounded by
<psi_n|A_k^dagger A_k (x) B_k^dagger B_k|psi_n>, |psi_n> keeping the n smallest
Schmidt components, which is where the per-operator bound below comes in:
    chi_n(A psi B B^dagger psi^dagger A^dagger) <= Tr(A psi_n B B^dagger psi_n^dagger A^dagger)
for diagonal ascending psi."""
import dataclasses
from typing import Optional, Sequence

import numpy as np

from classy_separable.base.exceptions import InvalidInputError
from classy_separable.numerics.functions import (
    as_matrix,
    chi_all,
    chi_n,
    complement_projector,
    dagger,
    norm,
    numerical_rank,
    partial_trace,
)
from classy_separable.sepops.kraus import KrausPair, compute_r
from classy_separable.states.duality import StateMap, truncate_map
from classy_separable.states.schmidt import e_n_vector, truncated_state
from classy_separable.states.state import PureState
from classy_separable.types import DimsType, NPMatrixType, NPVectorType, SideType, VectorType
from classy_separable.util.constants import TOL


def _relative_ok(lhs: float, rhs: float, tol: float) -> bool:
    return bool(lhs <= rhs + tol * max(1.0, abs(rhs)))


def _relative_slack(lhs: NPVectorType, rhs: NPVectorType) -> NPVectorType:
    return (rhs - lhs) / np.maximum(1.0, np.abs(rhs))


@dataclasses.dataclass(frozen=True)
class Theorem2Report:
    """Per-n values of sum_k chi_n(...) (lhs), <psi_n|R|psi_n> (chain)
    and |R| chi_n(...) (rhs); lhs <= chain <= rhs must hold"""

    lhs: NPVectorType
    chain: NPVectorType
    rhs: NPVectorType
    map_lhs: NPVectorType
    r_norm: float
    tolerance: float

    @property
    def slack(self) -> NPVectorType:
        """rhs - lhs relative to max(1, rhs)"""
        return _relative_slack(self.lhs, self.rhs)

    @property
    def min_slack(self) -> float:
        return float(np.min(self.slack))

    @property
    def worst_n(self) -> int:
        return int(np.argmin(self.slack)) + 1

    @property
    def chain_holds(self) -> bool:
        return all(
            _relative_ok(lhs, chain, self.tolerance) and _relative_ok(chain, rhs, self.tolerance)
            for lhs, chain, rhs in zip(self.lhs, self.chain, self.rhs)
        )

    @property
    def map_form_agrees(self) -> bool:
        """Partial-trace and map-form evaluations of the left side coincide"""
        scale = np.maximum(1.0, np.abs(self.lhs))
        return bool(np.all(np.abs(self.lhs - self.map_lhs) <= self.tolerance * scale))

    @property
    def holds(self) -> bool:
        return self.min_slack >= -self.tolerance

    def to_dict(self) -> dict:
        return {
            "n_values": [
                {
                    "n": n + 1,
                    "lhs": float(self.lhs[n]),
                    "chain": float(self.chain[n]),
                    "rhs": float(self.rhs[n]),
                    "slack": float(self.slack[n]),
                }
                for n in range(len(self.lhs))
            ],
            "r_norm": self.r_norm,
            "min_slack": self.min_slack,
            "worst_n": self.worst_n,
            "holds": self.holds,
            "chain_holds": self.chain_holds,
            "map_form_agrees": self.map_form_agrees,
            "tolerance": self.tolerance,
        }


def _smaller_side(dims: DimsType) -> SideType:
    """Which subsystem to trace out so the reduced operator lives on the smaller side"""
    dim_a, dim_b = dims
    return "A" if dim_b <= dim_a else "B"


def _reduced(vector: VectorType, dims: DimsType) -> NPMatrixType:
    rho = np.outer(vector, np.conj(vector))
    return partial_trace(rho, dims, _smaller_side(dims))


def verify_theorem2(
    pairs: Sequence[KrausPair], state: PureState, tol: Optional[float] = None
) -> Theorem2Report:
    """Evaluates both sides of the product-operator inequality for n = 1..D;
    chi_n is taken on the smaller side of the bipartition"""
    if tol is None:
        tol = TOL.inequality

    for pair in pairs:
        if pair.dims_in != state.dims or pair.dims_out != state.dims:
            raise InvalidInputError(f"Pairs must act on {state.dims}, got {pair.dims_in} -> {pair.dims_out}")

    r, r_norm = compute_r(pairs)
    dims = state.dims
    count = min(dims)
    source = e_n_vector(state)

    lhs = np.zeros(count)
    map_lhs = np.zeros(count)
    for pair in pairs:
        output = (pair.a @ state.matrix @ pair.b.T).reshape(-1)
        # chi_n of a reduced operator (not divided by p_k) for every n at once
        lhs += chi_all(_reduced(output, dims))
        map_lhs += _map_form_chi(pair, state)

    chain = np.array(
        [np.vdot(psi_n, r @ psi_n).real for psi_n in (truncated_state(state, n) for n in range(1, count + 1))]
    )

    return Theorem2Report(lhs, chain, r_norm * source, map_lhs, r_norm, tol)


def _map_form_chi(pair: KrausPair, state: PureState) -> NPVectorType:
    """chi_n of A c B^T conj(B) c^dagger A^dagger (H_A side) or its
    transpose counterpart on H_B, whichever is the smaller side"""
    transformed = pair.a @ state.matrix @ pair.b.T

    if _smaller_side(state.dims) == "A":
        operator = transformed.T @ transformed.conj()
    else:
        operator = transformed @ dagger(transformed)

    return chi_all(operator)


@dataclasses.dataclass(frozen=True)
class ProjectorChecks:
    """Properties of P_n, the projector onto the complement of range(A psi_tilde_n)"""

    idempotency_residual: float
    hermiticity_residual: float
    rank: int
    annihilation_residual: float
    # Tr(P_n A psi B B^dagger psi^dagger A^dagger P_n)
    projected_full: float
    # Tr(P_n A psi_n B B^dagger psi_n^dagger A^dagger P_n)
    chain: float

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


@dataclasses.dataclass(frozen=True)
class Lemma1Report:
    lhs: float
    rhs: float
    n: int
    checks: ProjectorChecks
    tolerance: float
    projector_tolerance: float
    annihilation_scale: float

    @property
    def slack(self) -> float:
        return (self.rhs - self.lhs) / max(1.0, abs(self.rhs))

    @property
    def projector_ok(self) -> bool:
        checks = self.checks
        return (
            checks.idempotency_residual <= self.projector_tolerance
            and checks.hermiticity_residual <= self.projector_tolerance
            and checks.rank >= self.n
            and checks.annihilation_residual <= self.projector_tolerance * max(1.0, self.annihilation_scale)
        )

    @property
    def chain_ok(self) -> bool:
        """lhs <= chain <= rhs and both projected traces agree"""
        chain = self.checks.chain
        scale = max(1.0, abs(self.rhs))

        return (
            _relative_ok(self.lhs, chain, self.tolerance)
            and _relative_ok(chain, self.rhs, self.tolerance)
            and abs(chain - self.checks.projected_full) <= self.tolerance * scale
        )

    @property
    def holds(self) -> bool:
        return _relative_ok(self.lhs, self.rhs, self.tolerance) and self.projector_ok and self.chain_ok

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "holds": self.holds,
            "projector_ok": self.projector_ok,
            "chain_ok": self.chain_ok,
            "projector_checks": self.checks.to_dict(),
            "tolerance": self.tolerance,
        }


def verify_lemma1(
    a: NPMatrixType,
    b: NPMatrixType,
    psi_diag: VectorType,
    n: int,
    tol: Optional[float] = None,
    projector_tol: Optional[float] = None,
) -> Lemma1Report:
    """chi_n(A psi B B^dagger psi^dagger A^dagger) <= Tr(A psi_n B B^dagger psi_n^dagger A^dagger)
    for diagonal ascending psi, along with the projector that proves it"""
    if tol is None:
        tol = TOL.inequality
    if projector_tol is None:
        projector_tol = TOL.projector

    diagonal = np.asarray(psi_diag, dtype=float)
    if diagonal.ndim != 1 or np.any(diagonal < 0) or np.any(np.diff(diagonal) < 0):
        raise InvalidInputError(f"psi_diag must be nonnegative and ascending, got {diagonal}")

    dim = len(diagonal)
    a = as_matrix(a, "A")
    b = as_matrix(b, "B")
    if a.shape != (dim, dim) or b.shape != (dim, dim):
        raise InvalidInputError(f"A and B must be {dim}x{dim}, got {a.shape} and {b.shape}")

    psi = np.diag(diagonal).astype(complex)
    psi_n, psi_tilde = (part.matrix for part in truncate_map(StateMap(psi), n))

    bb = b @ dagger(b)
    full = a @ psi @ bb @ dagger(psi) @ dagger(a)
    kept = a @ psi_n @ bb @ dagger(psi_n) @ dagger(a)

    lhs = chi_n(full, n)
    rhs = float(np.trace(kept).real)

    discarded = a @ psi_tilde
    projector = complement_projector(discarded)

    checks = ProjectorChecks(
        idempotency_residual=norm(projector @ projector - projector),
        hermiticity_residual=norm(projector - dagger(projector)),
        rank=numerical_rank(projector),
        annihilation_residual=norm(projector @ discarded),
        projected_full=float(np.trace(projector @ full @ projector).real),
        chain=float(np.trace(projector @ kept @ projector).real),
    )

    return Lemma1Report(lhs, rhs, n, checks, tol, projector_tol, norm(discarded))
