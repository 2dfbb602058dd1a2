from .base.exceptions import (
    ClassySeparableError,
    ConsistencyError,
    InvalidInputError,
    PreconditionError,
    ResourceLimitError,
    UnknownTargetError,
)
from .harness.campaign import CampaignReport, replay, run_campaign
from .harness.config import CampaignConfig, derive_seed
from .majorization.feasibility import (
    MajorizationReport,
    can_transform_deterministic,
    check_average_monotone,
    check_ensemble_majorization,
    optimal_ensemble,
    pmax_by_bisection,
    pmax_sep,
)
from .majorization.theorems import Lemma1Report, Theorem2Report, verify_lemma1, verify_theorem2
from .numerics.functions import (
    chi_all,
    chi_n,
    complement_projector,
    hermitian_eig,
    kron,
    operator_norm,
    partial_trace,
    svd,
)
from .sepops.generators import (
    gen_local_instrument,
    gen_random_product_collection,
    gen_separable_locc,
    haar_isometry,
    haar_unitary,
    random_schmidt_weights,
    random_state,
    random_state_with_weights,
)
from .sepops.kraus import (
    KrausPair,
    ProductKrausSet,
    apply_to_density,
    apply_to_pure,
    check_closure,
    compute_r,
    local_unitary,
    mix_operations,
)
from .states.duality import StateMap, map_to_state, schmidt_map, state_to_map, truncate_map
from .states.ensemble import Ensemble, Outcome
from .states.schmidt import (
    SchmidtDecomposition,
    e_n_vector,
    entanglement_entropy,
    renyi_entropy,
    schmidt_decompose,
    schmidt_rank,
)
from .states.state import PureState
from .util.constants import TOL, Tolerances

__all__ = [
    # errors
    "ClassySeparableError",
    "InvalidInputError",
    "UnknownTargetError",
    "PreconditionError",
    "ResourceLimitError",
    "ConsistencyError",
    # tolerances
    "TOL",
    "Tolerances",
    # linear algebra
    "svd",
    "hermitian_eig",
    "chi_n",
    "chi_all",
    "partial_trace",
    "kron",
    "operator_norm",
    "complement_projector",
    # states
    "PureState",
    "SchmidtDecomposition",
    "schmidt_decompose",
    "e_n_vector",
    "entanglement_entropy",
    "renyi_entropy",
    "schmidt_rank",
    "StateMap",
    "state_to_map",
    "map_to_state",
    "schmidt_map",
    "truncate_map",
    "Outcome",
    "Ensemble",
    # separable operations
    "KrausPair",
    "ProductKrausSet",
    "compute_r",
    "check_closure",
    "apply_to_pure",
    "apply_to_density",
    "local_unitary",
    "mix_operations",
    # random generators
    "haar_isometry",
    "haar_unitary",
    "random_state",
    "random_schmidt_weights",
    "random_state_with_weights",
    "gen_local_instrument",
    "gen_separable_locc",
    "gen_random_product_collection",
    # majorization
    "MajorizationReport",
    "check_ensemble_majorization",
    "can_transform_deterministic",
    "pmax_sep",
    "pmax_by_bisection",
    "optimal_ensemble",
    "check_average_monotone",
    "Theorem2Report",
    "verify_theorem2",
    "Lemma1Report",
    "verify_lemma1",
    # verification campaigns
    "CampaignConfig",
    "CampaignReport",
    "derive_seed",
    "run_campaign",
    "replay",
]
