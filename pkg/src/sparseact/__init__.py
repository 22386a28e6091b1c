"""Sparsely activated one-hidden-layer ReLU networks on the sign hypercube:
constructions, exact Fourier/sensitivity analysis, PAC learners, and
complexity-bound evaluators, all at exhaustively checkable scale.
"""

from .bounds import (
    BoundValue,
    ClassParams,
    FormulaId,
    avg_sensitivity_bound,
    degree_for_error,
    halfspace_sensitivity_bound,
    noise_sensitivity_bound,
    rademacher_bound,
    rademacher_conjecture,
    sample_complexity_general,
)
from .constructions import (
    JuntaSpec,
    LiftedPoint,
    embed_lift,
    gamma_gated_net,
    index_net,
    junta_to_net,
    parity_lift,
    reference_index,
)
from .errors import CapacityError, InconsistentDataError, NoConsistentListError
from .fourier import (
    CubeFunction,
    Spectrum,
    avg_sensitivity_exact,
    inverse_wht,
    noise_sensitivity_exact,
    noise_sensitivity_mc,
    sensitivity_at,
    tabulate,
    tail_mass,
    wht,
)
from .hypercube import (
    CubePoint,
    Subset,
    character,
    pack_signs,
    sample_bucket_pair,
    sample_noisy,
    sample_uniform,
    sign_table,
    spawn_rngs,
)
from .learners import (
    GeneralizedDecisionList,
    LabeledSample,
    ListNode,
    LossReport,
    MonomialModel,
    evaluate_loss,
    fit_decision_list,
    fit_low_degree,
    full_cube_dataset,
    sample_uniform_dataset,
)
from .network import (
    ScaleParams,
    SensitivitySplit,
    SparseNet,
    SparsityReport,
    avg_sensitivity_split,
    rebucket,
    verify_sparsity,
)
from .rademacher_lab import (
    HypothesisPool,
    RademacherEstimate,
    compare_to_bound,
    empirical_rademacher,
    random_sparse_pool,
    uniform_sample_set,
)

__version__ = "0.1.0"

__all__ = [
    "BoundValue",
    "CapacityError",
    "ClassParams",
    "CubeFunction",
    "CubePoint",
    "FormulaId",
    "GeneralizedDecisionList",
    "HypothesisPool",
    "InconsistentDataError",
    "JuntaSpec",
    "LabeledSample",
    "LiftedPoint",
    "ListNode",
    "LossReport",
    "MonomialModel",
    "NoConsistentListError",
    "RademacherEstimate",
    "ScaleParams",
    "SensitivitySplit",
    "SparseNet",
    "SparsityReport",
    "Spectrum",
    "Subset",
    "avg_sensitivity_bound",
    "avg_sensitivity_exact",
    "avg_sensitivity_split",
    "character",
    "compare_to_bound",
    "degree_for_error",
    "embed_lift",
    "empirical_rademacher",
    "evaluate_loss",
    "fit_decision_list",
    "fit_low_degree",
    "full_cube_dataset",
    "gamma_gated_net",
    "halfspace_sensitivity_bound",
    "index_net",
    "inverse_wht",
    "junta_to_net",
    "noise_sensitivity_bound",
    "noise_sensitivity_exact",
    "noise_sensitivity_mc",
    "pack_signs",
    "parity_lift",
    "rademacher_bound",
    "rademacher_conjecture",
    "random_sparse_pool",
    "rebucket",
    "reference_index",
    "sample_bucket_pair",
    "sample_complexity_general",
    "sample_noisy",
    "sample_uniform",
    "sample_uniform_dataset",
    "sensitivity_at",
    "sign_table",
    "spawn_rngs",
    "tabulate",
    "tail_mass",
    "uniform_sample_set",
    "verify_sparsity",
    "wht",
]
