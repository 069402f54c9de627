"""Tracial gauge norms on step functions, vectors, and matrices.

The package computes s-number profiles, evaluates symmetric gauge norms
(Ky Fan, weight, Lp, and suprema thereof), solves dual norms exactly by
linear programming, certifies majorization-based dominance, and decomposes
normalized norms on 2x2 matrices into their extreme points.
"""

from .dominance import (
    dominance_transfer,
    kyfan_dominates,
    majorization_pair,
    violating_weight,
)
from .duality import (
    UnsupportedSpecError,
    ball_vertices,
    dual_mat,
    dual_spec,
    dual_vec,
    dual_vec_full,
    gamma_extreme_points,
    holder_check,
    involution_check,
    primal_vertices,
    representation_check,
    simplex_max,
)
from .extreme2 import (
    AtomicMeasure,
    Profile,
    check_admissible,
    decompose,
    lp_density_check,
    not_convex_combination,
    profile_of,
    random_admissible_profile,
    reconstruct,
)
from .linalg import (
    Rng64,
    mu_step,
    operator_norm,
    pinch,
    polar_unitary,
    random_hermitian,
    random_matrix,
    random_partition,
    random_projection,
    random_unitary,
    s_numbers,
    tau,
    trace_norm,
)
from .norms import (
    CSup,
    KyFan,
    KyFanZero,
    Lp,
    NormSpec,
    Operator,
    SupOf,
    TBracket,
    Trace,
    Weight,
    check_norm_axioms,
    identity_norm,
    norm_mat,
    norm_step,
    norm_vec,
    spec_from_json,
    spec_to_json,
    weight_norm_as_kyfan_combo,
)
from .stepfn import (
    StepFn,
    WeightFn,
    equimeasurable,
    pairing,
    partial_integral,
    rearrange,
    refine,
)

__version__ = "0.1.0"

__all__ = [
    "AtomicMeasure",
    "CSup",
    "KyFan",
    "KyFanZero",
    "Lp",
    "NormSpec",
    "Operator",
    "Profile",
    "Rng64",
    "StepFn",
    "SupOf",
    "TBracket",
    "Trace",
    "UnsupportedSpecError",
    "Weight",
    "WeightFn",
    "ball_vertices",
    "check_admissible",
    "check_norm_axioms",
    "decompose",
    "dominance_transfer",
    "dual_mat",
    "dual_spec",
    "dual_vec",
    "dual_vec_full",
    "equimeasurable",
    "gamma_extreme_points",
    "holder_check",
    "identity_norm",
    "involution_check",
    "kyfan_dominates",
    "lp_density_check",
    "majorization_pair",
    "mu_step",
    "norm_mat",
    "norm_step",
    "norm_vec",
    "not_convex_combination",
    "operator_norm",
    "pairing",
    "partial_integral",
    "pinch",
    "polar_unitary",
    "primal_vertices",
    "profile_of",
    "random_admissible_profile",
    "random_hermitian",
    "random_matrix",
    "random_partition",
    "random_projection",
    "random_unitary",
    "rearrange",
    "refine",
    "representation_check",
    "s_numbers",
    "simplex_max",
    "spec_from_json",
    "spec_to_json",
    "tau",
    "trace_norm",
    "violating_weight",
    "weight_norm_as_kyfan_combo",
]
