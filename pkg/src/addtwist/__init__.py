"""Additive and multiplicative twists of cuspidal L-functions.

Evaluates L(f x e(a/c), s) for cusp forms f through an incomplete-gamma
unfolding of the Mellin integral, plus the Dirichlet-character machinery
(conductors, Gauss sums, arithmetic weights) needed to verify the
quantum-modularity formulas, Birch-Stevens expansions, and the
twisted-first-moment reciprocity law at desk scale.
"""

from .backend import backend_name
from .characters import (
    DirichletCharacter,
    NuContext,
    character_json,
    conductor_and_primitive_part,
    enumerate_characters,
    gauss_sum,
    induce_character,
    nu_weight,
    primitive_count,
    trivial_character,
    unit_group,
)
from .cusps import (
    FRICKE,
    GAMMA0,
    CuspPoint,
    UnfoldingMatrix,
    build_unfolding_matrix,
    gamma0_element,
)
from .errors import PrecisionError, UnsupportedCuspError
from .forms import (
    CURVE_11A,
    CuspForm,
    EllipticCurveModel,
    delta_coefficients,
    evaluate_form,
    fricke_eigenvalue,
    newform_from_curve,
)
from .identities import (
    VerificationReport,
    infinity_experiment,
    quantum_discrepancy,
    verify_additive_from_moment,
    verify_birch_stevens,
    verify_fe,
    verify_fricke_qmf,
    verify_infinity,
    verify_qmf,
    verify_reciprocity,
)
from .incgamma import upper_incomplete_gamma, upper_incomplete_gamma_array
from .ltwist import (
    EvalResult,
    TwistEvaluator,
    additive_twist,
    additive_twist_direct,
    completed_additive_twist,
    direct_tail_bound,
    multiplicative_twist_central,
)

__version__ = "0.1.0"

__all__ = [
    "CURVE_11A",
    "CuspForm",
    "CuspPoint",
    "DirichletCharacter",
    "EllipticCurveModel",
    "EvalResult",
    "FRICKE",
    "GAMMA0",
    "NuContext",
    "PrecisionError",
    "TwistEvaluator",
    "UnfoldingMatrix",
    "UnsupportedCuspError",
    "VerificationReport",
    "additive_twist",
    "additive_twist_direct",
    "backend_name",
    "build_unfolding_matrix",
    "character_json",
    "completed_additive_twist",
    "conductor_and_primitive_part",
    "delta_coefficients",
    "direct_tail_bound",
    "enumerate_characters",
    "evaluate_form",
    "fricke_eigenvalue",
    "gamma0_element",
    "gauss_sum",
    "induce_character",
    "infinity_experiment",
    "multiplicative_twist_central",
    "newform_from_curve",
    "nu_weight",
    "primitive_count",
    "quantum_discrepancy",
    "trivial_character",
    "unit_group",
    "upper_incomplete_gamma",
    "upper_incomplete_gamma_array",
    "verify_additive_from_moment",
    "verify_birch_stevens",
    "verify_fe",
    "verify_fricke_qmf",
    "verify_infinity",
    "verify_qmf",
    "verify_reciprocity",
]
