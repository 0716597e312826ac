"""Rank-1 PBW and canonical bases of modified quantum sl2."""
from qgroups.pbw.bases import (
    PBWCombo,
    PBWIndex,
    PositivityReport,
    TransitionMatrix,
    cb_to_pbw,
    dual_pbw_scale,
    ladder_matrices,
    pairing_pbw,
    pairing_via_pbw,
    pbw_to_cb,
    positivity_report,
    wall_consistency,
)
from qgroups.pbw.fusion import (
    FusionResult,
    defining_limit_remainder,
    fuse,
    fuse_product,
    pairing_module_limit,
    verify_defining_limit,
)
from qgroups.pbw.qarith import (
    LaurentPoly,
    NotExpandable,
    QSeries,
    RationalFunction,
    Unbounded,
    UPoly,
    gaussian_binomial,
    pochhammer_q2,
    q_factorial,
    q_integer,
    series_expand,
    upoly_eval_u0,
)
from qgroups.pbw.repmod import (
    TensorVector,
    UHalfElement,
    WeightMismatch,
    WeightParam,
    act_divpow,
    act_gen,
    apply_udot,
    closed_action_EF,
    closed_action_FE,
    gram,
    limit_vector,
    unfuse,
    vacuum,
)
from qgroups.pbw.udot1 import (
    CBIndex,
    Orientation,
    OrientationInvalid,
    UdotElement,
    cb_canonicalize,
    mul_divpow,
    mul_gen,
    pairing,
    pairing_cb,
)

__all__ = [
    "CBIndex",
    "FusionResult",
    "LaurentPoly",
    "NotExpandable",
    "Orientation",
    "OrientationInvalid",
    "PBWCombo",
    "PBWIndex",
    "PositivityReport",
    "QSeries",
    "RationalFunction",
    "TensorVector",
    "TransitionMatrix",
    "UHalfElement",
    "UPoly",
    "Unbounded",
    "UdotElement",
    "WeightMismatch",
    "WeightParam",
    "act_divpow",
    "act_gen",
    "apply_udot",
    "cb_canonicalize",
    "cb_to_pbw",
    "closed_action_EF",
    "closed_action_FE",
    "defining_limit_remainder",
    "dual_pbw_scale",
    "fuse",
    "fuse_product",
    "gaussian_binomial",
    "gram",
    "ladder_matrices",
    "limit_vector",
    "mul_divpow",
    "mul_gen",
    "pairing",
    "pairing_cb",
    "pairing_module_limit",
    "pairing_pbw",
    "pairing_via_pbw",
    "pbw_to_cb",
    "pochhammer_q2",
    "positivity_report",
    "q_factorial",
    "q_integer",
    "series_expand",
    "unfuse",
    "upoly_eval_u0",
    "vacuum",
    "verify_defining_limit",
    "wall_consistency",
]
