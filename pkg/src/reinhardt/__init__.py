"""Weighted-homogeneous defining functions and bounded Reinhardt domains
with non-compact automorphism group: construction, evaluation, and
numerical verification."""

from .errors import ContractViolation, EvaluationError
from .weights import (
    AdmissibleSet,
    ExponentTuple,
    WeightSystem,
    enumerate_admissible_set,
    in_admissible_set,
    validate_weights,
    weight_of,
)
from .homog import (
    DefiningFunction,
    InvariantProfile,
    Monomial,
    SegmentIntegral,
    bp_polynomial_eval,
    construct_from_measure,
    eval_defining,
    eval_from_s1_profile,
    example5_closed_form,
    example6,
    extend_from_germ,
)
from .domain import (
    GeneralDomain,
    ReinhardtDomain,
    boundary_sample,
    check_bounded,
    contains_point,
    fiber_representation_check,
    slice_export,
)
from .autgrp import (
    MoebiusParams,
    RotationParams,
    check_invariance,
    frac_pow,
    inverse_check,
    moebius_map,
    orbit,
    rotation_map,
)
from .analysis import (
    Locus,
    ProbeConfig,
    check_complex_homogeneity,
    check_homogeneity,
    check_n2_rigidity,
    check_nonnegativity,
    check_normalization,
    smoothness_probe,
)
from .presets import get_preset

__version__ = "0.1.0"
