"""Rules and matrix oracles for symplectic-period parameter classification.

The package has two layers that check each other.  The symbolic layer
models parameters as multisets of segments St(k, rho) over a catalog of
cuspidal labels and answers distinction, symplectic-image, and
ellipticity questions by duality bookkeeping.  The matrix layer realizes
small parameters as explicit generator sets (finite groups tensored with
symmetric powers), computes invariant bilinear forms exactly, and settles
the same questions by linear algebra.  The CLI and the conjecture sweep
insist the two layers agree.
"""

from . import errors
from .errors import PeriodLabError
from .exactnum import QQi, qqi
from .param_core import (
    AParameter,
    ASummand,
    CuspidalLabel,
    Segment,
    SelfDualityType,
    WDParameter,
    arthur_to_l,
    dimension,
    dual_segment,
    is_tempered,
    labels_equal,
    multiplicities,
    segment_self_duality,
    segments_equivalent,
    sl2_duality_sign,
)
from .matrix_lab import (
    FLOAT_TOL,
    BilinearForm,
    GeneratorSet,
    Matrix,
    PermutationMap,
    RealizationRecipe,
    Sl2Action,
    Symmetry,
    antidiag_J,
    classify_form,
    conjugator_for_partition,
    find_nondegenerate_skew,
    invariant_form_sl2,
    invariant_forms,
    is_in_sp,
    kron_form,
    partition_J,
    realize,
    sl2_exp_e,
    sl2_exp_f,
    sl2_sym_power_action,
    sym_power,
    symplectic_J,
    w_plus,
)
from .group_models import (
    SL2_SURROGATE_BOUND,
    Catalog,
    CatalogEntry,
    FiniteGroup,
    IrrepModel,
    builtin_catalog,
    builtin_models,
    commutant_dimension,
    fs_indicator,
    invariant_isotropic_exists,
    isotypic_multiplicities,
    sl2_surrogate,
)
from .distinction import (
    DistinguishedMorphismRecord,
    OracleVerdicts,
    PoleProfile,
    RDSSpec,
    check_conjecture_instance,
    distinguished_morphism,
    factors_through_sp_symbolic,
    is_linear_distinguished,
    is_x_distinguished,
    is_x_elliptic_symbolic,
    oracle_verdicts,
    pole_profile,
    validate_rds,
)
from .notation import SourceSpan, load_catalog, parse_param, print_param
from .reporting import CheckResult, Report
from .cli import main, run_classify, run_conjecture_sweep, run_verify_matrices

__version__ = "0.1.0"

__all__ = [
    "AParameter",
    "ASummand",
    "BilinearForm",
    "Catalog",
    "CatalogEntry",
    "CheckResult",
    "CuspidalLabel",
    "DistinguishedMorphismRecord",
    "FLOAT_TOL",
    "FiniteGroup",
    "GeneratorSet",
    "IrrepModel",
    "Matrix",
    "OracleVerdicts",
    "PeriodLabError",
    "PermutationMap",
    "PoleProfile",
    "QQi",
    "RDSSpec",
    "RealizationRecipe",
    "Report",
    "SL2_SURROGATE_BOUND",
    "Segment",
    "SelfDualityType",
    "Sl2Action",
    "SourceSpan",
    "Symmetry",
    "WDParameter",
    "antidiag_J",
    "arthur_to_l",
    "builtin_catalog",
    "builtin_models",
    "check_conjecture_instance",
    "classify_form",
    "commutant_dimension",
    "conjugator_for_partition",
    "dimension",
    "distinguished_morphism",
    "dual_segment",
    "errors",
    "factors_through_sp_symbolic",
    "find_nondegenerate_skew",
    "fs_indicator",
    "invariant_form_sl2",
    "invariant_forms",
    "invariant_isotropic_exists",
    "is_in_sp",
    "is_linear_distinguished",
    "is_tempered",
    "is_x_distinguished",
    "is_x_elliptic_symbolic",
    "isotypic_multiplicities",
    "kron_form",
    "labels_equal",
    "load_catalog",
    "main",
    "multiplicities",
    "oracle_verdicts",
    "parse_param",
    "partition_J",
    "pole_profile",
    "print_param",
    "qqi",
    "realize",
    "run_classify",
    "run_conjecture_sweep",
    "run_verify_matrices",
    "segment_self_duality",
    "segments_equivalent",
    "sl2_duality_sign",
    "sl2_exp_e",
    "sl2_exp_f",
    "sl2_surrogate",
    "sl2_sym_power_action",
    "sym_power",
    "symplectic_J",
    "validate_rds",
    "w_plus",
]
