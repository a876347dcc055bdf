"""Tate cohomology of prime-order cyclic actions on finitely generated
abelian groups, with two verification scenarios: quadratic fields (class
groups, units, ramified-prime counts) and explicit 3-manifold examples.
"""

from .intlinalg import (
    CompositeNotZero,
    DimensionMismatch,
    FgAbGroup,
    IntMatrix,
    MatrixDoesNotDescend,
    NotUnimodular,
    SmithDecomposition,
    cokernel,
    det,
    free_abelian,
    from_invariants,
    induced_subquotient,
    inverse_unimodular,
    kernel,
    lattice_basis,
    lattice_member,
    snf,
)
from .cpmod import (
    CpModule,
    CpModuleError,
    InconsistentRank,
    ModuleNotFinite,
    ModuleNotTorsionFree,
    NotPrime,
    PrimeMismatch,
    TateCohomology,
    TauDoesNotDescend,
    TauNotInvertible,
    TauOrderNotDividingP,
    TypeMultiplicities,
    augmentation_module,
    classify_free,
    direct_sum,
    fixed_points,
    free_module,
    free_regular_module,
    herbrand_check,
    new_cp_module,
    norm_operator,
    sharp_dual,
    star_dual,
    tate,
    tor_module,
    trivial_free_module,
    trivial_module,
)
from .numfield import (
    CheckResult,
    CubicRecord,
    FundamentalUnit,
    MalformedRecord,
    NotReal,
    NotSquareFree,
    QuadraticField,
    QuadraticFieldReport,
    RamificationData,
    SplittingDensity,
    check_cor_lower_nf,
    check_lower_nf,
    check_upper_nf,
    class_group,
    class_number,
    classify_prime,
    cubic_rank_check,
    field_report,
    fundamental_unit,
    gauss_identity,
    kronecker,
    narrow_class_invariants,
    nine_fields_check,
    quadratic_field,
    ramification,
    read_cubic_csv,
    report_to_dict,
    splitting_density,
    unit_module,
)
from .mfld import (
    ManifoldExample,
    TheoremVerdict,
    check_cor_lower_mfld,
    check_lower1,
    check_reznikov,
    check_upper1,
    check_upperT,
    example_hempel,
    example_lens,
    nonsplit_extension,
    run_all_checks,
)

__version__ = "0.1.0"

__all__ = [
    "CheckResult",
    "CompositeNotZero",
    "CpModule",
    "CpModuleError",
    "CubicRecord",
    "DimensionMismatch",
    "FgAbGroup",
    "FundamentalUnit",
    "InconsistentRank",
    "IntMatrix",
    "MalformedRecord",
    "ManifoldExample",
    "MatrixDoesNotDescend",
    "ModuleNotFinite",
    "ModuleNotTorsionFree",
    "NotPrime",
    "NotReal",
    "NotSquareFree",
    "NotUnimodular",
    "PrimeMismatch",
    "QuadraticField",
    "QuadraticFieldReport",
    "RamificationData",
    "SmithDecomposition",
    "SplittingDensity",
    "TateCohomology",
    "TauDoesNotDescend",
    "TauNotInvertible",
    "TauOrderNotDividingP",
    "TheoremVerdict",
    "TypeMultiplicities",
    "augmentation_module",
    "check_cor_lower_mfld",
    "check_cor_lower_nf",
    "check_lower1",
    "check_lower_nf",
    "check_reznikov",
    "check_upper1",
    "check_upperT",
    "check_upper_nf",
    "class_group",
    "class_number",
    "classify_free",
    "classify_prime",
    "cokernel",
    "cubic_rank_check",
    "det",
    "direct_sum",
    "example_hempel",
    "example_lens",
    "field_report",
    "fixed_points",
    "free_abelian",
    "free_module",
    "free_regular_module",
    "from_invariants",
    "fundamental_unit",
    "gauss_identity",
    "herbrand_check",
    "induced_subquotient",
    "inverse_unimodular",
    "kernel",
    "kronecker",
    "lattice_basis",
    "lattice_member",
    "narrow_class_invariants",
    "new_cp_module",
    "nine_fields_check",
    "nonsplit_extension",
    "norm_operator",
    "quadratic_field",
    "ramification",
    "read_cubic_csv",
    "report_to_dict",
    "run_all_checks",
    "sharp_dual",
    "snf",
    "splitting_density",
    "star_dual",
    "tate",
    "tor_module",
    "trivial_free_module",
    "trivial_module",
    "unit_module",
]
