"""fiberscope: fibers of covers of the projective line over p-adic fields.

The package computes, for a cover C -> P^1 given by f(t, z) = 0 and a
rational base point t, the etale algebra of the fiber over Q_p — both by
a closed-form prediction from the special fiber (tame structure theory)
and by a Newton-polygon/Hensel factorization oracle — and provides the
finite-field cycle census and rational-point height machinery used to
study how fiber classes distribute.
"""

from .census import (
    CycleType,
    PermutationGroup,
    chebotarev_compare,
    cycle_census,
    double_cosets,
    etale_from_frobenius,
    parse_cycle_notation,
    transposition_transitivity_check,
)
from .covers import CoverSpec, bad_primes, check_good_reduction
from .errors import (
    BelowPrecisionError,
    ConfigError,
    FiberscopeError,
    PreconditionError,
)
from .fibers import (
    EtaleAlgebraDescriptor,
    EtaleFactor,
    agreement_check,
    branch_distance,
    factor_fiber_oracle,
    measure_census,
    predict_fiber,
    realizable_classes,
    special_fiber_data,
)
from .fields import FqElement, FqField, make_field
from .heights import (
    RationalPoint,
    class_min_heights,
    enumerate_points,
    equidistribution_test,
    injectivity_check,
    lemma_bound,
    surjectivity_threshold,
)
from .tame import (
    MetacyclicGroup,
    TameExtensionClass,
    all_classes,
    classify_binomial,
    count_classes,
    iso_test,
    metacyclic_conjugate,
    realizability,
)

__version__ = "0.1.0"

__all__ = [
    "BelowPrecisionError",
    "ConfigError",
    "CoverSpec",
    "CycleType",
    "EtaleAlgebraDescriptor",
    "EtaleFactor",
    "FiberscopeError",
    "FqElement",
    "FqField",
    "MetacyclicGroup",
    "PermutationGroup",
    "PreconditionError",
    "RationalPoint",
    "TameExtensionClass",
    "agreement_check",
    "all_classes",
    "bad_primes",
    "branch_distance",
    "chebotarev_compare",
    "check_good_reduction",
    "class_min_heights",
    "classify_binomial",
    "count_classes",
    "cycle_census",
    "double_cosets",
    "enumerate_points",
    "equidistribution_test",
    "etale_from_frobenius",
    "factor_fiber_oracle",
    "injectivity_check",
    "iso_test",
    "lemma_bound",
    "make_field",
    "measure_census",
    "metacyclic_conjugate",
    "parse_cycle_notation",
    "predict_fiber",
    "realizability",
    "realizable_classes",
    "special_fiber_data",
    "surjectivity_threshold",
    "transposition_transitivity_check",
]
