from .errors import (
    BudgetExceededError,
    DisagreementError,
    DomainError,
    MorphicError,
    ParseError,
    ShapeError,
)
from .exact_linalg import IntMatrix, SnfResult, integer_kernel, mat_mul, snf
from .abgroup import (
    FgAbGroup,
    Infinite,
    PrimaryDecomposition,
    canonicalize,
    direct_sum,
    enumerate_groups,
    exponent,
    from_relations,
    iso_eq,
    order,
    primary_decomposition,
)
from .morphic_core import (
    MorphicVerdict,
    MulMap,
    ann_mul,
    coker_mul,
    image_mul,
    is_a_morphic,
    is_morphic_fg,
    is_mul_regular,
    is_weakly_morphic,
    weakly_morphic_summand_scan,
)
from .endo_oracle import (
    Endo,
    FinitePresentation,
    brute_is_morphic,
    brute_is_weakly_morphic,
    enumerate_endos,
    hom_count,
    lemma_x_witness,
    regular_witness_search,
)
from .ring_mod import (
    IntegerRing,
    ModularRing,
    ProductRing,
    RingModule,
    is_weakly_morphic_over,
    product_module_check,
)
from .orchestrator import MorphicOrchestrator, PredicateReport, SuiteResult

__all__ = [
    "BudgetExceededError",
    "DisagreementError",
    "DomainError",
    "MorphicError",
    "ParseError",
    "ShapeError",
    "IntMatrix",
    "SnfResult",
    "integer_kernel",
    "mat_mul",
    "snf",
    "FgAbGroup",
    "Infinite",
    "PrimaryDecomposition",
    "canonicalize",
    "direct_sum",
    "enumerate_groups",
    "exponent",
    "from_relations",
    "iso_eq",
    "order",
    "primary_decomposition",
    "MorphicVerdict",
    "MulMap",
    "ann_mul",
    "coker_mul",
    "image_mul",
    "is_a_morphic",
    "is_morphic_fg",
    "is_mul_regular",
    "is_weakly_morphic",
    "weakly_morphic_summand_scan",
    "Endo",
    "FinitePresentation",
    "brute_is_morphic",
    "brute_is_weakly_morphic",
    "enumerate_endos",
    "hom_count",
    "lemma_x_witness",
    "regular_witness_search",
    "IntegerRing",
    "ModularRing",
    "ProductRing",
    "RingModule",
    "is_weakly_morphic_over",
    "product_module_check",
    "MorphicOrchestrator",
    "PredicateReport",
    "SuiteResult",
]
