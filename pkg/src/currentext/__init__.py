"""Exact-arithmetic invariant forms, cohomology and central extensions
of current Lie algebras."""

from .catalog import comm_catalog, lie_catalog
from .cohomology import (
    Cocycle2,
    Cohomology,
    OneCochain,
    ce_differential,
    coboundary_witness,
    cohomology,
)
from .current import (
    CommAlgebra,
    CurrentAlgebra,
    GValuedOneForm,
    KaehlerModule,
    adjoin_unit_extend,
    current_algebra,
    kaehler_module,
    tensor_comm,
    twist_difference,
    universal_cocycle,
    universality_map,
)
from .invariants import (
    BilinearForm,
    UniversalFormSpace,
    factor_through,
    v_space_and_kappa,
)
from .lie import (
    DerivationSpace,
    Element,
    LieAlgebra,
    derivations,
    direct_sum,
    is_perfect,
    killing_form,
    perfect_witness,
    realify,
    validate_lie,
)
from .linalg import (
    QuotientSpace,
    SparseMatrix,
    Subspace,
    kernel_basis,
    quotient_space,
    solve_linear,
)
from .locality import (
    Corner,
    Cover,
    OneFormLocality,
    SupportStructure,
    extend_form_class,
    glue_primitives,
    is_diagonal,
    restrict_class,
    restrict_cochain,
    support_of,
)

__version__ = "0.1.0"

__all__ = [
    "BilinearForm",
    "Cocycle2",
    "Cohomology",
    "CommAlgebra",
    "Corner",
    "Cover",
    "CurrentAlgebra",
    "DerivationSpace",
    "Element",
    "GValuedOneForm",
    "KaehlerModule",
    "LieAlgebra",
    "OneCochain",
    "OneFormLocality",
    "QuotientSpace",
    "SparseMatrix",
    "Subspace",
    "SupportStructure",
    "UniversalFormSpace",
    "adjoin_unit_extend",
    "ce_differential",
    "coboundary_witness",
    "cohomology",
    "comm_catalog",
    "current_algebra",
    "derivations",
    "direct_sum",
    "extend_form_class",
    "factor_through",
    "glue_primitives",
    "is_diagonal",
    "is_perfect",
    "kaehler_module",
    "kernel_basis",
    "killing_form",
    "lie_catalog",
    "perfect_witness",
    "quotient_space",
    "realify",
    "restrict_class",
    "restrict_cochain",
    "solve_linear",
    "support_of",
    "tensor_comm",
    "twist_difference",
    "universal_cocycle",
    "universality_map",
    "v_space_and_kappa",
    "validate_lie",
]
