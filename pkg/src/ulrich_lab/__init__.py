"""Exact tools for Ulrich bundles on isotropic flag varieties.

The package decides, in exact rational arithmetic, whether the irreducible
homogeneous bundle attached to a weight is Ulrich for the minimal ample
class on its flag variety, and runs bounded exhaustive searches over whole
families of weights.  Three independent routes to the answer are kept in
deliberate tension with each other:

* `is_ulrich` compares the associated datum against {1, ..., dim X},
* `datum_closed_form` rebuilds that datum from block formulas,
* `ulrich_via_bott` re-derives the verdict from cohomology vanishing.
"""

from .bott import CohomologyVerdict, TwistedWeight, bott_cohomology, ulrich_via_bott
from .datum import (
    AssociatedDatum,
    CaseClassification,
    ClosedFormCase,
    DatumComparison,
    DatumEntry,
    DatumMatrices,
    HighestWeight,
    UnsupportedCaseError,
    classify_case,
    datum_closed_form,
    datum_equivalent,
    datum_generic,
    epsilon_constant,
    minimal_ample_class,
    normalize_weight,
    phi_value,
)
from .rootsys import (
    FAMILIES,
    MIN_RANK,
    LieType,
    ParabolicSet,
    RootSystem,
    build_root_system,
    cartan_matrix,
    check_nodes,
    dimension,
    pairing,
    phi_J_plus,
    symmetrizer,
)
from .search import (
    BoundWitness,
    SearchBounds,
    SearchReport,
    TheoremReport,
    coefficient_bounds,
    search_weights,
    verify_theorem,
)
from .ulrich import (
    FailureWitness,
    FilterReport,
    FilterRule,
    FilterViolation,
    UlrichVerdict,
    bundle_rank,
    filter_rules,
    is_ulrich,
    necessary_filters,
)

__version__ = "0.1.0"

__all__ = [
    "AssociatedDatum",
    "BoundWitness",
    "CaseClassification",
    "ClosedFormCase",
    "CohomologyVerdict",
    "DatumComparison",
    "DatumEntry",
    "DatumMatrices",
    "FAMILIES",
    "FailureWitness",
    "FilterReport",
    "FilterRule",
    "FilterViolation",
    "HighestWeight",
    "LieType",
    "MIN_RANK",
    "ParabolicSet",
    "RootSystem",
    "SearchBounds",
    "SearchReport",
    "TheoremReport",
    "TwistedWeight",
    "UlrichVerdict",
    "UnsupportedCaseError",
    "bott_cohomology",
    "build_root_system",
    "bundle_rank",
    "cartan_matrix",
    "check_nodes",
    "classify_case",
    "coefficient_bounds",
    "datum_closed_form",
    "datum_equivalent",
    "datum_generic",
    "dimension",
    "epsilon_constant",
    "filter_rules",
    "is_ulrich",
    "minimal_ample_class",
    "necessary_filters",
    "normalize_weight",
    "pairing",
    "phi_J_plus",
    "phi_value",
    "search_weights",
    "symmetrizer",
    "ulrich_via_bott",
    "verify_theorem",
    "__version__",
]
