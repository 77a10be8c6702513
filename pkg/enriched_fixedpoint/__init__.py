"""
Enriched Fixed Point - contracciones enriquecidas de clases A y A'
=================================================================

Certifica condiciones de contracción construidas con funciones de comparación,
calcula puntos fijos con la iteración promediada de Krasnoselskii
(λ = 1/(b+1)), reporta cotas de error y valida buena colocación y sombreado límite.

Componentes:
  - space.py: espacios normados de dimensión finita y grillas de C[a, b]
  - comparison.py: catálogo de f, axiomas y constante k
  - contraction.py: aplicaciones T, desigualdades enriquecidas, verify, specialize
  - solver.py: iteración promediada, reglas de parada, cotas
  - diagnostics.py: well-posedness y limit shadowing
  - examples_registry.py / config_loader.py / report.py / cli.py: front end
"""

__version__ = "1.0.0"
__description__ = "Enriched contraction fixed-point toolkit"

from .errors import (
    ConfigError, ContractViolationError, EnrichedError, InvalidSpecError,
    IterationOverflowError, UncertifiedFixedPointError,
)
from .space import (
    NormKind, SpaceDescriptor, SpaceKind, Vector, combine, constant, distance, euclidean,
    grid_profile, norm, sample_function_space, vector, zeros,
)
from .comparison import (
    AxiomCheck, AxiomReport, ComparisonFunction, Family, KCertificate, Variant, Verdict,
    analytic_k, check_axioms, check_axioms_A, check_axioms_Aprime, compare_k, evaluate,
    make_function, numeric_k, listed_range,
)
from .contraction import (
    CertificateReport, CertificateVerdict, ContractionSpec, ContractionTemplate, Interval,
    MappingSpec, affine, apply_mapping, covers_real_line, in_domain, lhs_enriched, piecewise,
    pointwise_multiply, reduced_lhs, reduced_rhs, rhs_enriched_A, rhs_enriched_Aprime,
    specialize, specialize_banach_theta, verify,
)
from .solver import (
    IterationTrace, SolveResult, StopRule, Termination, apriori_bound, averaged_operator,
    averaged_step, cauchy_bound, compare_solutions, iterations_needed, lambda_from_b,
    observed_ratio, solve,
)
from .diagnostics import (
    DiagnosticReport, DiagnosticVerdict, RecipeKind, SequenceRecipe, check_limit_shadowing,
    check_wellposedness, make_sequence,
)
from .examples_registry import ExampleEntry, ExampleRegistry, Expected

__all__ = [
    "ConfigError", "ContractViolationError", "EnrichedError", "InvalidSpecError",
    "IterationOverflowError", "UncertifiedFixedPointError",
    "NormKind", "SpaceDescriptor", "SpaceKind", "Vector", "combine", "constant", "distance",
    "euclidean", "grid_profile", "norm", "sample_function_space", "vector", "zeros",
    "AxiomCheck", "AxiomReport", "ComparisonFunction", "Family", "KCertificate", "Variant",
    "Verdict", "analytic_k", "check_axioms", "check_axioms_A", "check_axioms_Aprime",
    "compare_k", "evaluate", "make_function", "numeric_k", "listed_range",
    "CertificateReport", "CertificateVerdict", "ContractionSpec", "ContractionTemplate",
    "Interval", "MappingSpec", "affine", "apply_mapping", "covers_real_line", "in_domain",
    "lhs_enriched", "piecewise", "pointwise_multiply", "reduced_lhs", "reduced_rhs",
    "rhs_enriched_A", "rhs_enriched_Aprime", "specialize", "specialize_banach_theta", "verify",
    "IterationTrace", "SolveResult", "StopRule", "Termination", "apriori_bound",
    "averaged_operator", "averaged_step", "cauchy_bound", "compare_solutions",
    "iterations_needed", "lambda_from_b", "observed_ratio", "solve",
    "DiagnosticReport", "DiagnosticVerdict", "RecipeKind", "SequenceRecipe",
    "check_limit_shadowing", "check_wellposedness", "make_sequence",
    "ExampleEntry", "ExampleRegistry", "Expected",
]
