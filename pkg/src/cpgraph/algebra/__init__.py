from .element import (
    INFINITE,
    ZERO,
    AlgebraContext,
    Element,
    Monomial,
    dimension_if_finite,
    graded_component,
    homogeneous_probe,
    lemma3_identity_check,
    monomial_product,
    normal_basis,
)
from .parser import evaluate_text, normal_form, parse_expression
from .rewriting import normal_form_randomized

__all__ = [
    "AlgebraContext",
    "Element",
    "INFINITE",
    "Monomial",
    "ZERO",
    "dimension_if_finite",
    "evaluate_text",
    "graded_component",
    "homogeneous_probe",
    "lemma3_identity_check",
    "monomial_product",
    "normal_basis",
    "normal_form",
    "normal_form_randomized",
    "parse_expression",
]
