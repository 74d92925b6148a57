"""Machine checks of the symbolic and linear-algebra steps of the classification."""

from .closed_form import closed_form, verify_case_outcomes, verify_closed_form, verify_hard_factorization
from .deform import CASES, DeformationCase, solve_deformation_case, window_stability
from .lemma1 import (
    DeltaFactors,
    ThreeTermRelation,
    TranscriptionMismatch,
    build_lemma1_relations,
    eliminate_cases,
    verify_delta_factorization,
)

__all__ = [
    "CASES",
    "DeformationCase",
    "DeltaFactors",
    "ThreeTermRelation",
    "TranscriptionMismatch",
    "build_lemma1_relations",
    "closed_form",
    "eliminate_cases",
    "solve_deformation_case",
    "verify_case_outcomes",
    "verify_closed_form",
    "verify_delta_factorization",
    "verify_hard_factorization",
    "window_stability",
]
