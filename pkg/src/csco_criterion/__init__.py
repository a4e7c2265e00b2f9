"""Evaluate the CSCO entanglement criterion on finite-dimensional spin systems."""

from .criterion import (
    CriterionVerdict,
    OracleVerdict,
    build_commutator_matrix,
    evaluate_criterion,
)
from .csco import ObservableSet, simultaneous_eigenbasis
from .numerics import TolerancePolicy

__all__ = [
    "CriterionVerdict",
    "ObservableSet",
    "OracleVerdict",
    "TolerancePolicy",
    "build_commutator_matrix",
    "evaluate_criterion",
    "simultaneous_eigenbasis",
]
