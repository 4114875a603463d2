"""Evaluation codes over F_{q^2} and their minimum-distance engines."""

from __future__ import annotations

from .distance import (
    DistanceReport,
    bz_min_distance,
    distance_lower_bound_by_columns,
    exhaustive_min_distance,
    min_distance,
)
from .domain import EvaluationDomain
from .linear import LinearCode, evaluate, evaluation_vector, quasi_cyclic_check, random_code, weight

__all__ = [
    "DistanceReport",
    "EvaluationDomain",
    "LinearCode",
    "bz_min_distance",
    "distance_lower_bound_by_columns",
    "evaluate",
    "evaluation_vector",
    "exhaustive_min_distance",
    "min_distance",
    "quasi_cyclic_check",
    "random_code",
    "weight",
]
