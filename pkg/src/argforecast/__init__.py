"""Argumentation-based judgmental forecasting with coherence filtering."""

from .acf import Acf, EdgeFate, ForecasterQbaf, Vote, derive_forecaster_qbaf, forecaster_strengths, validate_acf
from .coherence import (
    Branch,
    CoherenceVerdict,
    ForecastSummary,
    ThresholdConfig,
    aggregate_forecast,
    check_coherence,
    forecaster_is_coherent,
)
from .qbaf import Argument, Qbaf, StrengthMap, aggregate, combine, evaluate, validate

__all__ = [
    "Acf",
    "Argument",
    "Branch",
    "CoherenceVerdict",
    "EdgeFate",
    "ForecastSummary",
    "ForecasterQbaf",
    "Qbaf",
    "StrengthMap",
    "ThresholdConfig",
    "Vote",
    "aggregate",
    "aggregate_forecast",
    "check_coherence",
    "combine",
    "derive_forecaster_qbaf",
    "evaluate",
    "forecaster_is_coherent",
    "forecaster_strengths",
    "validate",
    "validate_acf",
]
