"""Coherence checks between a forecaster's reasoning strength and prediction.

A forecaster is coherent on a question when their derived strength and their
numeric prediction fall on the same side of their respective thresholds:
strength below the midpoint demands a prediction below the expected
likelihood, above demands above, and at the midpoint the prediction must sit
within epsilon of the expected likelihood.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping

from .acf import Acf, forecaster_strengths
from .errors import DomainError, NotFoundError


class Branch(enum.Enum):
    BELOW = "below"
    ABOVE = "above"
    AT_THRESHOLD = "at_threshold"
    NO_PREDICTION = "no_prediction"


@dataclass(frozen=True)
class ThresholdConfig:
    """Per-question thresholds; scalars apply uniformly to all questions.

    ``xi1`` is the strength midpoint, ``xi2`` the expected likelihood of the
    event (0.5 when no prior is available), ``epsilon`` the slack allowed on
    the prediction when the strength sits exactly at the midpoint, and
    ``sigma_eq_tol`` the numeric tolerance for "exactly at".
    """

    xi1: float | Mapping[str, float] = 0.5
    xi2: float | Mapping[str, float] = 0.5
    epsilon: float = 0.05
    sigma_eq_tol: float = 1e-9

    def __post_init__(self) -> None:
        for name, value in (("xi1", self.xi1), ("xi2", self.xi2)):
            values = value.values() if isinstance(value, Mapping) else [value]
            for v in values:
                if not (0.0 < v < 1.0):
                    raise DomainError(f"{name} values must lie strictly in (0, 1), got {v!r}")
        if self.epsilon < 0 or self.sigma_eq_tol < 0:
            raise DomainError("epsilon and sigma_eq_tol must be >= 0")

    def _lookup(self, value: float | Mapping[str, float], key: str) -> float:
        if isinstance(value, Mapping):
            if key not in value:
                raise NotFoundError(f"no threshold recorded for {key!r}")
            return value[key]
        return value

    def xi1_for(self, key: str) -> float:
        return self._lookup(self.xi1, key)

    def xi2_for(self, key: str) -> float:
        return self._lookup(self.xi2, key)


@dataclass(frozen=True)
class CoherenceVerdict:
    forecaster: str
    argument: str
    sigma: float
    prediction: float | None
    coherent: bool
    branch: Branch


@dataclass(frozen=True)
class ForecastSummary:
    """Raw vs coherence-filtered average prediction for one question."""

    argument: str
    raw_mean: float | None
    coherent_mean: float | None
    n_raw: int
    n_coherent: int


def pair_verdict(
    sigma: float,
    prediction: float,
    xi1: float,
    xi2: float,
    epsilon: float,
    sigma_eq_tol: float,
) -> tuple[Branch, bool]:
    """Classify one (strength, prediction) pair.

    The two strict branches use strict inequalities on the prediction, so a
    prediction exactly at the likelihood threshold is incoherent there.
    """
    if abs(sigma - xi1) <= sigma_eq_tol:
        return Branch.AT_THRESHOLD, xi2 - epsilon <= prediction <= xi2 + epsilon
    if sigma < xi1:
        return Branch.BELOW, prediction < xi2
    return Branch.ABOVE, prediction > xi2


def check_coherence(
    acf: Acf,
    forecaster: str,
    cfg: ThresholdConfig | None = None,
    forecast_base: Mapping[str, float] | None = None,
) -> list[CoherenceVerdict]:
    """One verdict per forecasting argument, in id order.

    Questions the forecaster made no prediction on get a NO_PREDICTION
    verdict with coherent=False, so they are never counted as coherent by
    downstream filters.
    """
    cfg = cfg or ThresholdConfig()
    strengths = forecaster_strengths(acf, forecaster, forecast_base)
    verdicts = []
    for f in sorted(acf.forecasting_ids()):
        sigma = strengths[f]
        prediction = acf.predictions.get((forecaster, f))
        if prediction is None:
            verdicts.append(
                CoherenceVerdict(forecaster, f, sigma, None, False, Branch.NO_PREDICTION)
            )
            continue
        branch, coherent = pair_verdict(
            sigma, prediction, cfg.xi1_for(f), cfg.xi2_for(f), cfg.epsilon, cfg.sigma_eq_tol
        )
        verdicts.append(CoherenceVerdict(forecaster, f, sigma, prediction, coherent, branch))
    return verdicts


def forecaster_is_coherent(verdicts: list[CoherenceVerdict]) -> bool:
    """True iff the forecaster predicted at least once and every predicted
    question is coherent.  All verdicts must belong to one forecaster."""
    if len({v.forecaster for v in verdicts}) > 1:
        raise DomainError("verdicts from multiple forecasters")
    predicted = [v for v in verdicts if v.branch is not Branch.NO_PREDICTION]
    return bool(predicted) and all(v.coherent for v in predicted)


def aggregate_forecast(
    acf: Acf,
    argument: str,
    cfg: ThresholdConfig | None = None,
    forecast_base: Mapping[str, float] | None = None,
) -> ForecastSummary:
    """Average all predictions on one question, raw and coherence-filtered.

    The filter is per question: a forecaster incoherent elsewhere still
    counts here if their verdict on this question is coherent.
    """
    if argument not in acf.forecasting_ids():
        raise NotFoundError(f"unknown forecasting argument {argument!r}")
    cfg = cfg or ThresholdConfig()
    raw: list[float] = []
    coherent: list[float] = []
    for user, prediction in sorted(acf.predictions_on(argument).items()):
        raw.append(prediction)
        verdicts = check_coherence(acf, user, cfg, forecast_base)
        verdict = next(v for v in verdicts if v.argument == argument)
        if verdict.coherent:
            coherent.append(prediction)
    return ForecastSummary(
        argument=argument,
        raw_mean=sum(raw) / len(raw) if raw else None,
        coherent_mean=sum(coherent) / len(coherent) if coherent else None,
        n_raw=len(raw),
        n_coherent=len(coherent),
    )
