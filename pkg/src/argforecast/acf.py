"""Debate frameworks: forecasting questions, votes, predictions.

A debate separates the forecasting arguments (the claims being predicted,
never sources of edges) from the regular arguments forecasters argue with.
Each forecaster's votes induce a personal strength graph: edges whose source
the forecaster disagrees with flip polarity, voted arguments get base score
0.5, silent ones 0.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping

from .errors import CyclicGraphError, NotFoundError
from .qbaf import Argument, Qbaf, StrengthMap, evaluate

DEFAULT_FORECAST_BASE = 0.5


class Vote(enum.Enum):
    AGREE = "+"
    DISAGREE = "-"
    UNSURE = "?"


class EdgeFate(enum.Enum):
    KEPT = "kept"
    FLIPPED = "flipped"
    DROPPED = "dropped"


@dataclass
class Acf:
    """A debate: arguments, relations, forecasters, votes and predictions.

    ``votes`` maps (forecaster, regular argument id) to a Vote; absence of an
    entry means the forecaster never voted, which is distinct from UNSURE.
    ``predictions`` maps (forecaster, forecasting argument id) to [0, 1].
    """

    forecasting_args: set[Argument] = field(default_factory=set)
    other_args: set[Argument] = field(default_factory=set)
    attacks: set[tuple[str, str]] = field(default_factory=set)
    supports: set[tuple[str, str]] = field(default_factory=set)
    forecasters: set[str] = field(default_factory=set)
    votes: dict[tuple[str, str], Vote] = field(default_factory=dict)
    predictions: dict[tuple[str, str], float] = field(default_factory=dict)

    def forecasting_ids(self) -> set[str]:
        return {a.id for a in self.forecasting_args}

    def other_ids(self) -> set[str]:
        return {a.id for a in self.other_args}

    def all_arguments(self) -> set[Argument]:
        return self.forecasting_args | self.other_args

    def vote_of(self, forecaster: str, arg_id: str) -> Vote | None:
        """The recorded vote, or None when undefined (including any target
        that is a forecasting argument, which cannot carry votes)."""
        return self.votes.get((forecaster, arg_id))

    def predictions_on(self, arg_id: str) -> dict[str, float]:
        return {u: p for (u, a), p in self.predictions.items() if a == arg_id}


@dataclass
class ForecasterQbaf:
    """A forecaster's personal strength graph plus per-edge provenance.

    ``provenance`` maps each original (source, target) edge to KEPT, FLIPPED
    or DROPPED; only kept and flipped edges appear in ``qbaf``.
    """

    qbaf: Qbaf
    forecaster: str
    provenance: dict[tuple[str, str], EdgeFate]


def _edge_fate(source_vote: Vote | None, target_vote: Vote | None) -> EdgeFate:
    """Stance rule for one edge given the forecaster's votes on its endpoints.

    Same vote on both endpoints (undefined counts as a vote value here), or
    neither endpoint disagreed: keep the stance.  Source disagreed while the
    target is not: flip it.  Otherwise (target disagreed, source not) no rule
    applies and the edge is dropped.
    """
    if source_vote == target_vote:
        return EdgeFate.KEPT
    if source_vote is not Vote.DISAGREE and target_vote is not Vote.DISAGREE:
        return EdgeFate.KEPT
    if source_vote is Vote.DISAGREE and target_vote is not Vote.DISAGREE:
        return EdgeFate.FLIPPED
    return EdgeFate.DROPPED


def derive_forecaster_qbaf(
    acf: Acf,
    forecaster: str,
    forecast_base: Mapping[str, float] | None = None,
) -> ForecasterQbaf:
    """Build the forecaster's personal graph from their votes.

    Base scores: forecasting arguments get ``forecast_base`` (default 0.5),
    voted regular arguments 0.5, unvoted or unsure ones 0 so that arguments
    without an opinion exert no influence.
    """
    if forecaster not in acf.forecasters:
        raise NotFoundError(f"unknown forecaster {forecaster!r}")
    forecast_base = forecast_base or {}
    forecasting_ids = acf.forecasting_ids()

    attacks: set[tuple[str, str]] = set()
    supports: set[tuple[str, str]] = set()
    provenance: dict[tuple[str, str], EdgeFate] = {}
    for polarity, edges in (("attack", acf.attacks), ("support", acf.supports)):
        for src, dst in edges:
            fate = _edge_fate(acf.vote_of(forecaster, src), acf.vote_of(forecaster, dst))
            provenance[(src, dst)] = fate
            if fate is EdgeFate.DROPPED:
                continue
            flipped = fate is EdgeFate.FLIPPED
            if (polarity == "attack") != flipped:
                attacks.add((src, dst))
            else:
                supports.add((src, dst))

    base_scores: dict[str, float] = {}
    for arg in acf.all_arguments():
        if arg.id in forecasting_ids:
            base_scores[arg.id] = forecast_base.get(arg.id, DEFAULT_FORECAST_BASE)
        elif acf.vote_of(forecaster, arg.id) in (Vote.AGREE, Vote.DISAGREE):
            base_scores[arg.id] = 0.5
        else:
            base_scores[arg.id] = 0.0

    qbaf = Qbaf(
        arguments=set(acf.all_arguments()),
        attacks=attacks,
        supports=supports,
        base_scores=base_scores,
    )
    return ForecasterQbaf(qbaf=qbaf, forecaster=forecaster, provenance=provenance)


def forecaster_strengths(
    acf: Acf,
    forecaster: str,
    forecast_base: Mapping[str, float] | None = None,
) -> StrengthMap:
    """Strengths of every argument in the forecaster's personal graph."""
    return evaluate(derive_forecaster_qbaf(acf, forecaster, forecast_base).qbaf)


def validate_acf(acf: Acf) -> list[str]:
    """Return invariant violations of the debate; empty means valid."""
    violations: list[str] = []
    f_ids = acf.forecasting_ids()
    d_ids = acf.other_ids()
    all_ids = f_ids | d_ids

    if not f_ids:
        violations.append("debate has no forecasting argument")
    for shared in sorted(f_ids & d_ids):
        violations.append(f"argument {shared!r} is both forecasting and regular")
    for src, dst in sorted(acf.attacks & acf.supports):
        violations.append(f"edge ({src!r}, {dst!r}) is both an attack and a support")

    for name, edges in (("attack", acf.attacks), ("support", acf.supports)):
        for src, dst in sorted(edges):
            if src not in d_ids:
                violations.append(
                    f"{name} edge ({src!r}, {dst!r}) is not sourced at a regular argument"
                )
            if dst not in all_ids:
                violations.append(f"{name} edge ({src!r}, {dst!r}) targets unknown argument {dst!r}")
            if src == dst:
                violations.append(f"self-{name} on {src!r}")

    for (user, arg_id), vote in sorted(acf.votes.items()):
        if user not in acf.forecasters:
            violations.append(f"vote by unknown forecaster {user!r}")
        if arg_id in f_ids:
            violations.append(f"vote on forecasting argument {arg_id!r}")
        elif arg_id not in d_ids:
            violations.append(f"vote on unknown argument {arg_id!r}")
        if not isinstance(vote, Vote):
            violations.append(f"vote value {vote!r} on {arg_id!r} is not a Vote")

    for (user, arg_id), p in sorted(acf.predictions.items()):
        if user not in acf.forecasters:
            violations.append(f"prediction by unknown forecaster {user!r}")
        if arg_id not in f_ids:
            violations.append(f"prediction on non-forecasting argument {arg_id!r}")
        if not (0.0 <= p <= 1.0):
            violations.append(f"prediction {p!r} on {arg_id!r} outside [0, 1]")

    if not violations:
        try:
            # the unvoted graph keeps every edge, so acyclicity of the debate
            # relation coincides with acyclicity of any derived graph
            evaluate(
                Qbaf(
                    arguments=set(acf.all_arguments()),
                    attacks=set(acf.attacks),
                    supports=set(acf.supports),
                    base_scores={i: 0.0 for i in all_ids},
                )
            )
        except CyclicGraphError as exc:
            violations.append(f"edge relation is cyclic: {' -> '.join(exc.cycle)}")
    return violations
