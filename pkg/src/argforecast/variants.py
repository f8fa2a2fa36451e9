"""Debate variant classification and generation along three complexity axes.

The axes are: vote complexity (a disagreed attacker of the question, or an
attacker/supporter pair carrying the same defined vote), breadth complexity
(exactly three regular arguments receive no edge from another regular
argument) and depth complexity (exactly one regular argument targets another
regular argument).  The simple shape is the three-argument debate with an
agreed attacker and a disagreed supporter.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping

from .acf import Acf, Vote
from .coherence import ThresholdConfig, check_coherence, forecaster_is_coherent
from .errors import GenerationError, UnsupportedShapeError
from .qbaf import Argument

PROFILE_TOKENS = ("s", "v", "b", "d", "vb", "vd", "db", "vdb")
BANDS = ("lt50", "eq50", "gt50")


@dataclass(frozen=True)
class ComplexityProfile:
    simple: bool = False
    vote_complex: bool = False
    breadth_complex: bool = False
    depth_complex: bool = False

    @property
    def token(self) -> str:
        if self.simple:
            return "s"
        letters = ""
        if self.vote_complex:
            letters += "v"
        if self.depth_complex:
            letters += "d"
        if self.breadth_complex:
            letters += "b"
        # canonical spellings: vb, vd, db, vdb
        return {"vdb": "vdb", "vd": "vd", "vb": "vb", "db": "db"}.get(letters, letters)

    @classmethod
    def from_token(cls, token: str) -> "ComplexityProfile":
        if token not in PROFILE_TOKENS:
            raise GenerationError(f"unknown profile token {token!r} (expected one of {PROFILE_TOKENS})")
        if token == "s":
            return cls(simple=True)
        return cls(
            vote_complex="v" in token,
            breadth_complex="b" in token,
            depth_complex="d" in token,
        )


@dataclass(frozen=True)
class VariantSpec:
    question_id: str
    profile: ComplexityProfile
    band: str  # lt50 | eq50 | gt50

    def __post_init__(self) -> None:
        if self.band not in BANDS:
            raise GenerationError(f"unknown prediction band {self.band!r}")


def classify(acf: Acf, forecaster: str) -> ComplexityProfile:
    """Classify a single-question debate against the three axes."""
    f_ids = acf.forecasting_ids()
    if len(f_ids) != 1:
        raise UnsupportedShapeError(
            f"classification requires exactly one forecasting argument, got {len(f_ids)}"
        )
    f = next(iter(f_ids))
    d_ids = acf.other_ids()

    attackers_of_f = {src for src, dst in acf.attacks if dst == f}
    supporters_of_f = {src for src, dst in acf.supports if dst == f}

    def defined_vote(arg: str) -> Vote | None:
        # UNSURE and undefined are the same no-opinion class for complexity
        v = acf.vote_of(forecaster, arg)
        return v if v in (Vote.AGREE, Vote.DISAGREE) else None

    disagreed_attacker = any(defined_vote(a) is Vote.DISAGREE for a in attackers_of_f)
    conflicting = any(
        defined_vote(c) is not None and defined_vote(c) == defined_vote(d)
        for c in attackers_of_f
        for d in supporters_of_f
    )
    vote_complex = disagreed_attacker or conflicting

    edges = acf.attacks | acf.supports
    targeted_from_d = {dst for src, dst in edges if src in d_ids}
    breadth_complex = len([a for a in d_ids if a not in targeted_from_d]) == 3
    depth_complex = len({src for src, dst in edges if dst in d_ids}) == 1

    simple = (
        len(d_ids) == 2
        and len(acf.attacks) == 1
        and len(acf.supports) == 1
        and all(defined_vote(a) is Vote.AGREE for a in attackers_of_f)
        and all(defined_vote(s) is Vote.DISAGREE for s in supporters_of_f)
        and len(attackers_of_f) == 1
        and len(supporters_of_f) == 1
    )
    return ComplexityProfile(
        simple=simple,
        vote_complex=vote_complex and not simple,
        breadth_complex=breadth_complex and not simple,
        depth_complex=depth_complex and not simple,
    )


# structural slots a template must provide text for
TEMPLATE_SLOTS = ("forecasting", "supporters", "attackers", "leaf_additions")

DEFAULT_TEMPLATES: dict[str, dict] = {
    "tennis": {
        "forecasting": "X will win their next tennis match against Y",
        "supporters": [
            "X has won their last five matches",
            "X has a stronger serve than Y",
        ],
        "attackers": ["Y leads the head-to-head record against X"],
        "leaf_additions": ["X's recent wins were against lower-ranked players"],
    },
    "election": {
        "forecasting": "Party A will win the next election against Party B",
        "supporters": [
            "Party A leads in recent polls",
            "Party A's campaign has raised more funding",
        ],
        "attackers": ["Party B's candidate is more popular in swing regions"],
        "leaf_additions": ["The polls have a history of overestimating Party A"],
    },
}


def _template_for(question_id: str, templates: Mapping[str, dict] | None) -> dict:
    store = templates if templates is not None else DEFAULT_TEMPLATES
    if question_id not in store:
        raise GenerationError(f"no debate template for question {question_id!r}")
    template = store[question_id]
    missing = [slot for slot in TEMPLATE_SLOTS if slot not in template]
    if missing:
        raise GenerationError(f"template {question_id!r} lacks slots {missing}")
    if len(template["supporters"]) < 2 or not template["attackers"] or not template["leaf_additions"]:
        raise GenerationError(
            f"template {question_id!r} needs >= 2 supporters, >= 1 attacker and >= 1 leaf addition"
        )
    return template


def _draw_prediction(band: str, rng: random.Random) -> float:
    if band == "eq50":
        return 0.5
    if band == "lt50":
        return round(rng.uniform(0.05, 0.45), 2)
    return round(rng.uniform(0.55, 0.95), 2)


def generate(
    spec: VariantSpec,
    templates: Mapping[str, dict] | None = None,
    rng: random.Random | None = None,
) -> tuple[Acf, str]:
    """Build a debate matching the requested profile, with a fictitious
    forecaster whose prediction is drawn from the requested band.

    The construction round-trips: ``classify`` on the result returns exactly
    the requested profile.
    """
    rng = rng or random.Random(0)
    template = _template_for(spec.question_id, templates)
    profile = spec.profile
    if profile.simple and (profile.vote_complex or profile.breadth_complex or profile.depth_complex):
        raise GenerationError("a simple profile cannot carry complexity flags")

    user = "u1"
    f = Argument("f", template["forecasting"])
    s1 = Argument("s1", template["supporters"][0])
    a1 = Argument("a1", template["attackers"][0])
    other = {s1, a1}
    supports = {("s1", "f")}
    attacks = {("a1", "f")}
    votes: dict[tuple[str, str], Vote] = {}

    if profile.breadth_complex:
        s2 = Argument("s2", template["supporters"][1])
        other.add(s2)
        supports.add(("s2", "f"))
        votes[(user, "s2")] = Vote.DISAGREE
    if profile.depth_complex:
        # one argument attached to a leaf child; the author auto-agrees
        g1 = Argument("g1", template["leaf_additions"][0])
        other.add(g1)
        supports.add(("g1", "s1"))
        votes[(user, "g1")] = Vote.AGREE

    if profile.vote_complex:
        # double negative on the attacker makes the votes complex
        votes[(user, "a1")] = Vote.DISAGREE
        votes[(user, "s1")] = Vote.AGREE
        if profile.breadth_complex:
            votes[(user, "s2")] = Vote.AGREE
    else:
        votes[(user, "a1")] = Vote.AGREE
        votes[(user, "s1")] = Vote.DISAGREE

    prediction = _draw_prediction(spec.band, rng)
    acf = Acf(
        forecasting_args={f},
        other_args=other,
        attacks=attacks,
        supports=supports,
        forecasters={user},
        votes=votes,
        predictions={(user, "f"): prediction},
    )
    got = classify(acf, user)
    if got != profile:
        raise GenerationError(f"generated debate classifies as {got.token!r}, wanted {profile.token!r}")
    return acf, user


def alignment_sample(
    acf: Acf,
    forecaster: str,
    cfg: ThresholdConfig | None = None,
    user_says_coherent: bool = False,
    forecast_base: Mapping[str, float] | None = None,
) -> tuple[bool, bool]:
    """Pair the engine's coherence verdict with a human label for one debate."""
    model = forecaster_is_coherent(check_coherence(acf, forecaster, cfg, forecast_base))
    return model, user_says_coherent
