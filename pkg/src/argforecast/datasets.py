"""Persistence and batch analysis of forecast datasets and debates.

All documents are UTF-8 JSON.  A dataset file is a top-level array of
forecast records (one resolved question-answer claim with generated pro and
con arguments); a debate file holds arguments, edges, votes and predictions.
Loading validates the schema and reports the offending field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Protocol

from .acf import Acf, Vote
from .coherence import Branch, CoherenceVerdict, ThresholdConfig, pair_verdict
from .errors import DomainError, PreconditionError, SchemaError
from .qbaf import Argument, Qbaf, evaluate

CLAIM_ID = "claim"


@dataclass(frozen=True)
class RatedArgument:
    """A generated pro or con argument with its uncertainty score, which acts
    as the argument's base score."""

    text: str
    score: float


@dataclass
class ForecastRecord:
    """One resolved forecasting question with its generated arguments.

    ``breadth`` is "b11" (exactly one pro and one con argument) or "bnk"
    (any number of each).  ``resolution`` is None while the question is open.
    """

    question_id: str
    claim: str
    prediction: float
    resolution: bool | None = None
    breadth: str = "bnk"
    pro: list[RatedArgument] = field(default_factory=list)
    con: list[RatedArgument] = field(default_factory=list)


@dataclass(frozen=True)
class AccuracyReport:
    """Tallies over a record set: overall accuracy vs accuracy within the
    coherent subset, plus the retained fraction."""

    total: int
    correct: int
    coherent_total: int
    coherent_correct: int

    @property
    def accuracy(self) -> float | None:
        return self.correct / self.total if self.total else None

    @property
    def coherent_accuracy(self) -> float | None:
        return self.coherent_correct / self.coherent_total if self.coherent_total else None

    @property
    def retention(self) -> float | None:
        return self.coherent_total / self.total if self.total else None

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "correct": self.correct,
            "coherent_total": self.coherent_total,
            "coherent_correct": self.coherent_correct,
            "accuracy": self.accuracy,
            "coherent_accuracy": self.coherent_accuracy,
            "retention": self.retention,
        }


class TextCompletionClient(Protocol):
    """Anything that maps a prompt to a completion.  Only replay and constant
    implementations ship; live generation stays behind this seam."""

    def complete(self, prompt: str) -> str: ...


class ReplayTextCompletion:
    """Returns previously recorded responses, byte-identical."""

    def __init__(self, recorded: dict[str, str]):
        self._recorded = dict(recorded)

    def complete(self, prompt: str) -> str:
        if prompt not in self._recorded:
            raise KeyError(f"no recorded response for prompt {prompt!r}")
        return self._recorded[prompt]


class ConstantTextCompletion:
    """Always returns the same response; useful as a test double."""

    def __init__(self, response: str):
        self._response = response

    def complete(self, prompt: str) -> str:
        return self._response


def record_to_qbaf(record: ForecastRecord, forecast_base: float = 0.5) -> Qbaf:
    """Star-shaped graph: the claim as root, pro arguments as supporters and
    con arguments as attackers, each with its uncertainty as base score."""
    arguments = {Argument(CLAIM_ID, record.claim)}
    supports: set[tuple[str, str]] = set()
    attacks: set[tuple[str, str]] = set()
    base_scores = {CLAIM_ID: forecast_base}
    for prefix, side, edges in (("pro", record.pro, supports), ("con", record.con, attacks)):
        for i, arg in enumerate(side, start=1):
            if not (0.0 <= arg.score <= 1.0):
                raise DomainError(f"uncertainty score {arg.score!r} outside [0, 1]")
            arg_id = f"{prefix}{i}"
            arguments.add(Argument(arg_id, arg.text))
            edges.add((arg_id, CLAIM_ID))
            base_scores[arg_id] = arg.score
    return Qbaf(arguments=arguments, attacks=attacks, supports=supports, base_scores=base_scores)


def record_verdict(
    record: ForecastRecord,
    cfg: ThresholdConfig | None = None,
    forecast_base: float = 0.5,
) -> CoherenceVerdict:
    """Coherence of the record's prediction against its claim strength.

    Thresholds are looked up by question id, so per-question priors work."""
    cfg = cfg or ThresholdConfig()
    sigma = evaluate(record_to_qbaf(record, forecast_base))[CLAIM_ID]
    branch, coherent = pair_verdict(
        sigma,
        record.prediction,
        cfg.xi1_for(record.question_id),
        cfg.xi2_for(record.question_id),
        cfg.epsilon,
        cfg.sigma_eq_tol,
    )
    return CoherenceVerdict("", record.question_id, sigma, record.prediction, coherent, branch)


def record_is_correct(record: ForecastRecord) -> bool:
    """Decision rule: the record predicts the event iff prediction > 0.5;
    exactly 0.5 counts as predicting it will not happen."""
    if record.resolution is None:
        raise PreconditionError(f"record {record.question_id!r} is unresolved")
    return (record.prediction > 0.5) == record.resolution


def accuracy_report(
    records: Iterable[ForecastRecord],
    cfg: ThresholdConfig | None = None,
    forecast_base: float = 0.5,
) -> AccuracyReport:
    """Tally correctness over all records and within the coherent subset."""
    records = list(records)
    unresolved = [r.question_id for r in records if r.resolution is None]
    if unresolved:
        raise PreconditionError(f"unresolved records: {unresolved}")
    total = len(records)
    correct = coherent_total = coherent_correct = 0
    for record in records:
        is_correct = record_is_correct(record)
        correct += is_correct
        if record_verdict(record, cfg, forecast_base).coherent:
            coherent_total += 1
            coherent_correct += is_correct
    return AccuracyReport(total, correct, coherent_total, coherent_correct)


# ---------------------------------------------------------------------------
# JSON documents


def _expect(obj: dict, where: str, name: str, kinds: tuple[type, ...], allow_none: bool = False):
    if name not in obj:
        raise SchemaError(f"{where}: missing field {name!r}")
    value = obj[name]
    if value is None and allow_none:
        return None
    # bool is an int subclass; never accept it where a number is wanted
    if isinstance(value, bool) and bool not in kinds:
        raise SchemaError(f"{where}: field {name!r} has wrong type {type(value).__name__}")
    if not isinstance(value, kinds):
        raise SchemaError(f"{where}: field {name!r} has wrong type {type(value).__name__}")
    return value


def _parse_rated(items, where: str) -> list[RatedArgument]:
    if not isinstance(items, list):
        raise SchemaError(f"{where}: expected an array")
    out = []
    for i, item in enumerate(items):
        if not isinstance(item, dict):
            raise SchemaError(f"{where}[{i}]: expected an object")
        text = _expect(item, f"{where}[{i}]", "text", (str,))
        score = float(_expect(item, f"{where}[{i}]", "score", (int, float)))
        out.append(RatedArgument(text, score))
    return out


def record_from_dict(obj: dict, where: str = "record") -> ForecastRecord:
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object")
    record = ForecastRecord(
        question_id=_expect(obj, where, "question_id", (str,)),
        claim=_expect(obj, where, "claim", (str,)),
        prediction=float(_expect(obj, where, "prediction", (int, float))),
        resolution=_expect(obj, where, "resolution", (bool,), allow_none=True),
        breadth=_expect(obj, where, "breadth", (str,)),
        pro=_parse_rated(obj.get("pro", []), f"{where}.pro"),
        con=_parse_rated(obj.get("con", []), f"{where}.con"),
    )
    if record.breadth not in ("b11", "bnk"):
        raise SchemaError(f"{where}: breadth must be 'b11' or 'bnk', got {record.breadth!r}")
    if record.breadth == "b11" and (len(record.pro) != 1 or len(record.con) != 1):
        raise SchemaError(f"{where}: a b11 record needs exactly one pro and one con argument")
    if not (0.0 <= record.prediction <= 1.0):
        raise SchemaError(f"{where}: prediction {record.prediction!r} outside [0, 1]")
    return record


def record_to_dict(record: ForecastRecord) -> dict:
    return {
        "question_id": record.question_id,
        "claim": record.claim,
        "prediction": record.prediction,
        "resolution": record.resolution,
        "breadth": record.breadth,
        "pro": [{"text": a.text, "score": a.score} for a in record.pro],
        "con": [{"text": a.text, "score": a.score} for a in record.con],
    }


def _load_json(path: str | Path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"{path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def load_dataset(path: str | Path) -> list[ForecastRecord]:
    doc = _load_json(path)
    if not isinstance(doc, list):
        raise SchemaError(f"{path}: expected a top-level array of records")
    return [record_from_dict(obj, f"records[{i}]") for i, obj in enumerate(doc)]


def save_dataset(records: Iterable[ForecastRecord], path: str | Path) -> None:
    Path(path).write_text(
        json.dumps([record_to_dict(r) for r in records], indent=2) + "\n", encoding="utf-8"
    )


def acf_to_dict(acf: Acf) -> dict:
    arguments = sorted(acf.forecasting_args | acf.other_args, key=lambda a: a.id)
    forecasting = acf.forecasting_ids()
    return {
        "arguments": [
            {"id": a.id, "text": a.text, "kind": "forecasting" if a.id in forecasting else "regular"}
            for a in arguments
        ],
        "edges": [
            {"src": s, "dst": d, "polarity": "attack"} for s, d in sorted(acf.attacks)
        ] + [
            {"src": s, "dst": d, "polarity": "support"} for s, d in sorted(acf.supports)
        ],
        "votes": [
            {"user": u, "arg": a, "vote": v.value} for (u, a), v in sorted(acf.votes.items())
        ],
        "predictions": [
            {"user": u, "arg": a, "p": p} for (u, a), p in sorted(acf.predictions.items())
        ],
    }


def acf_from_dict(doc: dict, where: str = "debate") -> Acf:
    if not isinstance(doc, dict):
        raise SchemaError(f"{where}: expected an object")
    forecasting: set[Argument] = set()
    other: set[Argument] = set()
    for i, obj in enumerate(_expect(doc, where, "arguments", (list,))):
        w = f"{where}.arguments[{i}]"
        arg = Argument(_expect(obj, w, "id", (str,)), _expect(obj, w, "text", (str,)))
        kind = _expect(obj, w, "kind", (str,))
        if kind == "forecasting":
            forecasting.add(arg)
        elif kind == "regular":
            other.add(arg)
        else:
            raise SchemaError(f"{w}: kind must be 'forecasting' or 'regular', got {kind!r}")

    attacks: set[tuple[str, str]] = set()
    supports: set[tuple[str, str]] = set()
    for i, obj in enumerate(doc.get("edges", [])):
        w = f"{where}.edges[{i}]"
        src = _expect(obj, w, "src", (str,))
        dst = _expect(obj, w, "dst", (str,))
        polarity = _expect(obj, w, "polarity", (str,))
        if polarity == "attack":
            attacks.add((src, dst))
        elif polarity == "support":
            supports.add((src, dst))
        else:
            raise SchemaError(f"{w}: polarity must be 'attack' or 'support', got {polarity!r}")

    votes: dict[tuple[str, str], Vote] = {}
    forecasters: set[str] = set()
    for i, obj in enumerate(doc.get("votes", [])):
        w = f"{where}.votes[{i}]"
        user = _expect(obj, w, "user", (str,))
        arg = _expect(obj, w, "arg", (str,))
        raw = _expect(obj, w, "vote", (str,))
        try:
            vote = Vote(raw)
        except ValueError:
            raise SchemaError(f"{w}: vote must be one of '+', '-', '?', got {raw!r}") from None
        votes[(user, arg)] = vote
        forecasters.add(user)

    predictions: dict[tuple[str, str], float] = {}
    for i, obj in enumerate(doc.get("predictions", [])):
        w = f"{where}.predictions[{i}]"
        user = _expect(obj, w, "user", (str,))
        arg = _expect(obj, w, "arg", (str,))
        predictions[(user, arg)] = float(_expect(obj, w, "p", (int, float)))
        forecasters.add(user)

    forecasters |= set(doc.get("forecasters", []))
    return Acf(
        forecasting_args=forecasting,
        other_args=other,
        attacks=attacks,
        supports=supports,
        forecasters=forecasters,
        votes=votes,
        predictions=predictions,
    )


def load_acf(path: str | Path) -> Acf:
    return acf_from_dict(_load_json(path), str(path))


def save_acf(acf: Acf, path: str | Path) -> None:
    doc = acf_to_dict(acf)
    # forecasters without votes or predictions would otherwise be lost
    doc["forecasters"] = sorted(acf.forecasters)
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


def load_templates(path: str | Path) -> dict[str, dict]:
    doc = _load_json(path)
    if not isinstance(doc, dict):
        raise SchemaError(f"{path}: expected an object mapping question ids to templates")
    return doc


def save_templates(templates: dict[str, dict], path: str | Path) -> None:
    Path(path).write_text(json.dumps(templates, indent=2) + "\n", encoding="utf-8")


def verdict_to_dict(verdict: CoherenceVerdict) -> dict:
    return {
        "forecaster": verdict.forecaster,
        "argument": verdict.argument,
        "sigma": verdict.sigma,
        "prediction": verdict.prediction,
        "coherent": verdict.coherent,
        "branch": verdict.branch.value,
    }


def verdict_from_dict(obj: dict, where: str = "verdict") -> CoherenceVerdict:
    return CoherenceVerdict(
        forecaster=_expect(obj, where, "forecaster", (str,)),
        argument=_expect(obj, where, "argument", (str,)),
        sigma=float(_expect(obj, where, "sigma", (int, float))),
        prediction=_expect(obj, where, "prediction", (int, float), allow_none=True),
        coherent=_expect(obj, where, "coherent", (bool,)),
        branch=Branch(_expect(obj, where, "branch", (str,))),
    )


def save_verdicts(verdicts: Iterable[CoherenceVerdict], path: str | Path) -> None:
    Path(path).write_text(
        json.dumps([verdict_to_dict(v) for v in verdicts], indent=2) + "\n", encoding="utf-8"
    )


def load_verdicts(path: str | Path) -> list[CoherenceVerdict]:
    doc = _load_json(path)
    if not isinstance(doc, list):
        raise SchemaError(f"{path}: expected a top-level array of verdicts")
    return [verdict_from_dict(obj, f"verdicts[{i}]") for i, obj in enumerate(doc)]
