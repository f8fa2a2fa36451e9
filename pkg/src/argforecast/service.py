"""HTTP service over debates: arguments, votes, predictions, coherence and
group forecasts.

Each debate is persisted as an append-only newline-delimited event file plus
a snapshot document.  Mutations are optimistic compare-and-set: a request
carries the caller's last-seen version and conflicts get a 409.  Rebuilding a
debate by replaying its event log yields the identical snapshot.
"""

from __future__ import annotations

import json
import os
import threading
import uuid
from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, HTTPException, Query
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from .acf import Acf, Vote, derive_forecaster_qbaf
from .coherence import ThresholdConfig, aggregate_forecast, check_coherence, forecaster_is_coherent
from .datasets import acf_from_dict, acf_to_dict, verdict_to_dict
from .errors import NotFoundError, UnsupportedShapeError
from .qbaf import Argument, evaluate
from .variants import classify

ENV_ADDR = "ARGFORECAST_ADDR"
ENV_DATA_DIR = "ARGFORECAST_DATA_DIR"
ENV_DEFAULT_EPS = "ARGFORECAST_DEFAULT_EPS"


class ConflictError(Exception):
    def __init__(self, expected: int, actual: int):
        super().__init__(f"version conflict: expected {expected}, current is {actual}")
        self.actual = actual


class ValidationFailure(Exception):
    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = violations


@dataclass
class DebateState:
    question: str
    prior: float | None
    acf: Acf
    version: int = 0


def _apply_event(state: DebateState | None, event: dict) -> DebateState:
    """Fold one event into the debate state.  Pure; raises ValidationFailure
    when the event would break a debate invariant."""
    kind = event["type"]
    if kind == "create":
        acf = Acf(
            forecasting_args={Argument(event["forecasting_id"], event["question"])},
        )
        return DebateState(question=event["question"], prior=event.get("prior"), acf=acf, version=1)

    assert state is not None
    acf = state.acf
    known = {a.id for a in acf.all_arguments()}
    if kind == "add_argument":
        arg_id, target, author = event["id"], event["target"], event["author"]
        if target not in known:
            raise ValidationFailure([f"target argument {target!r} does not exist"])
        if arg_id in known:
            raise ValidationFailure([f"argument id {arg_id!r} already exists"])
        acf.other_args.add(Argument(arg_id, event["text"]))
        edges = acf.attacks if event["polarity"] == "attack" else acf.supports
        edges.add((arg_id, target))
        # the author proposed the argument, so they implicitly agree with it
        acf.votes[(author, arg_id)] = Vote.AGREE
        acf.forecasters.add(author)
    elif kind == "cast_vote":
        user, arg_id = event["user"], event["arg"]
        if arg_id in acf.forecasting_ids():
            raise ValidationFailure([f"votes cannot target forecasting argument {arg_id!r}"])
        if arg_id not in acf.other_ids():
            raise ValidationFailure([f"argument {arg_id!r} does not exist"])
        acf.forecasters.add(user)
        # last write wins per (user, argument)
        acf.votes[(user, arg_id)] = Vote(event["vote"])
    elif kind == "submit_prediction":
        user, arg_id, p = event["user"], event["arg"], event["p"]
        if arg_id not in acf.forecasting_ids():
            raise ValidationFailure([f"predictions must target a forecasting argument, not {arg_id!r}"])
        if not (0.0 <= p <= 1.0):
            raise ValidationFailure([f"prediction {p!r} outside [0, 1]"])
        acf.forecasters.add(user)
        acf.predictions[(user, arg_id)] = float(p)
    else:
        raise ValidationFailure([f"unknown event type {kind!r}"])
    state.version += 1
    return state


class DebateStore:
    """Durable map of debate id -> state, backed by one event log and one
    snapshot file per debate under ``data_dir``."""

    def __init__(self, data_dir: str | Path):
        self.data_dir = Path(data_dir)
        self.data_dir.mkdir(parents=True, exist_ok=True)
        self._states: dict[str, DebateState] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()
        for log in sorted(self.data_dir.glob("*.events.ndjson")):
            debate_id = log.name.split(".")[0]
            self._states[debate_id] = self.replay(debate_id)
            self._locks[debate_id] = threading.Lock()

    def _log_path(self, debate_id: str) -> Path:
        return self.data_dir / f"{debate_id}.events.ndjson"

    def _snapshot_path(self, debate_id: str) -> Path:
        return self.data_dir / f"{debate_id}.snapshot.json"

    def ids(self) -> list[str]:
        with self._registry_lock:
            return sorted(self._states)

    def get(self, debate_id: str) -> DebateState:
        with self._registry_lock:
            if debate_id not in self._states:
                raise NotFoundError(f"unknown debate {debate_id!r}")
            return self._states[debate_id]

    def _lock_for(self, debate_id: str) -> threading.Lock:
        with self._registry_lock:
            if debate_id not in self._locks:
                raise NotFoundError(f"unknown debate {debate_id!r}")
            return self._locks[debate_id]

    def create(self, question: str, prior: float | None = None) -> str:
        debate_id = uuid.uuid4().hex[:12]
        event = {
            "type": "create",
            "question": question,
            "prior": prior,
            "forecasting_id": "f",
        }
        state = _apply_event(None, event)
        with self._registry_lock:
            self._states[debate_id] = state
            self._locks[debate_id] = threading.Lock()
        self._append(debate_id, event)
        self._write_snapshot(debate_id, state)
        return debate_id

    def apply(self, debate_id: str, expected_version: int, event: dict) -> int:
        """Compare-and-set: apply the event only if the debate is still at
        ``expected_version``.  Returns the new version."""
        lock = self._lock_for(debate_id)
        with lock:
            state = self.get(debate_id)
            if state.version != expected_version:
                raise ConflictError(expected_version, state.version)
            _apply_event(state, event)
            self._append(debate_id, event)
            self._write_snapshot(debate_id, state)
            return state.version

    def _append(self, debate_id: str, event: dict) -> None:
        with self._log_path(debate_id).open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(event, sort_keys=True) + "\n")

    def snapshot_document(self, state: DebateState) -> dict:
        doc = acf_to_dict(state.acf)
        doc["forecasters"] = sorted(state.acf.forecasters)
        doc["question"] = state.question
        doc["prior"] = state.prior
        doc["version"] = state.version
        return doc

    def _write_snapshot(self, debate_id: str, state: DebateState) -> None:
        path = self._snapshot_path(debate_id)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(self.snapshot_document(state), indent=2, sort_keys=True) + "\n",
                       encoding="utf-8")
        tmp.replace(path)

    def replay(self, debate_id: str) -> DebateState:
        """Rebuild the debate purely from its event log."""
        state: DebateState | None = None
        with self._log_path(debate_id).open(encoding="utf-8") as fh:
            for line in fh:
                state = _apply_event(state, json.loads(line))
        if state is None:
            raise NotFoundError(f"empty event log for debate {debate_id!r}")
        return state


# ---------------------------------------------------------------------------
# request bodies


class CreateDebate(BaseModel):
    question: str
    prior: float | None = Field(default=None, ge=0.0, le=1.0)


class AddArgument(BaseModel):
    version: int
    text: str
    target: str
    polarity: str
    author: str


class CastVote(BaseModel):
    version: int
    user: str
    arg: str
    vote: str


class SubmitPrediction(BaseModel):
    version: int
    user: str
    arg: str
    p: float = Field(ge=0.0, le=1.0)


def _threshold_config(
    state: DebateState,
    xi1: float | None,
    xi2: float | str | None,
    eps: float | None,
) -> ThresholdConfig:
    default_eps = float(os.environ.get(ENV_DEFAULT_EPS, "0.05"))
    if xi2 == "prior":
        if state.prior is None:
            raise HTTPException(422, detail="debate has no recorded prior")
        xi2_value: float = state.prior
    else:
        xi2_value = float(xi2) if xi2 is not None else 0.5
    try:
        return ThresholdConfig(
            xi1=xi1 if xi1 is not None else 0.5,
            xi2=xi2_value,
            epsilon=eps if eps is not None else default_eps,
        )
    except ValueError as exc:
        raise HTTPException(422, detail=str(exc)) from exc


def create_app(data_dir: str | Path | None = None) -> FastAPI:
    data_dir = data_dir or os.environ.get(ENV_DATA_DIR, "./argforecast-data")
    store = DebateStore(data_dir)
    app = FastAPI(title="argforecast")
    # the browser client may be served from a different origin
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"],
    )
    app.state.store = store

    def get_state(debate_id: str) -> DebateState:
        try:
            return store.get(debate_id)
        except NotFoundError:
            raise HTTPException(404, detail=f"unknown debate {debate_id!r}") from None

    def mutate(debate_id: str, version: int, event: dict) -> int:
        get_state(debate_id)
        try:
            return store.apply(debate_id, version, event)
        except ConflictError as exc:
            raise HTTPException(409, detail=str(exc)) from exc
        except ValidationFailure as exc:
            raise HTTPException(422, detail=exc.violations) from exc

    @app.post("/debates", status_code=201)
    def create_debate(body: CreateDebate):
        debate_id = store.create(body.question, body.prior)
        return {"debate_id": debate_id, "version": store.get(debate_id).version}

    @app.get("/debates/{debate_id}")
    def get_debate(debate_id: str):
        return store.snapshot_document(get_state(debate_id))

    @app.post("/debates/{debate_id}/arguments", status_code=201)
    def add_argument(debate_id: str, body: AddArgument):
        if body.polarity not in ("attack", "support"):
            raise HTTPException(422, detail=f"polarity must be 'attack' or 'support', got {body.polarity!r}")
        arg_id = f"a{uuid.uuid4().hex[:8]}"
        version = mutate(debate_id, body.version, {
            "type": "add_argument",
            "id": arg_id,
            "text": body.text,
            "target": body.target,
            "polarity": body.polarity,
            "author": body.author,
        })
        return {"argument_id": arg_id, "version": version}

    @app.put("/debates/{debate_id}/votes")
    def cast_vote(debate_id: str, body: CastVote):
        if body.vote not in ("+", "-", "?"):
            raise HTTPException(422, detail=f"vote must be one of '+', '-', '?', got {body.vote!r}")
        version = mutate(debate_id, body.version, {
            "type": "cast_vote", "user": body.user, "arg": body.arg, "vote": body.vote,
        })
        return {"version": version}

    @app.put("/debates/{debate_id}/predictions")
    def submit_prediction(debate_id: str, body: SubmitPrediction):
        version = mutate(debate_id, body.version, {
            "type": "submit_prediction", "user": body.user, "arg": body.arg, "p": body.p,
        })
        return {"version": version}

    @app.get("/debates/{debate_id}/coherence")
    def get_coherence(
        debate_id: str,
        user: str = Query(...),
        xi1: float | None = None,
        xi2: str | None = None,
        eps: float | None = None,
    ):
        state = get_state(debate_id)
        if user not in state.acf.forecasters:
            raise HTTPException(404, detail=f"unknown forecaster {user!r}")
        cfg = _threshold_config(state, xi1, xi2, eps)
        verdicts = check_coherence(state.acf, user, cfg)
        return {
            "version": state.version,
            "verdicts": [verdict_to_dict(v) for v in verdicts],
            "forecaster_coherent": forecaster_is_coherent(verdicts),
        }

    @app.get("/debates/{debate_id}/forecast")
    def get_forecast(
        debate_id: str,
        xi1: float | None = None,
        xi2: str | None = None,
        eps: float | None = None,
    ):
        state = get_state(debate_id)
        cfg = _threshold_config(state, xi1, xi2, eps)
        summaries = [
            aggregate_forecast(state.acf, f, cfg)
            for f in sorted(state.acf.forecasting_ids())
        ]
        return {
            "version": state.version,
            "prior": state.prior,
            "forecasts": [
                {
                    "argument": s.argument,
                    "raw_mean": s.raw_mean,
                    "coherent_mean": s.coherent_mean,
                    "n_raw": s.n_raw,
                    "n_coherent": s.n_coherent,
                }
                for s in summaries
            ],
        }

    @app.get("/debates/{debate_id}/users/{user}/complexity")
    def get_complexity(debate_id: str, user: str):
        state = get_state(debate_id)
        if user not in state.acf.forecasters:
            raise HTTPException(404, detail=f"unknown forecaster {user!r}")
        try:
            profile = classify(state.acf, user)
        except UnsupportedShapeError as exc:
            raise HTTPException(422, detail=str(exc)) from exc
        return {
            "version": state.version,
            "profile": profile.token,
            "simple": profile.simple,
            "vote_complex": profile.vote_complex,
            "breadth_complex": profile.breadth_complex,
            "depth_complex": profile.depth_complex,
        }

    @app.get("/debates/{debate_id}/users/{user}/qbaf")
    def get_forecaster_qbaf(debate_id: str, user: str):
        state = get_state(debate_id)
        if user not in state.acf.forecasters:
            raise HTTPException(404, detail=f"unknown forecaster {user!r}")
        derived = derive_forecaster_qbaf(state.acf, user)
        strengths = evaluate(derived.qbaf)
        return {
            "version": state.version,
            "forecaster": user,
            "arguments": [
                {
                    "id": a.id,
                    "text": a.text,
                    "base_score": derived.qbaf.base_scores[a.id],
                    "strength": strengths[a.id],
                }
                for a in sorted(derived.qbaf.arguments, key=lambda a: a.id)
            ],
            "edges": [
                {
                    "src": src,
                    "dst": dst,
                    "fate": fate.value,
                    "polarity": (
                        "attack" if (src, dst) in derived.qbaf.attacks
                        else "support" if (src, dst) in derived.qbaf.supports
                        else None
                    ),
                }
                for (src, dst), fate in sorted(derived.provenance.items())
            ],
        }

    return app


def run(addr: str | None = None, data_dir: str | Path | None = None) -> None:
    import uvicorn

    addr = addr or os.environ.get(ENV_ADDR, "127.0.0.1:8000")
    host, _, port = addr.partition(":")
    uvicorn.run(create_app(data_dir), host=host or "127.0.0.1", port=int(port or 8000))
