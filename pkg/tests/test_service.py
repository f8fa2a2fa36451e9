import json
import threading

import pytest
from fastapi.testclient import TestClient

from argforecast.coherence import ThresholdConfig, aggregate_forecast
from argforecast.datasets import acf_from_dict
from argforecast.service import DebateStore, create_app


@pytest.fixture()
def client(tmp_path):
    app = create_app(tmp_path)
    with TestClient(app) as client:
        yield client


def make_debate(client, question="will it happen", prior=None):
    response = client.post("/debates", json={"question": question, "prior": prior})
    assert response.status_code == 201
    body = response.json()
    return body["debate_id"], body["version"]


def add_argument(client, debate_id, version, text, target, polarity, author="u"):
    response = client.post(
        f"/debates/{debate_id}/arguments",
        json={"version": version, "text": text, "target": target,
              "polarity": polarity, "author": author},
    )
    assert response.status_code == 201, response.text
    body = response.json()
    return body["argument_id"], body["version"]


class TestLifecycle:
    def test_worked_example_end_to_end(self, client):
        debate_id, version = make_debate(client)
        supporter, version = add_argument(client, debate_id, version, "a reason for", "f", "support")
        attacker, version = add_argument(client, debate_id, version, "a reason against", "f", "attack")
        # adding auto-agrees, so re-vote the supporter to disagree
        response = client.put(f"/debates/{debate_id}/votes", json={
            "version": version, "user": "u", "arg": supporter, "vote": "-"})
        version = response.json()["version"]
        response = client.put(f"/debates/{debate_id}/predictions", json={
            "version": version, "user": "u", "arg": "f", "p": 0.85})
        assert response.status_code == 200

        verdicts = client.get(f"/debates/{debate_id}/coherence", params={"user": "u"}).json()
        [verdict] = verdicts["verdicts"]
        assert verdict["sigma"] == pytest.approx(0.125)
        assert verdict["branch"] == "below"
        assert verdict["coherent"] is False
        assert verdicts["forecaster_coherent"] is False

    def test_forecaster_qbaf_view(self, client):
        debate_id, version = make_debate(client)
        supporter, version = add_argument(client, debate_id, version, "s", "f", "support")
        response = client.put(f"/debates/{debate_id}/votes", json={
            "version": version, "user": "u", "arg": supporter, "vote": "-"})
        assert response.status_code == 200
        doc = client.get(f"/debates/{debate_id}/users/u/qbaf").json()
        [edge] = doc["edges"]
        assert edge["fate"] == "flipped" and edge["polarity"] == "attack"
        strengths = {a["id"]: a["strength"] for a in doc["arguments"]}
        assert strengths["f"] == pytest.approx(0.25)

    def test_unknown_debate_404(self, client):
        assert client.get("/debates/nope").status_code == 404
        assert client.get("/debates/nope/forecast").status_code == 404

    def test_vote_on_forecasting_argument_422(self, client):
        debate_id, version = make_debate(client)
        response = client.put(f"/debates/{debate_id}/votes", json={
            "version": version, "user": "u", "arg": "f", "vote": "+"})
        assert response.status_code == 422
        assert "forecasting" in json.dumps(response.json()["detail"])

    def test_stale_version_409(self, client):
        debate_id, version = make_debate(client)
        add_argument(client, debate_id, version, "x", "f", "support")
        response = client.post(f"/debates/{debate_id}/arguments", json={
            "version": version, "text": "y", "target": "f",
            "polarity": "attack", "author": "u"})
        assert response.status_code == 409

    def test_prior_threshold_preset(self, client):
        debate_id, version = make_debate(client, prior=0.2)
        response = client.put(f"/debates/{debate_id}/predictions", json={
            "version": version, "user": "u", "arg": "f", "p": 0.4})
        assert response.status_code == 200
        # sigma stays at 0.5 (no votes): AT_THRESHOLD, so p must sit near xi2
        neutral = client.get(f"/debates/{debate_id}/coherence", params={"user": "u"}).json()
        assert neutral["forecaster_coherent"] is False
        with_prior = client.get(
            f"/debates/{debate_id}/coherence", params={"user": "u", "xi2": "prior", "eps": 0.3}
        ).json()
        assert with_prior["forecaster_coherent"] is True

    def test_complexity_view(self, client):
        debate_id, version = make_debate(client)
        supporter, version = add_argument(client, debate_id, version, "s", "f", "support")
        attacker, version = add_argument(client, debate_id, version, "a", "f", "attack")
        response = client.put(f"/debates/{debate_id}/votes", json={
            "version": version, "user": "u", "arg": supporter, "vote": "-"})
        version = response.json()["version"]
        doc = client.get(f"/debates/{debate_id}/users/u/complexity").json()
        assert doc["profile"] == "s" and doc["simple"] is True
        # a third regular child of f makes the debate breadth-complex
        _, version = add_argument(client, debate_id, version, "s2", "f", "support")
        doc = client.get(f"/debates/{debate_id}/users/u/complexity").json()
        assert doc["breadth_complex"] is True and doc["simple"] is False

    def test_last_write_wins_votes(self, client):
        debate_id, version = make_debate(client)
        arg, version = add_argument(client, debate_id, version, "s", "f", "support")
        for vote in ("-", "?", "+"):
            response = client.put(f"/debates/{debate_id}/votes", json={
                "version": version, "user": "w", "arg": arg, "vote": vote})
            version = response.json()["version"]
        doc = client.get(f"/debates/{debate_id}").json()
        votes = [v for v in doc["votes"] if v["user"] == "w"]
        assert votes == [{"user": "w", "arg": arg, "vote": "+"}]


class TestDurability:
    def test_replay_matches_snapshot(self, client, tmp_path):
        debate_id, version = make_debate(client)
        arg, version = add_argument(client, debate_id, version, "s", "f", "support")
        client.put(f"/debates/{debate_id}/predictions", json={
            "version": version, "user": "u", "arg": "f", "p": 0.7})
        store: DebateStore = client.app.state.store
        replayed = store.replay(debate_id)
        assert store.snapshot_document(replayed) == store.snapshot_document(store.get(debate_id))
        on_disk = json.loads((tmp_path / f"{debate_id}.snapshot.json").read_text())
        assert on_disk == store.snapshot_document(store.get(debate_id))

    def test_reopening_store_restores_state(self, client, tmp_path):
        debate_id, version = make_debate(client)
        add_argument(client, debate_id, version, "s", "f", "attack")
        fresh = DebateStore(tmp_path)
        state = fresh.get(debate_id)
        assert state.version == 2
        assert len(state.acf.other_args) == 1
        [(src, dst)] = state.acf.attacks
        assert dst == "f"


class TestConcurrency:
    def test_concurrent_mutations_no_lost_updates(self, client):
        debate_id, version = make_debate(client)
        n_workers, per_worker = 10, 10
        errors = []

        def worker(i):
            try:
                for j in range(per_worker):
                    while True:
                        current = client.get(f"/debates/{debate_id}").json()["version"]
                        response = client.put(f"/debates/{debate_id}/predictions", json={
                            "version": current, "user": f"u{i}-{j}", "arg": "f",
                            "p": (i * per_worker + j) / (n_workers * per_worker)})
                        if response.status_code == 200:
                            break
                        assert response.status_code == 409, response.text
            except Exception as exc:  # surfaced in the main thread
                errors.append(exc)

        threads = [threading.Thread(target=worker, args=(i,)) for i in range(n_workers)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert not errors

        store: DebateStore = client.app.state.store
        state = store.get(debate_id)
        assert len(state.acf.predictions) == n_workers * per_worker
        assert state.version == 1 + n_workers * per_worker
        # log replay reproduces the live snapshot byte for byte
        replayed = store.replay(debate_id)
        assert json.dumps(store.snapshot_document(replayed), sort_keys=True) == \
            json.dumps(store.snapshot_document(state), sort_keys=True)

        # the service's aggregate equals a fresh offline aggregation
        forecast = client.get(f"/debates/{debate_id}/forecast").json()["forecasts"][0]
        acf = acf_from_dict(store.snapshot_document(state))
        offline = aggregate_forecast(acf, "f", ThresholdConfig())
        assert forecast["raw_mean"] == pytest.approx(offline.raw_mean)
        assert forecast["n_raw"] == offline.n_raw
        assert forecast["n_coherent"] == offline.n_coherent
