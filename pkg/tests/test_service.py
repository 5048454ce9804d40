"""The HTTP elicitation service, driven in-process via TestClient."""

import pytest
from fastapi.testclient import TestClient

from qcnlearn.algebra import load_calculus
from qcnlearn.generation import GenConfig, generate_target
from qcnlearn.oracle import Query, RELATION_QUERY, SimulatedOracle
from qcnlearn.service import create_app


@pytest.fixture
def client():
    return TestClient(create_app())


def _open_session(client, n=4, **body):
    resp = client.post("/sessions", json={"calculus": "point", "n": n,
                                          "seed": 0, **body})
    assert resp.status_code == 200
    return resp.json()


def _answer_truthfully(client, sid, payload, target):
    """Drive a session to completion with a truthful oracle."""
    oracle = SimulatedOracle(target)
    for _ in range(10_000):
        if payload["state"] in ("converged", "collapsed"):
            return payload
        q = payload["query"]
        yes = oracle.ask(Query(q["kind"], q["i"], q["j"], q["b"]),
                         is_reask=q["is_reask"]).yes
        resp = client.post(f"/sessions/{sid}/answer",
                           json={"query_id": q["query_id"], "yes": yes})
        assert resp.status_code == 200
        payload = resp.json()
    raise AssertionError("session did not finish")


def test_create_and_fetch_session(client):
    payload = _open_session(client, names=["a", "b", "c", "d"])
    sid = payload["session_id"]
    assert payload["state"] == "awaiting_answer"
    q = payload["query"]
    assert q["query_id"] == 1
    assert q["kind"] == RELATION_QUERY
    assert q["text"].endswith("?")
    again = client.get(f"/sessions/{sid}")
    assert again.status_code == 200
    assert again.json()["query"]["query_id"] == 1


def test_create_session_validation(client):
    assert client.post("/sessions", json={"calculus": "bogus", "n": 3}).status_code == 400
    assert client.post("/sessions", json={"calculus": "ia", "n": 1}).status_code == 400
    assert client.post("/sessions", json={"calculus": "ia", "n": 3,
                                          "names": ["a"]}).status_code == 400
    assert client.post("/sessions", json={"calculus": "ia", "n": 3,
                                          "heuristic": "psychic"}).status_code == 400
    # n inferred from names
    resp = client.post("/sessions", json={"calculus": "ia", "names": ["x", "y"]})
    assert resp.status_code == 200


def test_unknown_session_404(client):
    assert client.get("/sessions/nope").status_code == 404
    assert client.post("/sessions/nope/answer",
                       json={"query_id": 1, "yes": True}).status_code == 404
    assert client.delete("/sessions/nope").status_code == 404


def test_stale_query_id_409_and_bad_body_400(client):
    payload = _open_session(client)
    sid = payload["session_id"]
    assert client.post(f"/sessions/{sid}/answer",
                       json={"query_id": 99, "yes": True}).status_code == 409
    assert client.post(f"/sessions/{sid}/answer",
                       json={"query_id": 1, "yes": "yep"}).status_code == 400


def test_full_truthful_session_converges(client):
    target = generate_target(GenConfig(calculus="point", n=4, case=1, seed=0))
    payload = _open_session(client)
    sid = payload["session_id"]
    final = _answer_truthfully(client, sid, payload, target)
    assert final["state"] == "converged"
    net = client.get(f"/sessions/{sid}/network").json()
    assert net["state"] == "converged"
    calc = load_calculus("point")
    learned = {(e["i"], e["j"]): calc.mask(e["candidates"]) for e in net["edges"]}
    for e, (i, j) in enumerate(target.edges()):
        assert learned[(i, j)] == target.candidates[e]


def test_contradiction_triggers_reask_and_correction(client):
    # answer so that a triangle contradicts: 0<1, 1<2, then 0>2 → the
    # service must enter the reasking state showing a prior answer, and
    # accepting the corrected answer must let the session converge
    target = generate_target(GenConfig(calculus="point", n=3, case=1, seed=3))
    payload = _open_session(client, n=3)
    sid = payload["session_id"]
    oracle = SimulatedOracle(target)
    lied_on = None
    saw_reask = False
    saw_prior = False
    for _ in range(10_000):
        if payload["state"] in ("converged", "collapsed"):
            break
        q = payload["query"]
        truth = oracle.ask(Query(q["kind"], q["i"], q["j"], q["b"]),
                           is_reask=True).yes
        if q["is_reask"]:
            saw_reask = True
            assert payload["state"] == "reasking"
            # confirmation probes have no prior; the reask of the lie does
            saw_prior = saw_prior or q["prior_answer"] is not None
            yes = truth  # concede during reasks
        elif lied_on is None and not truth:
            lied_on = (q["i"], q["j"], q["b"])
            yes = True  # one deliberate wrong yes
        else:
            yes = truth
        resp = client.post(f"/sessions/{sid}/answer",
                           json={"query_id": q["query_id"], "yes": yes})
        assert resp.status_code == 200
        payload = resp.json()
    assert lied_on is not None
    assert saw_reask and saw_prior
    assert payload["state"] == "converged"
    assert payload["network"]["stats"]["backtracks"] > 0
    calc = load_calculus("point")
    learned = {(e["i"], e["j"]): calc.mask(e["candidates"])
               for e in payload["network"]["edges"]}
    for e, (i, j) in enumerate(target.edges()):
        assert learned[(i, j)] == target.candidates[e]


def test_answer_after_convergence_409(client):
    target = generate_target(GenConfig(calculus="point", n=3, case=1, seed=0))
    payload = _open_session(client, n=3)
    sid = payload["session_id"]
    final = _answer_truthfully(client, sid, payload, target)
    assert final["state"] == "converged"
    resp = client.post(f"/sessions/{sid}/answer", json={"query_id": 1, "yes": True})
    assert resp.status_code == 409


def test_delete_session(client):
    sid = _open_session(client)["session_id"]
    assert client.delete(f"/sessions/{sid}").status_code == 200
    assert client.get(f"/sessions/{sid}").status_code == 404


def test_snapshots_written(tmp_path):
    client = TestClient(create_app(snapshot_dir=str(tmp_path)))
    payload = _open_session(client)
    sid = payload["session_id"]
    q = payload["query"]
    client.post(f"/sessions/{sid}/answer", json={"query_id": q["query_id"], "yes": False})
    snap = tmp_path / f"{sid}.json"
    assert snap.exists()
    import json
    doc = json.loads(snap.read_text())
    assert doc["session_id"] == sid
    assert len(doc["history"]) == 1
