"""HTTP elicitation sessions: a human answers the learner's queries.

Each session wraps one acquisition engine.  The server holds exactly
one outstanding query per session; answers must echo its query_id so a
stale or duplicated submission cannot corrupt the run.  Mistake
handling is always on interactively — a contradictory answer puts the
session into the reasking state, presenting an earlier query again
together with the answer originally given.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, HTTPException

from .algebra import CalculusError, load_calculus
from .learner import (
    COLLAPSE,
    LearnResult,
    LearnerConfig,
    LearnerError,
    RunStats,
    Step,
    acquisition_steps,
)
from .network import UNIVERSAL_UNKNOWN, Qcn
from .oracle import render_query

AWAITING = "awaiting_answer"
REASKING = "reasking"
CONVERGED_STATE = "converged"
COLLAPSED_STATE = "collapsed"


@dataclass
class Session:
    id: str
    calc_name: str
    n: int
    names: list[str]
    cfg: LearnerConfig
    engine: object
    shared: dict
    stats: RunStats
    state: str = AWAITING
    step: Step | None = None
    query_id: int = 0
    history: list[dict] = field(default_factory=list)
    result: LearnResult | None = None
    lock: threading.Lock = field(default_factory=threading.Lock)


def _query_payload(sess: Session) -> dict | None:
    step = sess.step
    if step is None:
        return None
    q = step.query
    calc = load_calculus(sess.calc_name)
    payload = {
        "query_id": sess.query_id,
        "kind": q.kind,
        "i": q.i,
        "j": q.j,
        "b": q.b,
        "symbol": calc.symbol(q.b) if q.b >= 0 else None,
        "text": render_query(q, sess.names, calc),
        "is_reask": step.is_reask,
        "prior_answer": step.prior_answer,
        "pruned": _pruned_payload(sess, step.pruned),
    }
    return payload


def _pruned_payload(sess: Session, pruned: list) -> list[dict]:
    calc = load_calculus(sess.calc_name)
    return [{"i": i, "j": j, "removed": calc.symbols(bits)}
            for (i, j), bits in pruned]


def _network_payload(sess: Session) -> dict:
    calc = load_calculus(sess.calc_name)
    if sess.result is not None and sess.result.network is not None:
        g = sess.result.network
    else:
        g = sess.shared.get("network")
    edges = []
    if isinstance(g, Qcn):
        for e, (i, j) in enumerate(g.edges()):
            edges.append({
                "i": i, "j": j,
                "candidates": calc.symbols(g.candidates[e]),
                "confirmed": calc.symbols(g.confirmed[e]),
                "universal_checked": g.universal_checked[e] != UNIVERSAL_UNKNOWN,
            })
    return {
        "state": sess.state,
        "n": sess.n,
        "names": sess.names,
        "edges": edges,
        "stats": {
            "queries": sess.stats.queries,
            "backtracks": sess.stats.backtracks,
            "detected_mistakes": sess.stats.detected_mistakes,
        },
    }


def _status_payload(sess: Session) -> dict:
    return {
        "session_id": sess.id,
        "state": sess.state,
        "query": _query_payload(sess),
        "queries_asked": sess.stats.queries,
        "backtracks": sess.stats.backtracks,
    }


def create_app(snapshot_dir: str | None = None, allow_cors: bool = False) -> FastAPI:
    app = FastAPI(title="qcnlearn elicitation service")
    sessions: dict[str, Session] = {}
    store_lock = threading.Lock()

    if allow_cors:
        from fastapi.middleware.cors import CORSMiddleware
        app.add_middleware(CORSMiddleware, allow_origins=["*"],
                           allow_methods=["*"], allow_headers=["*"])

    def snapshot(sess: Session) -> None:
        if snapshot_dir is None:
            return
        path = Path(snapshot_dir) / f"{sess.id}.json"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps({
            "session_id": sess.id,
            "state": sess.state,
            "calculus": sess.calc_name,
            "n": sess.n,
            "names": sess.names,
            "history": sess.history,
            "queries_asked": sess.stats.queries,
        }, indent=1))

    def get_session(session_id: str) -> Session:
        with store_lock:
            sess = sessions.get(session_id)
        if sess is None:
            raise HTTPException(status_code=404, detail="unknown session")
        return sess

    @app.post("/sessions")
    def create_session(body: dict):
        calc_name = body.get("calculus", "ia")
        try:
            calc = load_calculus(calc_name)
        except (CalculusError, TypeError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        n = body.get("n")
        names = body.get("names")
        if names is not None and (not isinstance(names, list)
                                  or not all(isinstance(x, str) for x in names)):
            raise HTTPException(status_code=400, detail="names must be a list of strings")
        if n is None and names is not None:
            n = len(names)
        if not isinstance(n, int) or n < 2:
            raise HTTPException(status_code=400, detail="n must be an integer >= 2")
        if names is not None and len(names) != n:
            raise HTTPException(status_code=400, detail=f"{len(names)} names for n={n}")
        cfg = LearnerConfig(
            case=body.get("case", 1),
            propagation=body.get("propagation", "pc"),
            heuristic=body.get("heuristic", "random"),
            seed=body.get("seed", 0),
            mistakes_enabled=True,
        )
        try:
            cfg.validate()
        except LearnerError as exc:
            raise HTTPException(status_code=400, detail=str(exc))

        stats = RunStats()
        shared: dict = {}
        engine = acquisition_steps(cfg, calc, n, names=names,
                                   stats=stats, shared=shared)
        sess = Session(id=uuid.uuid4().hex, calc_name=calc_name, n=n,
                       names=names or [f"entity {i}" for i in range(n)],
                       cfg=cfg, engine=engine, shared=shared, stats=stats)
        try:
            sess.step = next(engine)
            sess.query_id = 1
        except StopIteration as done:  # n=2 with no queries cannot happen, but be safe
            sess.result = done.value
            sess.state = CONVERGED_STATE
        with store_lock:
            sessions[sess.id] = sess
        snapshot(sess)
        return _status_payload(sess)

    @app.get("/sessions/{session_id}")
    def read_session(session_id: str):
        return _status_payload(get_session(session_id))

    @app.post("/sessions/{session_id}/answer")
    def submit_answer(session_id: str, body: dict):
        sess = get_session(session_id)
        with sess.lock:
            if sess.state in (CONVERGED_STATE, COLLAPSED_STATE):
                raise HTTPException(status_code=409, detail=f"session is {sess.state}")
            if body.get("query_id") != sess.query_id:
                raise HTTPException(status_code=409, detail="stale or missing query_id")
            yes = body.get("yes")
            if not isinstance(yes, bool):
                raise HTTPException(status_code=400, detail="yes must be a boolean")

            answered = sess.step
            entry = {
                "kind": answered.query.kind,
                "i": answered.query.i,
                "j": answered.query.j,
                "b": answered.query.b,
                "yes": yes,
            }
            if answered.is_reask:
                # the reask replaces the answer it is correcting
                sess.history = sess.history[:-1]
            sess.history.append(entry)

            try:
                sess.step = sess.engine.send(yes)
                sess.query_id += 1
                sess.state = REASKING if sess.step.is_reask else AWAITING
            except StopIteration as done:
                sess.result = done.value
                sess.step = None
                sess.state = (COLLAPSED_STATE if sess.result.status == COLLAPSE
                              else CONVERGED_STATE)
            snapshot(sess)
            payload = _status_payload(sess)
            if sess.state == CONVERGED_STATE:
                payload["network"] = _network_payload(sess)
            return payload

    @app.get("/sessions/{session_id}/network")
    def read_network(session_id: str):
        return _network_payload(get_session(session_id))

    @app.delete("/sessions/{session_id}")
    def delete_session(session_id: str):
        with store_lock:
            if sessions.pop(session_id, None) is None:
                raise HTTPException(status_code=404, detail="unknown session")
        return {"deleted": session_id}

    return app
