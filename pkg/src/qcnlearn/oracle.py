"""Membership-query oracles: the simulated user, with mistake injection.

The simulated oracle memoizes its first answer to every distinct query,
so a repeated question gets the same (possibly wrong) reply, like a user
who sticks to their story.  A reask, posed during backtracking, is
answered truthfully by default and overwrites the stored answer.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .algebra import Calculus
from .network import Qcn

RELATION_QUERY = "relation"
UNIVERSAL_QUERY = "universal"


@dataclass(frozen=True)
class Query:
    kind: str
    i: int
    j: int
    b: int = -1  # basic-relation id, relation queries only

    def key(self) -> tuple:
        return (self.kind, self.i, self.j, self.b)


@dataclass(frozen=True)
class Answer:
    yes: bool
    was_mistake: bool = False  # harness-side bookkeeping, never read by the learner


@dataclass(frozen=True)
class OracleConfig:
    p_mistake: float = 0.0
    seed: int = 0
    reask_truthful: bool = True


class SimulatedOracle:
    """Answers queries against a hidden target network."""

    def __init__(self, target: Qcn, cfg: OracleConfig = OracleConfig()):
        self.target = target
        self.cfg = cfg
        self._rng = random.Random(cfg.seed)
        self._given: dict[tuple, bool] = {}
        self.mistakes_injected = 0

    def truthful(self, q: Query) -> bool:
        t = self.target
        edge = t.candidates[t.edge_index(q.i, q.j)]
        rel = edge if q.i < q.j else t.calc.inverse(edge)
        if q.kind == UNIVERSAL_QUERY:
            return rel == t.calc.universal
        if not 0 <= q.b < t.calc.p:
            raise ValueError(f"basic relation id {q.b} out of range")
        return bool(rel >> q.b & 1)

    def ask(self, q: Query, is_reask: bool = False) -> Answer:
        truth = self.truthful(q)
        key = q.key()
        if is_reask and self.cfg.reask_truthful:
            self._given[key] = truth
            return Answer(yes=truth, was_mistake=False)
        if key in self._given:
            given = self._given[key]
            return Answer(yes=given, was_mistake=given != truth)
        flip = self.cfg.p_mistake > 0 and self._rng.random() < self.cfg.p_mistake
        given = (not truth) if flip else truth
        if flip:
            self.mistakes_injected += 1
        self._given[key] = given
        return Answer(yes=given, was_mistake=flip)


def ask_simulated(target: Qcn, q: Query, cfg: OracleConfig,
                  is_reask: bool = False) -> Answer:
    """One-shot convenience wrapper around SimulatedOracle."""
    return SimulatedOracle(target, cfg).ask(q, is_reask)


_IA_PHRASES = {
    "P": "happen entirely before", "Pi": "happen entirely after",
    "E": "coincide exactly with", "M": "end exactly when the start of",
    "Mi": "start exactly when the end of", "O": "overlap",
    "Oi": "overlap the end of", "D": "take place entirely during",
    "Di": "contain", "S": "start together with and end before",
    "Si": "start together with and end after",
    "F": "finish together with and start after",
    "Fi": "finish together with and start before",
}

_RCC8_PHRASES = {
    "DC": "be completely separate from", "EC": "touch the boundary of",
    "PO": "partially overlap", "TPP": "be inside and touch the edge of",
    "NTPP": "be strictly inside", "TPPi": "contain, touching the edge of",
    "NTPPi": "strictly contain", "EQ": "be exactly the same region as",
}

_POINT_PHRASES = {"<": "occur before", "=": "occur at the same time as", ">": "occur after"}

_PHRASES = {"ia": _IA_PHRASES, "rcc8": _RCC8_PHRASES, "point": _POINT_PHRASES}


def render_query(q: Query, names: list[str] | None, calc: Calculus) -> str:
    """Deterministic plain-language rendering of a query."""
    ni = names[q.i] if names else f"entity {q.i}"
    nj = names[q.j] if names else f"entity {q.j}"
    if q.kind == UNIVERSAL_QUERY:
        return f"Is there no known constraint between '{ni}' and '{nj}'?"
    sym = calc.symbol(q.b)
    phrase = _PHRASES.get(calc.name, {}).get(sym)
    if phrase is None:
        return f"Does '{ni}' relate to '{nj}' by '{sym}'?"
    if sym in ("M", "Mi") and calc.name == "ia":
        return f"Does '{ni}' {phrase} '{nj}' happens?"
    return f"Does '{ni}' {phrase} '{nj}'?"
