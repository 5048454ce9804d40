"""Active acquisition of a QCN through membership queries.

The engine is a generator that yields one query at a time and receives
the yes/no answer back, so the same code drives both the simulated
oracle and the interactive HTTP session.  Propagation (PC or PPC) runs
after every answer; with mistake handling enabled, each (snapshot, query)
pair is pushed on a stack and inconsistency triggers Alg-5-style
backtracking: pop, restore, re-ask, re-apply, until consistent again.
"""

from __future__ import annotations

import dataclasses
import random
import time
from dataclasses import dataclass, field

from .algebra import Calculus
from .network import (
    Qcn,
    new_universal,
    UNIVERSAL_CONFIRMED,
    UNIVERSAL_RULED_OUT,
    UNIVERSAL_UNKNOWN,
)
from .oracle import Answer, Query, RELATION_QUERY, UNIVERSAL_QUERY, SimulatedOracle
from .propagation import (
    CONSISTENT,
    INCONSISTENT,
    PropagationResult,
    partial_path_consistency_incremental,
    path_consistency_incremental,
    triangulate,
)

PROPAGATION_MODES = ("none", "pc", "ppc")
HEURISTICS = ("random", "cardinality", "weight", "cardinality_descending")

CONVERGED = "converged"
COLLAPSE = "collapse"


class LearnerError(Exception):
    pass


@dataclass(frozen=True)
class LearnerConfig:
    case: int = 1
    propagation: str = "pc"
    heuristic: str = "random"
    p_yes_bias: float = 0.0
    seed: int = 0
    mistakes_enabled: bool = False
    # remember given answers so that replaying after a backtrack does not
    # re-interrogate the user; the BT baseline switches this off
    cache_answers: bool = True

    def validate(self) -> None:
        if self.case not in (1, 2, 3):
            raise LearnerError(f"case must be 1, 2 or 3, got {self.case}")
        if self.propagation not in PROPAGATION_MODES:
            raise LearnerError(f"unknown propagation mode {self.propagation!r}")
        if self.heuristic not in HEURISTICS:
            raise LearnerError(f"unknown heuristic {self.heuristic!r}")
        if self.propagation == "ppc" and self.case != 2:
            raise LearnerError("ppc propagation is only meaningful for case 2 (sparse targets)")
        if not 0.0 <= self.p_yes_bias <= 1.0:
            raise LearnerError(f"p_yes_bias out of [0,1]: {self.p_yes_bias}")


@dataclass
class RunStats:
    queries: int = 0
    backtracks: int = 0
    detected_mistakes: int = 0
    wall_time: float = 0.0
    pruned_by_pc: int = 0
    yes_answers: int = 0

    @property
    def yes_rate(self) -> float:
        return self.yes_answers / self.queries if self.queries else 0.0


@dataclass
class Step:
    """One outstanding question from the engine to whoever answers."""

    query: Query
    is_reask: bool = False
    prior_answer: bool | None = None
    pruned: list = field(default_factory=list)


@dataclass
class LearnResult:
    status: str
    network: Qcn | None
    stats: RunStats


# -- query selection ---------------------------------------------------


def _undecided(g: Qcn, e: int) -> int:
    return g.candidates[e] & ~g.confirmed[e]


def _resolved(g: Qcn, e: int, case: int) -> bool:
    if case == 1:
        return g.candidates[e].bit_count() <= 1
    if case == 2:
        return g.universal_checked[e] != UNIVERSAL_UNKNOWN
    return _undecided(g, e) == 0


def network_done(g: Qcn, case: int) -> bool:
    return all(_resolved(g, e, case) for e in range(len(g.candidates)))


def _edge_score(g: Qcn, e: int, heuristic: str, weights: list[int]):
    u = _undecided(g, e)
    if heuristic == "cardinality":
        return u.bit_count()
    if heuristic == "cardinality_descending":
        return -u.bit_count()
    if heuristic == "weight":
        return sum(weights[b] for b in g.calc.bits(u))
    raise LearnerError(heuristic)


_ORDER_CACHE: dict[tuple, tuple] = {}


def _run_orders(seed: int, n: int, p: int) -> tuple[list[int], list[list[int]]]:
    """Per-run random priority over edges and per-edge primitive order.

    The "random" heuristic commits to one shuffled order up front
    instead of re-rolling per query, so a replay after backtracking
    revisits the same questions (and can reuse remembered answers).
    """
    key = (seed, n, p)
    got = _ORDER_CACHE.get(key)
    if got is None:
        if len(_ORDER_CACHE) > 64:
            _ORDER_CACHE.clear()
        # string seeds hash stably (sha512); tuples with strings do not
        rng = random.Random(f"order:{seed}")
        m = n * (n - 1) // 2
        edge_rank = list(range(m))
        rng.shuffle(edge_rank)
        prim_rank = [rng.sample(range(p), p) for _ in range(m)]
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        ordered = sorted(((e, i, j) for e, (i, j) in enumerate(pairs)),
                         key=lambda t: edge_rank[t[0]])
        got = (edge_rank, prim_rank, ordered)
        _ORDER_CACHE[key] = got
    return got


def next_query(g: Qcn, cfg: LearnerConfig, target_hint: Qcn | None,
               rng: random.Random, weights: list[int] | None = None,
               stick: tuple[int, int] | None = None) -> Query | None:
    """The next membership query, or None when the case's termination holds.

    ``stick`` is the previously queried edge: an ordering heuristic picks
    which edge to process next, and processing an edge means querying it
    until it resolves — re-scoring mid-edge would make the descending
    heuristic hop away after every answer.
    """
    calc = g.calc
    case = cfg.case

    if case == 2:
        # a confirmed relation schedules the universal check for that edge first
        for e, (i, j) in enumerate(g.edges()):
            if g.confirmed[e] and g.universal_checked[e] == UNIVERSAL_UNKNOWN:
                return Query(UNIVERSAL_QUERY, i, j)

    prim_rank = None
    if cfg.heuristic == "random":
        # hot path: walk the pre-committed order, stop at the first open edge
        _, prim_rank, ordered = _run_orders(cfg.seed, g.n, calc.p)
        cand = g.candidates
        confd = g.confirmed
        uchk = g.universal_checked
        for e, i, j in ordered:
            if case == 1 and cand[e].bit_count() <= 1:
                continue
            if case == 2 and uchk[e] != UNIVERSAL_UNKNOWN:
                continue
            if cand[e] & ~confd[e]:
                break
        else:
            return None
    else:
        open_edges = [(e, ij) for e, ij in enumerate(g.edges())
                      if not _resolved(g, e, case) and _undecided(g, e)]
        if not open_edges:
            return None
        if weights is None:
            weights = [calc.weight(b) for b in range(calc.p)]
        e = i = j = None
        if stick is not None:
            se = g.edge_index(*stick)
            if not _resolved(g, se, case) and _undecided(g, se):
                e, (i, j) = se, (min(stick), max(stick))
        if e is None:
            e, (i, j) = min(open_edges, key=lambda t: (_edge_score(g, t[0], cfg.heuristic, weights), t[1]))

    undecided = _undecided(g, e)
    pool = undecided
    if target_hint is not None and cfg.p_yes_bias > 0.0:
        t_edge = target_hint.candidates[target_hint.edge_index(i, j)]
        in_target = undecided & t_edge
        off_target = undecided & ~t_edge
        # the coin is keyed per edge state so replays land the same way
        coin_key = ((cfg.seed * 1_000_003 + i) * 1_000_003 + j) * 65_536 + undecided
        coin = random.Random(coin_key).random()
        want_yes = coin < cfg.p_yes_bias
        pool = (in_target if want_yes else off_target) or (off_target if want_yes else in_target)
    elif target_hint is not None:
        t_edge = target_hint.candidates[target_hint.edge_index(i, j)]
        pool = (undecided & ~t_edge) or undecided

    bits = calc.bits(pool)
    if cfg.heuristic == "random":
        b = min(bits, key=lambda k: prim_rank[e][k])
    else:
        # most constraining first, so a "yes" maximizes subsequent pruning
        b = min(bits, key=lambda k: (weights[k], k))
    return Query(RELATION_QUERY, i, j, b)


def apply_answer(g: Qcn, q: Query, a: Answer, case: int) -> None:
    """Fold one answer into the learner's network (queries are i < j)."""
    e = g.edge_index(q.i, q.j)
    if q.kind == UNIVERSAL_QUERY:
        if case != 2:
            raise LearnerError("universal checks only occur in case 2")
        if a.yes:
            g.universal_checked[e] = UNIVERSAL_CONFIRMED
        else:
            g.universal_checked[e] = UNIVERSAL_RULED_OUT
            g.candidates[e] = g.confirmed[e]
        return
    bit = 1 << q.b
    if a.yes:
        if case == 1:
            g.candidates[e] = bit
            g.confirmed[e] = bit
        else:
            g.confirmed[e] |= bit
    else:
        g.candidates[e] &= ~bit
        g.confirmed[e] &= ~bit


def final_network(g: Qcn, case: int) -> Qcn:
    """The learned target, with working-state bookkeeping stripped."""
    out = Qcn(g.calc, g.n, g.names)
    for e in range(len(g.candidates)):
        if case == 2 and g.universal_checked[e] == UNIVERSAL_CONFIRMED:
            out.candidates[e] = g.calc.universal
        else:
            out.candidates[e] = g.candidates[e]
    return out


# -- propagation wrapper ----------------------------------------------


class _Propagator:
    """Runs the configured consistency check after each applied answer."""

    def __init__(self, cfg: LearnerConfig, calc: Calculus, n: int):
        self.cfg = cfg
        self.calc = calc
        self.n = n
        self._struct = None
        self._struct_edges = 0
        # rebuilding min-fill on every new edge would dominate the run;
        # the structure lags behind and catches up in batches
        self._rebuild_step = max(10, n // 2)
        # under mistakes, pruning away an answer the oracle confirmed is
        # itself a contradiction worth backtracking over — but only in
        # case 1, where the target is closed: in cases 2 and 3 a
        # truthfully confirmed primitive may legitimately fall to
        # propagation on the way to the closure
        self._guard = cfg.mistakes_enabled and cfg.case == 1

    def run(self, g: Qcn, edge: tuple[int, int]) -> PropagationResult:
        mode = self.cfg.propagation
        if mode == "pc":
            return path_consistency_incremental(g, edge, confirmed_guard=self._guard)
        if mode == "ppc":
            known = [ij for e, ij in enumerate(g.edges())
                     if g.candidates[e] != g.calc.universal or g.confirmed[e]]
            if (self._struct is None
                    or len(known) >= self._struct_edges + self._rebuild_step
                    or not self._struct.has_edge(*edge)):
                self._struct = triangulate(g, known)
                self._struct_edges = len(known)
            return partial_path_consistency_incremental(
                g, self._struct, edge, confirmed_guard=self._guard)
        # no propagation: inconsistency is visible only as an emptied edge
        if g.candidates[g.edge_index(*edge)] == 0:
            return PropagationResult(INCONSISTENT)
        return PropagationResult(CONSISTENT)


# -- the acquisition engine -------------------------------------------


def _scenario_check(g: Qcn) -> bool:
    """Triangle check of a fully singleton network (no queries needed)."""
    calc = g.calc
    n = g.n
    rel = [[0] * n for _ in range(n)]
    for e, (i, j) in enumerate(g.edges()):
        if g.candidates[e].bit_count() != 1:
            return True  # not a complete scenario; nothing to check yet
        rel[i][j] = g.candidates[e]
        rel[j][i] = calc.inverse(g.candidates[e])
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                if k in (i, j):
                    continue
                if rel[i][j] & calc.compose(rel[i][k], rel[k][j]) == 0:
                    return False
    return True


def acquisition_steps(cfg: LearnerConfig, calc: Calculus, n: int,
                      target_hint: Qcn | None = None,
                      names: list[str] | None = None,
                      stats: RunStats | None = None,
                      shared: dict | None = None):
    """Generator: yields Step, receives the boolean answer via send().

    Returns a LearnResult when the run converges or collapses.  When
    ``shared`` is given, its "network" key tracks the live working
    network so an observer (the HTTP service) can render progress.
    """
    cfg.validate()
    if stats is None:
        stats = RunStats()
    rng = random.Random(cfg.seed)
    g = new_universal(calc, n, names)
    prop = _Propagator(cfg, calc, n)
    stack: list[tuple[Qcn, Query, bool]] = []
    pruned_delta: list = []
    # the learner's own record of what the user said: replaying after a
    # backtrack consumes this instead of re-interrogating; "verified"
    # marks answers already re-confirmed by a truthful reask
    use_cache = cfg.cache_answers and cfg.mistakes_enabled
    cache: dict[tuple, bool] = {}
    verified: set[tuple] = set()
    result = PropagationResult(CONSISTENT)
    last_edge: tuple[int, int] | None = None

    while True:
        if shared is not None:
            shared["network"] = g
        q = next_query(g, cfg, target_hint, rng, stick=last_edge)
        sweeping = False
        if q is None and use_cache and cfg.case == 1:
            # confirmation sweep: re-confirm every edge's final primitive
            # once, so a wrong answer that stayed consistent all the way
            # through still gets corrected before we call it converged
            for e, (i, j) in enumerate(g.edges()):
                b = g.candidates[e].bit_length() - 1
                qq = Query(RELATION_QUERY, i, j, b)
                if qq.key() in verified and cache.get(qq.key()):
                    continue
                q, sweeping = qq, True
                break
        if q is None:
            if (cfg.mistakes_enabled and cfg.propagation == "none"
                    and cfg.case == 1 and not _scenario_check(g)):
                # the BT detection of last resort: the finished pass is
                # not a consistent scenario, so something was wrong
                result = PropagationResult(INCONSISTENT)
            else:
                return LearnResult(CONVERGED, final_network(g, cfg.case), stats)
        else:
            key = q.key()
            if sweeping and key in verified:
                yes = cache[key]  # known-false final: a silent contradiction
            elif not sweeping and use_cache and key in cache:
                yes = cache[key]
            else:
                yes = yield Step(q, is_reask=sweeping,
                                 prior_answer=cache.get(key) if sweeping else None,
                                 pruned=pruned_delta)
                pruned_delta = []
                stats.queries += 1
                if yes:
                    stats.yes_answers += 1
                if use_cache:
                    cache[key] = yes
                    if sweeping:
                        verified.add(key)
            if cfg.mistakes_enabled:
                stack.append((g.copy(), q, yes))
            if q.kind == RELATION_QUERY:
                last_edge = (q.i, q.j)
            apply_answer(g, q, Answer(yes), cfg.case)
            result = prop.run(g, (q.i, q.j))
            stats.pruned_by_pc += result.pruned_bits
            pruned_delta.extend(result.pruned)

        if result.status == INCONSISTENT and not cfg.mistakes_enabled:
            return LearnResult(COLLAPSE, None, stats)
        # An inconsistency under a truthful-reask oracle implies a wrong
        # answer somewhere on the stack, so keep unwinding until a reask
        # actually flips one: stopping at the first consistent state
        # would just rediscover the same contradiction forward again.
        flipped = result.status != INCONSISTENT
        while result.status == INCONSISTENT or not flipped:
            if not stack:
                if result.status == INCONSISTENT:
                    return LearnResult(COLLAPSE, None, stats)
                break
            g_saved, q_old, ans_old = stack.pop()
            stats.backtracks += 1
            g = g_saved
            if shared is not None:
                shared["network"] = g
            key = q_old.key()
            if use_cache and key in verified:
                yes = cache[key]  # already re-confirmed truthfully once
            else:
                yes = yield Step(q_old, is_reask=True, prior_answer=ans_old)
                pruned_delta = []
                stats.queries += 1
                if yes:
                    stats.yes_answers += 1
                if use_cache:
                    cache[key] = yes
                    verified.add(key)
            if yes != ans_old:
                stats.detected_mistakes += 1
                flipped = True
            if q_old.kind == RELATION_QUERY:
                last_edge = (q_old.i, q_old.j)
            apply_answer(g, q_old, Answer(yes), cfg.case)
            result = prop.run(g, (q_old.i, q_old.j))
            stats.pruned_by_pc += result.pruned_bits
            pruned_delta.extend(result.pruned)


def learn(cfg: LearnerConfig, oracle: SimulatedOracle, n: int,
          calc: Calculus, use_hint: bool = True) -> LearnResult:
    """Drive a full acquisition run against a simulated oracle."""
    stats = RunStats()
    target_hint = oracle.target if use_hint else None
    engine = acquisition_steps(cfg, calc, n, target_hint=target_hint, stats=stats)
    started = time.perf_counter()
    try:
        step = next(engine)
        while True:
            answer = oracle.ask(step.query, is_reask=step.is_reask)
            step = engine.send(answer.yes)
    except StopIteration as done:
        result: LearnResult = done.value
    stats.wall_time = time.perf_counter() - started
    return result


def learn_with_mistakes(cfg: LearnerConfig, oracle: SimulatedOracle, n: int,
                        calc: Calculus, use_hint: bool = True) -> LearnResult:
    """As learn(), with snapshot backtracking over inconsistent answers."""
    if not cfg.mistakes_enabled:
        cfg = dataclasses.replace(cfg, mistakes_enabled=True)
    return learn(cfg, oracle, n, calc, use_hint=use_hint)
