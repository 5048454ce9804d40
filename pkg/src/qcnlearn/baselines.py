"""Baseline learners: the naive/BT loop and a clausal unit-propagation learner.

The naive learner is exactly the acquisition engine with propagation
switched off, so inconsistency is only ever noticed when an edge runs
out of candidates.  The clausal learner replays the naive query
sequence but skips every query whose atom is already decided by unit
propagation over the composition-table clauses, so its query count is
the naive count minus the skips — never more.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import Calculus
from .learner import (
    COLLAPSE,
    CONVERGED,
    LearnResult,
    LearnerConfig,
    RunStats,
    acquisition_steps,
    learn,
)
from .oracle import RELATION_QUERY, SimulatedOracle


def learn_naive(case: int, oracle: SimulatedOracle, n: int, calc: Calculus,
                seed: int = 0, p_yes_bias: float = 0.0,
                mistakes_enabled: bool = False, use_hint: bool = True) -> LearnResult:
    """Backtracking baseline: no propagation, no ordering heuristic."""
    cfg = LearnerConfig(case=case, propagation="none", heuristic="random",
                        p_yes_bias=p_yes_bias, seed=seed,
                        mistakes_enabled=mistakes_enabled, cache_answers=False)
    return learn(cfg, oracle, n, calc, use_hint=use_hint)


# -- clausal theory ----------------------------------------------------


@dataclass
class ClausalTheory:
    """Atoms a(i,j,b) with unit propagation over positive edge clauses.

    Clauses here are stored pre-reduced: a composition clause's two
    negative premise literals are only ever added once both premises
    hold, so what remains is the positive disjunction over the third
    edge.  Every edge additionally starts with its at-least-one clause.
    """

    calc: Calculus
    n_edges: int
    assignment: list[bool | None] = field(default_factory=list)
    clauses_by_edge: list[list[list[int]]] = field(default_factory=list)
    inconsistent: bool = False

    def __post_init__(self) -> None:
        p = self.calc.p
        if not self.assignment:
            self.assignment = [None] * (self.n_edges * p)
        if not self.clauses_by_edge:
            self.clauses_by_edge = [
                [[e * p + b for b in range(p)]] for e in range(self.n_edges)
            ]

    def atom(self, e: int, b: int) -> int:
        return e * self.calc.p + b

    def value(self, a: int) -> bool | None:
        return self.assignment[a]

    def true_bit(self, e: int) -> int | None:
        p = self.calc.p
        for b in range(p):
            if self.assignment[e * p + b]:
                return b
        return None

    def add_clause(self, e: int, positives: list[int]) -> list[int]:
        """Add a positive clause on edge e and propagate; returns new units."""
        self.clauses_by_edge[e].append(positives)
        return self.propagate([e])

    def assign(self, a: int, val: bool) -> list[int]:
        """Assign one atom and run unit propagation to fixpoint.

        Returns the list of atoms whose value was newly set (including
        ``a``), so the caller can chase composition consequences.
        """
        p = self.calc.p
        newly: list[int] = []
        pending = [(a, val)]
        while pending:
            at, v = pending.pop()
            cur = self.assignment[at]
            if cur is not None:
                if cur != v:
                    self.inconsistent = True
                    return newly
                continue
            self.assignment[at] = v
            newly.append(at)
            e, b = divmod(at, p)
            if v:
                # one primitive per edge: truth falsifies the siblings
                for b2 in range(p):
                    if b2 != b:
                        pending.append((self.atom(e, b2), False))
            else:
                for unit in self.propagate([e]):
                    newly.append(unit)
        return newly

    def propagate(self, edges: list[int]) -> list[int]:
        """Unit-propagate the clauses of the given edges; returns new units."""
        newly: list[int] = []
        stack = list(edges)
        while stack:
            e = stack.pop()
            for clause in self.clauses_by_edge[e]:
                unassigned = None
                satisfied = False
                count = 0
                for at in clause:
                    v = self.assignment[at]
                    if v:
                        satisfied = True
                        break
                    if v is None:
                        unassigned = at
                        count += 1
                if satisfied:
                    continue
                if count == 0:
                    self.inconsistent = True
                    return newly
                if count == 1:
                    for unit in self.assign(unassigned, True):
                        newly.append(unit)
                        ue = unit // self.calc.p
                        if ue != e:
                            stack.append(ue)
        return newly


def learn_conacq2(case: int, oracle: SimulatedOracle, n: int, calc: Calculus,
                  seed: int = 0, p_yes_bias: float = 0.0,
                  use_hint: bool = True) -> LearnResult:
    """Clausal learner: naive's query order, minus entailed queries.

    Composition clauses are instantiated lazily: once primitives are
    fixed on two edges of a triangle, the composition row restricts the
    third edge, falsifying out-of-row atoms and adding the positive
    disjunction over the row.  Outside case 1 the composition knowledge
    is unsound (an edge may be universal or disjunctive), so the theory
    degenerates to per-edge bookkeeping and the run matches naive.
    """
    stats = RunStats()
    target_hint = oracle.target if use_hint else None
    cfg = LearnerConfig(case=case, propagation="none", heuristic="random",
                        p_yes_bias=p_yes_bias, seed=seed)
    engine = acquisition_steps(cfg, calc, n, target_hint=target_hint)

    shadow = None  # edge list mirror for triangle lookups
    theory: ClausalTheory | None = None
    edge_of: dict[tuple[int, int], int] = {}
    if case == 1:
        m = n * (n - 1) // 2
        theory = ClausalTheory(calc, m)
        idx = 0
        for i in range(n):
            for j in range(i + 1, n):
                edge_of[(i, j)] = idx
                idx += 1
        shadow = [None] * m  # decided primitive per edge, i -> j oriented

    def fire_compositions(units: list[int]) -> None:
        """Chase newly-true atoms: restrict third edges of their triangles."""
        queue = [u for u in units if theory.assignment[u]]
        while queue:
            at = queue.pop()
            e, b = divmod(at, calc.p)
            # recover (i, j) from the edge id
            i = 0
            acc = 0
            while acc + (n - i - 1) <= e:
                acc += n - i - 1
                i += 1
            j = e - acc + i + 1
            shadow[e] = b
            r_ij = 1 << b
            for k in range(n):
                if k in (i, j):
                    continue
                jk = edge_of[(min(j, k), max(j, k))]
                ik = edge_of[(min(i, k), max(i, k))]
                restrictions = []
                if shadow[jk] is not None:
                    # (i -> j) o (j -> k) restricts i -> k
                    r_jk = 1 << shadow[jk] if j < k else calc.inverse(1 << shadow[jk])
                    row = calc.compose(r_ij, r_jk)
                    restrictions.append((ik, row if i < k else calc.inverse(row)))
                if shadow[ik] is not None:
                    # (j -> i) o (i -> k) restricts j -> k
                    r_ik = 1 << shadow[ik] if i < k else calc.inverse(1 << shadow[ik])
                    row = calc.compose(calc.inverse(r_ij), r_ik)
                    restrictions.append((jk, row if j < k else calc.inverse(row)))
                for e3, row in restrictions:
                    # only the positive disjunction is entailed without a
                    # one-primitive-per-edge axiom; deductions beyond unit
                    # propagation (e.g. falsifying out-of-row atoms) would
                    # make this as strong as algebraic closure
                    units2 = theory.add_clause(e3, [theory.atom(e3, b3)
                                                    for b3 in calc.bits(row)])
                    if theory.inconsistent:
                        return
                    queue.extend(u for u in units2 if theory.assignment[u])

    try:
        step = next(engine)
        while True:
            q = step.query
            answer = None
            if theory is not None and q.kind == RELATION_QUERY:
                known = theory.value(theory.atom(edge_of[(q.i, q.j)], q.b))
                if known is not None:
                    answer = known  # entailed: skipped, never sent to the oracle
            if answer is None:
                answer = oracle.ask(q, is_reask=step.is_reask).yes
                stats.queries += 1
                if answer:
                    stats.yes_answers += 1
                if theory is not None:
                    units = theory.assign(theory.atom(edge_of[(q.i, q.j)], q.b), answer)
                    if theory.inconsistent:
                        return LearnResult(COLLAPSE, None, stats)
                    fire_compositions(units)
                    if theory.inconsistent:
                        return LearnResult(COLLAPSE, None, stats)
            step = engine.send(answer)
    except StopIteration as done:
        inner: LearnResult = done.value
    return LearnResult(inner.status, inner.network, stats)
