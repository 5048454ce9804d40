"""Path consistency with a work queue, plus triangulation and PPC.

The queue holds edges whose labels changed; only triangles touching a
queued edge are revisited.  Composition uses the one-support early exit:
scanning supports for a target bit stops as soon as the bit is justified,
and composition is skipped entirely when an operand is universal.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .network import Qcn

CONSISTENT = "consistent"
INCONSISTENT = "inconsistent"


@dataclass
class PropagationResult:
    status: str
    pruned: list[tuple[tuple[int, int], int]] = field(default_factory=list)
    revisions: int = 0

    @property
    def pruned_bits(self) -> int:
        return sum(removed.bit_count() for _, removed in self.pruned)


@dataclass
class ChordalStructure:
    fill_edges: list[tuple[int, int]]
    neighbors: list[set[int]]
    triangles: list[tuple[int, int, int]]

    def has_edge(self, i: int, j: int) -> bool:
        return j in self.neighbors[i]


def path_consistency(q: Qcn, *, one_support: bool = True) -> PropagationResult:
    """Prune q to its largest path-consistent sub-network (full queue seed)."""
    return _propagate(q, deque(q.edges()), None, one_support)


def path_consistency_incremental(q: Qcn, changed: tuple[int, int],
                                 *, one_support: bool = True,
                                 confirmed_guard: bool = False) -> PropagationResult:
    """Re-establish path consistency after a single edge changed."""
    i, j = changed
    if i > j:
        i, j = j, i
    if q.candidates[q.edge_index(i, j)] == 0:
        return PropagationResult(INCONSISTENT, pruned=[])
    return _propagate(q, deque([(i, j)]), None, one_support, confirmed_guard)


def partial_path_consistency(q: Qcn, cs: ChordalStructure,
                             *, one_support: bool = True) -> PropagationResult:
    """Path consistency restricted to the triangles of a chordal graph."""
    seed = deque((i, j) for i, j in q.edges() if cs.has_edge(i, j))
    return _propagate(q, seed, cs, one_support)


def partial_path_consistency_incremental(q: Qcn, cs: ChordalStructure,
                                         changed: tuple[int, int],
                                         *, one_support: bool = True,
                                         confirmed_guard: bool = False) -> PropagationResult:
    i, j = changed
    if i > j:
        i, j = j, i
    if q.candidates[q.edge_index(i, j)] == 0:
        return PropagationResult(INCONSISTENT, pruned=[])
    if not cs.has_edge(i, j):
        return PropagationResult(CONSISTENT)
    return _propagate(q, deque([(i, j)]), cs, one_support, confirmed_guard)


def _propagate(q: Qcn, queue: deque, cs: ChordalStructure | None,
               one_support: bool, confirmed_guard: bool = False) -> PropagationResult:
    calc = q.calc
    cand = q.candidates
    conf = q.confirmed
    inv = calc.inverse
    res = PropagationResult(CONSISTENT)
    in_queue = set(queue)
    n = q.n
    eidx = q.edge_index

    while queue:
        i, j = queue.popleft()
        in_queue.discard((i, j))
        res.revisions += 1
        e_ij = eidx(i, j)
        c_ij = cand[e_ij]          # i -> j
        c_ji = inv(c_ij)
        if cs is None:
            ks = (k for k in range(n) if k != i and k != j)
        else:
            ks = (k for k in cs.neighbors[i] & cs.neighbors[j])
        for k in ks:
            # revise (i, k) through j
            e_ik = eidx(i, k)
            old = cand[e_ik]
            c_jk = cand[eidx(j, k)] if j < k else inv(cand[eidx(j, k)])
            left = c_ij if i < k else inv(c_jk)
            right = c_jk if i < k else c_ji
            # oriented along storage order min(i,k) -> max(i,k)
            if one_support:
                new = calc.compose_bounded(left, right, old)
            else:
                new = calc.compose(left, right) & old
            if new != old:
                cand[e_ik] = new
                hit_confirmed = conf[e_ik] & ~new
                conf[e_ik] &= new
                res.pruned.append(((min(i, k), max(i, k)), old & ~new))
                if new == 0 or (confirmed_guard and hit_confirmed):
                    res.status = INCONSISTENT
                    return res
                edge = (min(i, k), max(i, k))
                if edge not in in_queue:
                    in_queue.add(edge)
                    queue.append(edge)
            # revise (k, j) through i
            e_kj = eidx(k, j)
            old = cand[e_kj]
            c_ki = cand[eidx(k, i)] if k < i else inv(cand[eidx(i, k)])
            left = c_ki if k < j else inv(c_ij)
            right = c_ij if k < j else inv(c_ki)
            if one_support:
                new = calc.compose_bounded(left, right, old)
            else:
                new = calc.compose(left, right) & old
            if new != old:
                cand[e_kj] = new
                hit_confirmed = conf[e_kj] & ~new
                conf[e_kj] &= new
                res.pruned.append(((min(k, j), max(k, j)), old & ~new))
                if new == 0 or (confirmed_guard and hit_confirmed):
                    res.status = INCONSISTENT
                    return res
                edge = (min(k, j), max(k, j))
                if edge not in in_queue:
                    in_queue.add(edge)
                    queue.append(edge)
    return res


def triangulate(q: Qcn, known_edges) -> ChordalStructure:
    """Chordal supergraph of the known edges by greedy min-fill elimination.

    Ties break on the lowest vertex index so the structure is
    deterministic across runs.
    """
    n = q.n
    nbr: list[set[int]] = [set() for _ in range(n)]
    for i, j in known_edges:
        if i > j:
            i, j = j, i
        nbr[i].add(j)
        nbr[j].add(i)

    work = [s.copy() for s in nbr]
    alive = set(range(n))
    fill: list[tuple[int, int]] = []

    def fill_count(v: int) -> int:
        ns = [u for u in work[v] if u in alive]
        missing = 0
        for a in range(len(ns)):
            for b in range(a + 1, len(ns)):
                if ns[b] not in work[ns[a]]:
                    missing += 1
        return missing

    while alive:
        v = min(alive, key=lambda u: (fill_count(u), u))
        ns = [u for u in work[v] if u in alive]
        for a in range(len(ns)):
            for b in range(a + 1, len(ns)):
                x, y = ns[a], ns[b]
                if y not in work[x]:
                    work[x].add(y)
                    work[y].add(x)
                    lo, hi = (x, y) if x < y else (y, x)
                    fill.append((lo, hi))
                    nbr[lo].add(hi)
                    nbr[hi].add(lo)
        alive.remove(v)

    triangles = [
        (i, j, k)
        for i in range(n)
        for j in nbr[i] if j > i
        for k in nbr[i] & nbr[j] if k > j
    ]
    return ChordalStructure(fill_edges=fill, neighbors=nbr, triangles=triangles)
