"""The QCN data model, JSON serialization, and a brute-force scenario oracle.

Edges are stored upper-triangular; reading or writing (j, i) goes through
the inverse view of (i, j).  The scenario enumerator is an exactness
oracle for small instances, guarded so it cannot be misused at scale.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .algebra import Calculus, Relation, load_calculus

UNIVERSAL_UNKNOWN = 0
UNIVERSAL_CONFIRMED = 1
UNIVERSAL_RULED_OUT = 2

_BRUTE_FORCE_GUARDS = {"ia": 8, "rcc8": 8, "point": 10}


class NetworkError(Exception):
    pass


@dataclass(frozen=True)
class Scenario:
    """One basic relation per edge (i, j), i < j, in edge-index order."""

    assignment: tuple[int, ...]


class Qcn:
    """A qualitative constraint network over ``n`` variables.

    Per edge the learner's knowledge is a candidate set (primitives not
    yet rejected), a confirmed set (primitives the oracle affirmed), and
    a tri-state universal-check flag used by the incomplete-scenario case.
    """

    def __init__(self, calc: Calculus, n: int, names: list[str] | None = None):
        if n < 2:
            raise NetworkError(f"a QCN needs at least 2 variables, got {n}")
        if names is not None and len(names) != n:
            raise NetworkError(f"{len(names)} names for {n} variables")
        self.calc = calc
        self.n = n
        self.names = list(names) if names is not None else None
        m = n * (n - 1) // 2
        u = calc.universal
        self.candidates: list[Relation] = [u] * m
        self.confirmed: list[Relation] = [0] * m
        self.universal_checked: list[int] = [UNIVERSAL_UNKNOWN] * m

    # -- edge indexing -------------------------------------------------

    def edge_index(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        if i == j or not 0 <= i < self.n or not 0 <= j < self.n:
            raise NetworkError(f"bad edge ({i}, {j}) for n={self.n}")
        # offset of row i in the upper triangle, then column j
        return i * (2 * self.n - i - 1) // 2 + (j - i - 1)

    def edges(self):
        for i in range(self.n):
            for j in range(i + 1, self.n):
                yield i, j

    def get(self, i: int, j: int) -> Relation:
        """Candidate set on (i, j); (j, i) returns the inverse view."""
        r = self.candidates[self.edge_index(i, j)]
        return r if i < j else self.calc.inverse(r)

    def set(self, i: int, j: int, r: Relation) -> None:
        if i > j:
            i, j, r = j, i, self.calc.inverse(r)
        e = self.edge_index(i, j)
        self.candidates[e] = r
        self.confirmed[e] &= r

    def get_confirmed(self, i: int, j: int) -> Relation:
        r = self.confirmed[self.edge_index(i, j)]
        return r if i < j else self.calc.inverse(r)

    def copy(self) -> "Qcn":
        other = Qcn.__new__(Qcn)
        other.calc = self.calc
        other.n = self.n
        other.names = list(self.names) if self.names is not None else None
        other.candidates = self.candidates.copy()
        other.confirmed = self.confirmed.copy()
        other.universal_checked = self.universal_checked.copy()
        return other

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Qcn)
            and self.calc.name == other.calc.name
            and self.n == other.n
            and self.candidates == other.candidates
            and self.confirmed == other.confirmed
            and self.universal_checked == other.universal_checked
        )

    def is_collapsed(self) -> bool:
        return any(c == 0 for c in self.candidates)


def new_universal(calc: Calculus, n: int, names: list[str] | None = None) -> Qcn:
    """A complete network where every edge is the universal relation."""
    return Qcn(calc, n, names)


# -- brute-force scenario oracle --------------------------------------


def enumerate_scenarios(q: Qcn, limit: int | None = None) -> list[Scenario]:
    """All assignments of one primitive per edge where every triangle
    respects composition, up to ``limit``.

    Exhaustive search: guarded to small n so the result is exact.
    """
    guard = _BRUTE_FORCE_GUARDS.get(q.calc.name, 8 if q.calc.p > 4 else 10)
    if q.n > guard:
        raise NetworkError(
            f"brute-force enumeration refused: n={q.n} exceeds the guard "
            f"({guard}) for calculus {q.calc.name!r}"
        )
    calc = q.calc
    n = q.n
    # grid[i][j] holds the committed primitive bit for i < j
    grid = [[0] * n for _ in range(n)]
    order = [(i, j) for j in range(n) for i in range(j)]
    out: list[Scenario] = []

    def consistent(i: int, j: int, bit: int) -> bool:
        # only triangles whose other two edges are already placed:
        # (k, j) exists for k < i, and (i, k) for any k < j
        for k in range(i):
            a, b = (i, k) if i < k else (k, i)
            r_ik = grid[a][b] if i < k else calc.inverse(grid[a][b])
            if bit & calc.compose(r_ik, grid[k][j]) == 0:
                return False
        return True

    def extend(pos: int) -> bool:
        if pos == len(order):
            out.append(Scenario(tuple(
                (grid[i][j]).bit_length() - 1 for i, j in q.edges()
            )))
            return limit is not None and len(out) >= limit
        i, j = order[pos]
        cands = q.candidates[q.edge_index(i, j)]
        rest = cands
        while rest:
            low = rest & -rest
            rest ^= low
            if consistent(i, j, low):
                grid[i][j] = low
                if extend(pos + 1):
                    return True
        grid[i][j] = 0
        return False

    extend(0)
    return out


def scenario_consistent(q: Qcn, s: Scenario) -> bool:
    """Independent triangle-by-triangle recheck of a scenario."""
    calc = q.calc
    prim = {}
    for e, (i, j) in enumerate(q.edges()):
        b = s.assignment[e]
        if not q.candidates[e] >> b & 1:
            return False
        prim[(i, j)] = 1 << b
        prim[(j, i)] = calc.inverse(1 << b)
    for i in range(q.n):
        for j in range(i + 1, q.n):
            for k in range(q.n):
                if k in (i, j):
                    continue
                if prim[(i, j)] & calc.compose(prim[(i, k)], prim[(k, j)]) == 0:
                    return False
    return True


# -- serialization -----------------------------------------------------


def serialize(q: Qcn) -> str:
    constraints = []
    for e, (i, j) in enumerate(q.edges()):
        if q.candidates[e] == q.calc.universal and q.confirmed[e] == 0 \
                and q.universal_checked[e] == UNIVERSAL_UNKNOWN:
            continue
        entry: dict = {"i": i, "j": j, "rels": q.calc.symbols(q.candidates[e])}
        if q.confirmed[e]:
            entry["confirmed"] = q.calc.symbols(q.confirmed[e])
        if q.universal_checked[e] != UNIVERSAL_UNKNOWN:
            entry["universal_checked"] = q.universal_checked[e]
        constraints.append(entry)
    doc = {"calculus": q.calc.name, "n": q.n, "constraints": constraints}
    if q.names is not None:
        doc["names"] = q.names
    return json.dumps(doc, indent=1)


def parse(text: str) -> Qcn:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise NetworkError(f"not valid JSON: {exc}") from exc
    try:
        calc = load_calculus(doc["calculus"])
        q = Qcn(calc, int(doc["n"]), doc.get("names"))
        for entry in doc.get("constraints", []):
            i, j = int(entry["i"]), int(entry["j"])
            e = q.edge_index(i, j)
            rels = calc.mask(entry["rels"])
            if i > j:
                rels = calc.inverse(rels)
            q.candidates[e] = rels
            if "confirmed" in entry:
                conf = calc.mask(entry["confirmed"])
                if i > j:
                    conf = calc.inverse(conf)
                if conf & ~rels:
                    raise NetworkError(f"confirmed set exceeds candidates on edge ({i}, {j})")
                q.confirmed[e] = conf
            if "universal_checked" in entry:
                q.universal_checked[e] = int(entry["universal_checked"])
    except (KeyError, TypeError, ValueError) as exc:
        raise NetworkError(f"malformed network document: {exc}") from exc
    return q
