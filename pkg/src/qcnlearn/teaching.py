"""Brute-force teaching dimension on tiny point-algebra concept classes.

A concept labels every membership instance (edge, primitive) with
yes/no.  The teaching dimension of a class is the size of the smallest
instance set that pins down its hardest concept against all others.
Everything here is exhaustive and guarded to n <= 3, p <= 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .algebra import Calculus, load_calculus

KINDS = ("complete", "incomplete", "all")


class TeachingError(Exception):
    pass


@dataclass(frozen=True)
class ConceptClass:
    kind: str
    calculus: str = "point"
    n: int = 3
    require_consistent: bool = False

    def validate(self) -> Calculus:
        if self.kind not in KINDS:
            raise TeachingError(f"unknown concept class kind {self.kind!r}")
        calc = load_calculus(self.calculus)
        if self.n > 3 or calc.p > 3:
            raise TeachingError(
                f"brute force guarded to n <= 3 and p <= 3, got n={self.n}, p={calc.p}"
            )
        if self.n < 2:
            raise TeachingError(f"n must be >= 2, got {self.n}")
        return calc


@dataclass(frozen=True)
class Concept:
    """Labels over the instance space, packed LSB-first as a bitmask."""

    labels: int
    edge_relations: tuple[int, ...]  # relation bitmask per edge, for reporting


def instance_space(cls: ConceptClass) -> list[tuple[int, int, int]]:
    """All (i, j, b) membership instances, |X| = n(n-1)p/2."""
    calc = cls.validate()
    return [(i, j, b)
            for i in range(cls.n) for j in range(i + 1, cls.n)
            for b in range(calc.p)]


def _concept_from_edges(rels: tuple[int, ...], p: int) -> Concept:
    labels = 0
    pos = 0
    for r in rels:
        for b in range(p):
            if r >> b & 1:
                labels |= 1 << pos
            pos += 1
    return Concept(labels, rels)


def enumerate_concepts(cls: ConceptClass) -> list[Concept]:
    """Every representable concept of the class, duplicate-free."""
    calc = cls.validate()
    p = calc.p
    m = cls.n * (cls.n - 1) // 2
    singles = [1 << b for b in range(p)]

    if cls.kind == "complete":
        per_edge = singles
    elif cls.kind == "incomplete":
        per_edge = singles + [calc.universal]
    else:
        per_edge = [r for r in range(1, 1 << p)]

    concepts = [_concept_from_edges(rels, p) for rels in product(per_edge, repeat=m)]
    if cls.kind == "complete" and cls.require_consistent:
        from .network import Scenario, new_universal, scenario_consistent
        q = new_universal(calc, cls.n)
        concepts = [
            c for c in concepts
            if scenario_consistent(q, Scenario(tuple(r.bit_length() - 1
                                                     for r in c.edge_relations)))
        ]
    return concepts


def minimal_teaching_set(cls: ConceptClass, concept: Concept,
                         concepts: list[Concept] | None = None) -> list[tuple[int, int, int]]:
    """A smallest instance set on which no other concept agrees."""
    space = instance_space(cls)
    if concepts is None:
        concepts = enumerate_concepts(cls)
    others = [c.labels for c in concepts if c.labels != concept.labels]
    for size in range(len(space) + 1):
        for combo in combinations(range(len(space)), size):
            mask = 0
            for idx in combo:
                mask |= 1 << idx
            if all((concept.labels ^ o) & mask for o in others):
                return [space[idx] for idx in combo]
    raise TeachingError("concept indistinguishable within its class")  # unreachable


def verify_teaching_set(cls: ConceptClass, concept: Concept,
                        instances: list[tuple[int, int, int]]) -> bool:
    """Post-hoc check that the set really distinguishes the concept."""
    space = instance_space(cls)
    mask = 0
    for inst in instances:
        mask |= 1 << space.index(inst)
    return all((concept.labels ^ c.labels) & mask
               for c in enumerate_concepts(cls) if c.labels != concept.labels)


def teaching_dimension(cls: ConceptClass) -> int:
    """Max over concepts of the minimum distinguishing-set size.

    Rather than searching subsets per concept, every subset of the
    instance space is scanned once: bucketing concepts by their label
    projection onto the subset tells, in one pass, which concepts that
    subset teaches.
    """
    space = instance_space(cls)
    concepts = enumerate_concepts(cls)
    best = {c.labels: len(space) for c in concepts}
    subsets = sorted(range(1 << len(space)), key=lambda s: s.bit_count())
    for mask in subsets:
        size = mask.bit_count()
        buckets: dict[int, list[int]] = {}
        for c in concepts:
            buckets.setdefault(c.labels & mask, []).append(c.labels)
        for group in buckets.values():
            if len(group) == 1 and size < best[group[0]]:
                best[group[0]] = size
    return max(best.values())


def formula_value(cls: ConceptClass) -> int:
    """The closed-form dimension each class is expected to hit."""
    calc = cls.validate()
    n = cls.n
    if cls.kind == "complete":
        return n * (n - 1) // 2
    if cls.kind == "incomplete":
        return n * (n - 1)
    return n * (n - 1) * calc.p // 2
