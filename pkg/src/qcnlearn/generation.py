"""Random target-network generation for the three learning cases.

Case 1 realizes a complete scenario from random numeric intervals (or 1-D
regions for RCC8), so the target is consistent by construction.  Case 2
relaxes edges of a case-1 scenario to the universal relation.  Case 3
augments each singleton with extra primitives and closes the result under
path consistency.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import Calculus, load_calculus
from .network import Qcn, new_universal
from .propagation import path_consistency


class GenerationError(Exception):
    pass


@dataclass(frozen=True)
class GenConfig:
    calculus: str = "ia"
    n: int = 20
    case: int = 1
    p_universal: float = 0.3     # case 2 only
    extra_density: float = 0.3   # case 3 only
    seed: int = 0

    def validate(self) -> None:
        if self.n < 2:
            raise GenerationError(f"n must be >= 2, got {self.n}")
        if self.case not in (1, 2, 3):
            raise GenerationError(f"case must be 1, 2 or 3, got {self.case}")
        if not 0.0 <= self.p_universal <= 1.0:
            raise GenerationError(f"p_universal out of [0,1]: {self.p_universal}")
        if not 0.0 < self.extra_density <= 1.0 and self.case == 3:
            raise GenerationError(f"extra_density out of (0,1]: {self.extra_density}")


def relation_from_intervals(x: tuple[int, int], y: tuple[int, int]) -> str:
    """The unique Allen primitive between two intervals, by endpoint comparison."""
    xs, xe = x
    ys, ye = y
    if xs >= xe or ys >= ye:
        raise GenerationError(f"degenerate interval in {x}, {y}")
    if xs == ys and xe == ye:
        return "E"
    if xe < ys:
        return "P"
    if ye < xs:
        return "Pi"
    if xe == ys:
        return "M"
    if ye == xs:
        return "Mi"
    if xs == ys:
        return "S" if xe < ye else "Si"
    if xe == ye:
        return "F" if xs > ys else "Fi"
    if ys < xs and xe < ye:
        return "D"
    if xs < ys and ye < xe:
        return "Di"
    return "O" if xs < ys else "Oi"


def relation_from_regions(x: tuple[int, int], y: tuple[int, int]) -> str:
    """RCC8 primitive between two closed 1-D interval regions."""
    xs, xe = x
    ys, ye = y
    if xs >= xe or ys >= ye:
        raise GenerationError(f"degenerate region in {x}, {y}")
    if (xs, xe) == (ys, ye):
        return "EQ"
    if xe < ys or ye < xs:
        return "DC"
    if xe == ys or ye == xs:
        return "EC"
    if ys <= xs and xe <= ye:
        return "TPP" if (xs == ys or xe == ye) else "NTPP"
    if xs <= ys and ye <= xe:
        return "TPPi" if (xs == ys or xe == ye) else "NTPPi"
    return "PO"


_EXTRACTORS = {"ia": relation_from_intervals, "rcc8": relation_from_regions}


def _random_interval(rng: random.Random, span: int) -> tuple[int, int]:
    while True:
        a = rng.randrange(span)
        b = rng.randrange(span)
        if a != b:
            return (a, b) if a < b else (b, a)


def generate_scenario(cfg: GenConfig, calc: Calculus,
                      rng: random.Random) -> tuple[Qcn, list[tuple[int, int]]]:
    """A complete singleton network realized by random intervals/regions."""
    if calc.name == "point":
        # points modelled as unit intervals on a shared line
        points = [rng.randrange(4 * cfg.n) for _ in range(cfg.n)]
        q = new_universal(calc, cfg.n)
        for i, j in q.edges():
            sym = "<" if points[i] < points[j] else (">" if points[i] > points[j] else "=")
            q.set(i, j, calc.mask([sym]))
        return q, [(p, p + 1) for p in points]
    try:
        extract = _EXTRACTORS[calc.name]
    except KeyError:
        raise GenerationError(f"no scenario generator for calculus {calc.name!r}")
    # small integer endpoints so ties (E/M/S/F, EC/TPP/EQ) actually occur
    intervals = [_random_interval(rng, 4 * cfg.n) for _ in range(cfg.n)]
    q = new_universal(calc, cfg.n)
    for i, j in q.edges():
        q.set(i, j, calc.mask([extract(intervals[i], intervals[j])]))
    return q, intervals


def generate_target_pair(cfg: GenConfig) -> tuple[Qcn, Qcn]:
    """(oracle target, convergence target) for the configured case.

    The two coincide except in case 3, where membership queries are
    answered against the raw augmented network while the learner's
    convergence point is its path-consistent closure.
    """
    cfg.validate()
    calc = load_calculus(cfg.calculus)
    rng = random.Random(cfg.seed)
    q, _ = generate_scenario(cfg, calc, rng)

    if cfg.case == 1:
        return q, q

    if cfg.case == 2:
        for e in range(len(q.candidates)):
            if rng.random() < cfg.p_universal:
                q.candidates[e] = calc.universal
        return q, q

    # case 3: widen each singleton, then close under PC
    p = calc.p
    for e in range(len(q.candidates)):
        r = q.candidates[e]
        for b in range(p):
            if not r >> b & 1 and rng.random() < cfg.extra_density:
                r |= 1 << b
        q.candidates[e] = r
    closed = q.copy()
    result = path_consistency(closed)
    if result.status != "consistent":
        raise GenerationError("case-3 closure collapsed; generator bug")
    return q, closed


def generate_target(cfg: GenConfig) -> Qcn:
    """The learner's convergence target (case 3: PC-closed)."""
    return generate_target_pair(cfg)[1]
