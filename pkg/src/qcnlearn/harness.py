"""Benchmark sweeps over (case, method, p_yes) cells, emitted as CSV.

Every cell/run gets a seed derived by hashing the base seed with the
cell coordinates, so the sweep is deterministic and embarrassingly
parallel; rows are sorted canonically before emission so the worker
pool never influences the output bytes.  Wall time is the one
nondeterministic column and can be suppressed for byte-stable output.
"""

from __future__ import annotations

import csv
import hashlib
import io
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields

from .algebra import load_calculus
from .baselines import learn_conacq2, learn_naive
from .generation import GenConfig, generate_target_pair
from .learner import CONVERGED, LearnerConfig, learn
from .oracle import OracleConfig, SimulatedOracle

METHODS = ("naive", "conacq2", "pc", "pc-card", "pc-weight", "pc-card-desc",
           "ppc", "ppc-card", "ppc-weight", "ppc-card-desc")

_HEURISTIC_SUFFIX = {"": "random", "card": "cardinality", "weight": "weight",
                     "card-desc": "cardinality_descending"}


class HarnessError(Exception):
    pass


@dataclass(frozen=True)
class SweepSpec:
    calculus: str = "ia"
    cases: tuple[int, ...] = (1,)
    n: int = 50
    p_yes: tuple[float, ...] = (0.0,)
    methods: tuple[str, ...] = ("naive", "pc")
    runs: int = 10
    p_mistake: float = 0.0
    p_universal: float = 0.3
    extra_density: float = 0.3
    base_seed: int = 0
    record_time: bool = True

    def validate(self) -> None:
        for m in self.methods:
            if m not in METHODS:
                raise HarnessError(f"unknown method {m!r}")
        for c in self.cases:
            if c not in (1, 2, 3):
                raise HarnessError(f"bad case {c}")
            if c != 2 and any(m.startswith("ppc") for m in self.methods):
                raise HarnessError("ppc methods are valid only for case 2")
        if self.runs < 1:
            raise HarnessError("runs must be >= 1")


@dataclass
class ResultRow:
    case: int
    calculus: str
    n: int
    p_yes: float
    method: str
    run_index: int
    seed: int
    queries: int
    time_ms: float
    mistakes_injected: int
    mistakes_detected: int
    backtracks: int
    yes_rate_observed: float
    converged: bool


def _derive_seed(base_seed: int, *parts) -> int:
    text = "|".join(str(p) for p in (base_seed,) + parts)
    return int.from_bytes(hashlib.sha256(text.encode()).digest()[:8], "big")


def _method_config(method: str, case: int, p_yes: float, seed: int,
                   mistakes: bool) -> LearnerConfig:
    prop, _, suffix = method.partition("-")
    return LearnerConfig(case=case, propagation=prop,
                        heuristic=_HEURISTIC_SUFFIX[suffix],
                        p_yes_bias=p_yes, seed=seed, mistakes_enabled=mistakes)


def run_cell(spec: SweepSpec, case: int, p_yes: float, method: str,
             run_index: int) -> ResultRow:
    """One (cell, run): fresh target, fresh oracle, one learner run."""
    target_seed = _derive_seed(spec.base_seed, "target", spec.calculus,
                               spec.n, case, run_index)
    run_seed = _derive_seed(spec.base_seed, "run", spec.calculus, spec.n,
                            case, method, p_yes, run_index)
    gen = GenConfig(calculus=spec.calculus, n=spec.n, case=case,
                    p_universal=spec.p_universal,
                    extra_density=spec.extra_density, seed=target_seed)
    ask_target, expect = generate_target_pair(gen)
    calc = load_calculus(spec.calculus)
    oracle = SimulatedOracle(ask_target, OracleConfig(
        p_mistake=spec.p_mistake, seed=run_seed + 1))
    mistakes = spec.p_mistake > 0

    if method == "naive":
        result = learn_naive(case, oracle, spec.n, calc, seed=run_seed,
                             p_yes_bias=p_yes, mistakes_enabled=mistakes)
    elif method == "conacq2":
        result = learn_conacq2(case, oracle, spec.n, calc, seed=run_seed,
                               p_yes_bias=p_yes)
    else:
        cfg = _method_config(method, case, p_yes, run_seed, mistakes)
        result = learn(cfg, oracle, spec.n, calc)

    # propagation-free methods stop at the answers themselves, which in
    # case 3 is the raw target rather than its path-consistent closure
    expected = (ask_target if case == 3 and method in ("naive", "conacq2")
                else expect)
    converged = (result.status == CONVERGED and result.network is not None
                 and result.network.candidates == expected.candidates)
    stats = result.stats
    return ResultRow(
        case=case, calculus=spec.calculus, n=spec.n, p_yes=p_yes,
        method=method, run_index=run_index, seed=run_seed,
        queries=stats.queries,
        time_ms=round(stats.wall_time * 1000.0, 3) if spec.record_time else 0.0,
        mistakes_injected=oracle.mistakes_injected,
        mistakes_detected=stats.detected_mistakes,
        backtracks=stats.backtracks,
        yes_rate_observed=round(stats.yes_rate, 6),
        converged=converged,
    )


def _run_cell_args(args) -> ResultRow:
    return run_cell(*args)


def run_sweep(spec: SweepSpec, workers: int | None = None) -> list[ResultRow]:
    """All cells × runs, canonically sorted regardless of worker count."""
    spec.validate()
    cells = [(spec, case, p_yes, method, run)
             for case in spec.cases
             for p_yes in spec.p_yes
             for method in spec.methods
             for run in range(spec.runs)]
    if workers is None:
        workers = int(os.environ.get("QCNLEARN_WORKERS", "0")) or 1
    if workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_run_cell_args, cells, chunksize=1))
    else:
        rows = [run_cell(*c) for c in cells]
    rows.sort(key=lambda r: (r.case, r.calculus, r.n, r.p_yes, r.method, r.run_index))
    return rows


def rows_to_csv(rows: list[ResultRow]) -> str:
    names = [f.name for f in fields(ResultRow)]
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(names)
    for row in rows:
        writer.writerow([getattr(row, name) for name in names])
    return out.getvalue()
