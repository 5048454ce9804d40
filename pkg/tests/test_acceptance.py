"""Acceptance gate: one test per criterion, one printed verdict line each.

The long-running trend checks (query reduction, heuristic ordering,
mistake recovery) are statistical claims over fixed seed sets; their
thresholds and sizes are part of the contract, not tunables.
"""

import json
import random
import time

import pytest

from qcnlearn.algebra import load_calculus
from qcnlearn.baselines import learn_conacq2, learn_naive
from qcnlearn.generation import GenConfig, generate_target_pair
from qcnlearn.harness import SweepSpec, rows_to_csv, run_sweep
from qcnlearn.learner import CONVERGED, LearnerConfig, learn, learn_with_mistakes
from qcnlearn.network import enumerate_scenarios, new_universal, parse
from qcnlearn.oracle import OracleConfig, SimulatedOracle
from qcnlearn.propagation import CONSISTENT, INCONSISTENT, path_consistency
from qcnlearn.teaching import ConceptClass, teaching_dimension


def _verdict(name: str, ok: bool, detail: str = "") -> None:
    line = f"ACCEPTANCE {name}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f" ({detail})"
    print(line)
    assert ok, line


# -- composition-table validation --------------------------------------


def test_composition_table_validation():
    ok = True
    for name in ("ia", "rcc8", "point"):
        calc = load_calculus(name)
        ident = 1 << calc.identity_id
        for b in range(calc.p):
            ok &= calc.inverse(calc.inverse(1 << b)) == 1 << b
            ok &= calc.compose(ident, 1 << b) == 1 << b
            ok &= calc.compose(1 << b, ident) == 1 << b
        for j in range(calc.p):
            for k in range(calc.p):
                lhs = calc.inverse(calc.compose(1 << j, 1 << k))
                rhs = calc.compose(calc.inverse(1 << k), calc.inverse(1 << j))
                ok &= lhs == rhs
    _verdict("composition-tables", ok, "identity, involution, converse-composition")


# -- soccer example ----------------------------------------------------


SOCCER = {
    "calculus": "ia",
    "n": 4,
    "names": ["John", "Mary", "Wendy", "Game"],
    "constraints": [
        {"i": 0, "j": 1, "rels": ["E", "S", "Si", "M"]},
        {"i": 0, "j": 3, "rels": ["O"]},
        {"i": 1, "j": 3, "rels": ["D"]},
    ],
}


def test_soccer_example():
    q = parse(json.dumps(SOCCER))
    calc = q.calc
    status = path_consistency(q).status
    john_mary = q.candidates[q.edge_index(0, 1)]
    ok = status == CONSISTENT and john_mary == calc.mask(["M"])
    _verdict("soccer-example", ok,
             f"John-Mary = {{{', '.join(calc.symbols(john_mary))}}}")


# -- PC vs brute force -------------------------------------------------


def _reference_pc(q):
    """Textbook O(n^3) fixpoint, no queue, no one-support shortcut."""
    calc = q.calc
    n = q.n
    rel = [[calc.universal] * n for _ in range(n)]
    for e, (i, j) in enumerate(q.edges()):
        rel[i][j] = q.candidates[e]
        rel[j][i] = calc.inverse(q.candidates[e])
    for i in range(n):
        rel[i][i] = 1 << calc.identity_id
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                for k in range(n):
                    if k in (i, j):
                        continue
                    new = rel[i][j] & calc.compose(rel[i][k], rel[k][j])
                    if new != rel[i][j]:
                        rel[i][j] = new
                        rel[j][i] = calc.inverse(new)
                        if new == 0:
                            return None
                        changed = True
    return [rel[i][j] for i, j in q.edges()]


def _random_dense(calc, n, rng, max_bits):
    q = new_universal(calc, n)
    for e in range(len(q.candidates)):
        bits = rng.sample(range(calc.p), rng.randrange(1, max_bits + 1))
        q.candidates[e] = sum(1 << b for b in bits)
    return q


def test_pc_brute_force_equivalence():
    rng = random.Random(2024)
    checked = 0
    ok = True
    jobs = ([("ia", rng.randrange(3, 7), 4) for _ in range(200)]
            + [("point", rng.randrange(4, 9), 2) for _ in range(200)])
    for name, n, max_bits in jobs:
        calc = load_calculus(name)
        q = _random_dense(calc, n, rng, max_bits)
        before = {s.assignment for s in enumerate_scenarios(q)}
        expected = _reference_pc(q)
        closed = q.copy()
        result = path_consistency(closed)
        if expected is None:
            ok &= result.status == INCONSISTENT
            ok &= not before  # no scenario can survive an empty edge
        else:
            ok &= result.status == CONSISTENT
            ok &= closed.candidates == expected
            after = {s.assignment for s in enumerate_scenarios(closed)}
            ok &= before == after
        checked += 1
        if not ok:
            break
    _verdict("pc-brute-force-equivalence", ok, f"{checked}/400 networks")


# -- learner convergence -----------------------------------------------


def test_learner_convergence():
    failures = []
    runs = 0
    for calculus in ("ia", "rcc8"):
        calc = load_calculus(calculus)
        for case in (1, 2, 3):
            for seed in range(30):
                target, expect = generate_target_pair(
                    GenConfig(calculus=calculus, n=20, case=case, seed=seed))
                oracle = SimulatedOracle(target, OracleConfig(seed=seed + 10_000))
                cfg = LearnerConfig(case=case, propagation="pc", seed=seed)
                result = learn(cfg, oracle, 20, calc)
                runs += 1
                if (result.status != CONVERGED
                        or result.network.candidates != expect.candidates):
                    failures.append((calculus, case, seed))
    _verdict("learner-convergence", not failures,
             f"{runs - len(failures)}/{runs} runs exact" +
             (f", failed {failures[:3]}" if failures else ""))


# -- query-reduction trend ---------------------------------------------


def test_query_reduction_trend():
    started = time.monotonic()
    calc = load_calculus("ia")
    totals = {"pc": 0, "naive": 0, "conacq2": 0}
    for seed in range(10):
        target, _ = generate_target_pair(GenConfig(calculus="ia", n=50,
                                                   case=1, seed=seed))
        def fresh_oracle():
            return SimulatedOracle(target, OracleConfig(seed=seed + 20_000))
        cfg = LearnerConfig(case=1, propagation="pc", p_yes_bias=0.0, seed=seed)
        totals["pc"] += learn(cfg, fresh_oracle(), 50, calc).stats.queries
        totals["naive"] += learn_naive(1, fresh_oracle(), 50, calc,
                                       seed=seed).stats.queries
        totals["conacq2"] += learn_conacq2(1, fresh_oracle(), 50, calc,
                                           seed=seed).stats.queries
    means = {k: v / 10 for k, v in totals.items()}
    elapsed = time.monotonic() - started
    ok = (means["pc"] <= means["naive"] / 5
          and means["pc"] <= means["conacq2"] / 3
          and elapsed < 600)
    _verdict("query-reduction-trend", ok,
             f"pc={means['pc']:.0f} naive={means['naive']:.0f} "
             f"conacq2={means['conacq2']:.0f} in {elapsed:.0f}s")


# -- heuristic ordering ------------------------------------------------


def test_heuristic_ordering():
    started = time.monotonic()
    calc = load_calculus("ia")

    def mean_queries(case, heuristic, n):
        total = 0
        for seed in range(10):
            target, _ = generate_target_pair(
                GenConfig(calculus="ia", n=n, case=case, seed=seed))
            oracle = SimulatedOracle(target, OracleConfig(seed=seed + 30_000))
            cfg = LearnerConfig(case=case, propagation="pc",
                                heuristic=heuristic, p_yes_bias=0.0, seed=seed)
            result = learn(cfg, oracle, n, calc)
            assert result.status == CONVERGED
            total += result.stats.queries
        return total / 10

    case1_plain = mean_queries(1, "random", 30)
    case1_desc = mean_queries(1, "cardinality_descending", 30)
    case3_plain = mean_queries(3, "random", 20)
    case3_card = mean_queries(3, "cardinality", 20)
    elapsed = time.monotonic() - started
    ok = case1_desc < case1_plain and case3_card < case3_plain and elapsed < 900
    _verdict("heuristic-ordering", ok,
             f"case1 desc {case1_desc:.0f} < random {case1_plain:.0f}; "
             f"case3 card {case3_card:.0f} < random {case3_plain:.0f}; {elapsed:.0f}s")


# -- mistake recovery --------------------------------------------------


def test_mistake_recovery():
    started = time.monotonic()
    calc = load_calculus("ia")
    pc_q, bt_q = [], []
    exact = True
    for seed in range(20):
        target, expect = generate_target_pair(
            GenConfig(calculus="ia", n=30, case=1, seed=seed))

        oracle = SimulatedOracle(target, OracleConfig(p_mistake=0.02,
                                                      seed=seed + 100))
        cfg = LearnerConfig(case=1, propagation="pc", seed=seed)
        r_pc = learn_with_mistakes(cfg, oracle, 30, calc)
        exact &= (r_pc.status == CONVERGED
                  and r_pc.network.candidates == expect.candidates)
        pc_q.append(r_pc.stats.queries)

        oracle = SimulatedOracle(target, OracleConfig(p_mistake=0.02,
                                                      seed=seed + 100))
        r_bt = learn_naive(1, oracle, 30, calc, seed=seed, mistakes_enabled=True)
        exact &= (r_bt.status == CONVERGED
                  and r_bt.network.candidates == expect.candidates)
        bt_q.append(r_bt.stats.queries)
    mean_pc = sum(pc_q) / len(pc_q)
    mean_bt = sum(bt_q) / len(bt_q)
    elapsed = time.monotonic() - started
    ok = exact and mean_pc < mean_bt / 5 and elapsed < 600
    _verdict("mistake-recovery", ok,
             f"all-exact={exact} pc={mean_pc:.0f} bt={mean_bt:.0f} "
             f"ratio={mean_bt / mean_pc:.1f}x in {elapsed:.0f}s")


# -- teaching dimension ------------------------------------------------


def test_teaching_dimension_values():
    dims = {kind: teaching_dimension(ConceptClass(kind=kind))
            for kind in ("complete", "incomplete", "all")}
    ok = dims == {"complete": 3, "incomplete": 6, "all": 9}
    _verdict("teaching-dimension", ok, str(dims))


# -- bench determinism -------------------------------------------------


def test_bench_determinism():
    spec = SweepSpec(calculus="ia", cases=(1,), n=8, p_yes=(0.0, 0.5),
                     methods=("naive", "conacq2", "pc", "pc-card-desc"),
                     runs=3, base_seed=42, record_time=False)
    a = rows_to_csv(run_sweep(spec))
    b = rows_to_csv(run_sweep(spec))
    ok = a == b and len(a.splitlines()) == 1 + 2 * 4 * 3
    _verdict("bench-determinism", ok, f"{len(a.splitlines()) - 1} identical rows")
