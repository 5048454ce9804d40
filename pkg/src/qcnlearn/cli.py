"""Command-line interface: gen, pc, learn, bench, td-verify, serve.

Exit codes: 0 success, 1 usage error, 2 collapse/inconsistency.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from .algebra import CalculusError, load_calculus
from .generation import GenConfig, GenerationError, generate_target_pair
from .harness import HarnessError, SweepSpec, rows_to_csv, run_sweep
from .learner import CONVERGED, LearnerConfig, LearnerError, learn
from .network import NetworkError, parse, serialize
from .oracle import OracleConfig, SimulatedOracle
from .propagation import INCONSISTENT, path_consistency
from .teaching import ConceptClass, formula_value, teaching_dimension

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COLLAPSE = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _write_out(text: str, out: str | None) -> None:
    if out is None or out == "-":
        print(text)
    else:
        Path(out).write_text(text)


def _cmd_gen(args) -> int:
    cfg = GenConfig(calculus=args.calculus, n=args.n, case=args.case,
                    p_universal=args.p_universal,
                    extra_density=args.extra_density, seed=args.seed)
    target, _ = generate_target_pair(cfg)
    _write_out(serialize(target), args.out)
    return EXIT_OK


def _cmd_pc(args) -> int:
    q = parse(Path(args.input).read_text())
    result = path_consistency(q)
    if result.status == INCONSISTENT:
        empty = next(((i, j) for e, (i, j) in enumerate(q.edges())
                      if q.candidates[e] == 0), None)
        print(f"inconsistent: edge {empty} has no remaining primitive",
              file=sys.stderr)
        return EXIT_COLLAPSE
    _write_out(serialize(q), args.out)
    return EXIT_OK


def _cmd_learn(args) -> int:
    if args.target:
        target = parse(Path(args.target).read_text())
        calc = target.calc
        n = target.n
    else:
        gen = GenConfig(calculus=args.calculus, n=args.n, case=args.case,
                        seed=args.seed)
        target, _ = generate_target_pair(gen)
        calc = load_calculus(args.calculus)
        n = args.n
    heuristic = {"pc": args.heuristic, "ppc": args.heuristic,
                 "none": "random"}[args.method]
    cfg = LearnerConfig(case=args.case, propagation=args.method,
                        heuristic=heuristic, p_yes_bias=args.p_yes,
                        seed=args.seed, mistakes_enabled=args.p_mistake > 0)
    oracle = SimulatedOracle(target, OracleConfig(p_mistake=args.p_mistake,
                                                  seed=args.seed + 1))
    result = learn(cfg, oracle, n, calc)
    stats = result.stats
    print(json.dumps({
        "status": result.status,
        "queries": stats.queries,
        "backtracks": stats.backtracks,
        "detected_mistakes": stats.detected_mistakes,
        "mistakes_injected": oracle.mistakes_injected,
        "pruned_by_pc": stats.pruned_by_pc,
        "yes_rate": round(stats.yes_rate, 6),
        "wall_time_s": round(stats.wall_time, 6),
    }, indent=1))
    if result.status != CONVERGED:
        return EXIT_COLLAPSE
    if args.out:
        _write_out(serialize(result.network), args.out)
    return EXIT_OK


def _cmd_bench(args) -> int:
    if args.spec:
        doc = json.loads(Path(args.spec).read_text())
        for key in ("cases", "p_yes", "methods"):
            if key in doc:
                doc[key] = tuple(doc[key])
        spec = SweepSpec(**doc)
    else:
        spec = SweepSpec(calculus=args.calculus, cases=tuple(args.cases),
                         n=args.n, p_yes=tuple(args.p_yes),
                         methods=tuple(args.methods), runs=args.runs,
                         p_mistake=args.p_mistake, base_seed=args.base_seed)
    if args.no_time:
        spec = dataclasses.replace(spec, record_time=False)
    rows = run_sweep(spec, workers=args.workers)
    _write_out(rows_to_csv(rows).rstrip("\n"), args.out)
    return EXIT_OK


def _cmd_td_verify(args) -> int:
    ok = True
    print(f"{'class':<12} {'n':>2} {'p':>2} {'tdim':>4} {'formula':>7} match")
    for kind in ("complete", "incomplete", "all"):
        cls = ConceptClass(kind=kind, n=args.n)
        dim = teaching_dimension(cls)
        expected = formula_value(cls)
        match = dim == expected
        ok = ok and match
        calc = load_calculus(cls.calculus)
        print(f"{kind:<12} {cls.n:>2} {calc.p:>2} {dim:>4} {expected:>7} {match}")
    return EXIT_OK if ok else EXIT_COLLAPSE


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app
    app = create_app(snapshot_dir=args.snapshot_dir, allow_cors=args.cors)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="qcnlearn",
                     description="Qualitative constraint network acquisition toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a random target network")
    gen.add_argument("--calculus", default="ia", choices=["ia", "rcc8", "point"])
    gen.add_argument("--n", type=int, default=20)
    gen.add_argument("--case", type=int, default=1, choices=[1, 2, 3])
    gen.add_argument("--p-universal", type=float, default=0.3)
    gen.add_argument("--extra-density", type=float, default=0.3)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("-o", "--out", default=None)

    pc = sub.add_parser("pc", help="close a network under path consistency")
    pc.add_argument("-i", "--input", required=True)
    pc.add_argument("-o", "--out", default=None)

    lrn = sub.add_parser("learn", help="run a simulated acquisition")
    lrn.add_argument("--target", default=None, help="target .qcn.json (else generated)")
    lrn.add_argument("--calculus", default="ia", choices=["ia", "rcc8", "point"])
    lrn.add_argument("--n", type=int, default=20)
    lrn.add_argument("--case", type=int, default=1, choices=[1, 2, 3])
    lrn.add_argument("--method", default="pc", choices=["pc", "ppc", "none"])
    lrn.add_argument("--heuristic", default="random",
                     choices=["random", "cardinality", "weight",
                              "cardinality_descending"])
    lrn.add_argument("--p-yes", type=float, default=0.0)
    lrn.add_argument("--p-mistake", type=float, default=0.0)
    lrn.add_argument("--seed", type=int, default=0)
    lrn.add_argument("-o", "--out", default=None)

    bench = sub.add_parser("bench", help="run a benchmark sweep, emit CSV")
    bench.add_argument("--spec", default=None, help="SweepSpec as JSON file")
    bench.add_argument("--calculus", default="ia", choices=["ia", "rcc8", "point"])
    bench.add_argument("--cases", type=int, nargs="+", default=[1])
    bench.add_argument("--n", type=int, default=50)
    bench.add_argument("--p-yes", type=float, nargs="+", default=[0.0])
    bench.add_argument("--methods", nargs="+", default=["naive", "pc"])
    bench.add_argument("--runs", type=int, default=10)
    bench.add_argument("--p-mistake", type=float, default=0.0)
    bench.add_argument("--base-seed", type=int, default=0)
    bench.add_argument("--workers", type=int, default=None)
    bench.add_argument("--no-time", action="store_true",
                       help="zero the time column for byte-stable output")
    bench.add_argument("-o", "--out", default=None)

    td = sub.add_parser("td-verify", help="brute-force teaching dimensions")
    td.add_argument("--n", type=int, default=3)

    srv = sub.add_parser("serve", help="start the elicitation HTTP service")
    srv.add_argument("--host", default="127.0.0.1")
    srv.add_argument("--port", type=int, default=8754)
    srv.add_argument("--cors", action="store_true")
    srv.add_argument("--snapshot-dir", default=None)

    return parser


_COMMANDS = {"gen": _cmd_gen, "pc": _cmd_pc, "learn": _cmd_learn,
             "bench": _cmd_bench, "td-verify": _cmd_td_verify,
             "serve": _cmd_serve}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except (NetworkError, CalculusError, GenerationError, LearnerError,
            HarnessError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
