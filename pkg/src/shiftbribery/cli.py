"""Command-line interface: solve, verify, generate, reduce and bench."""

from __future__ import annotations

import argparse
import csv
import io
import statistics
import sys
import time
from pathlib import Path

import networkx as nx

from . import __version__
from .decomposition import TreeDecomposition, build_tree_decomposition
from .dp import solve_cluster_dp, solve_path_dp, solve_treewidth_dp
from .election import (
    PLURALITY,
    InstanceError,
    PreconditionError,
    apply_shift,
    effective_shifts,
    shift_cost,
    verify,
    winner,
)
from .fpt import solve_via_cvd, solve_via_fvs, solve_via_partial_domination
from .generate import CLASSES, generate_instance
from .graphs import directed_path_order, is_cluster_graph, is_complete_unit, support_graph, transitive_order
from .io import FormatError, dumps_instance, load_graph, load_instance, load_set_system, read_json
from .oracle import brute_force_min_cost
from .poly import solve_complete_majority, solve_complete_plurality, solve_transitive_tournament
from .reductions import (
    reduce_ds_to_sbon_complete,
    reduce_ds_to_sbon_general,
    reduce_ktds_to_sbon,
    reduce_setcover_to_sbon_bipartite,
)

EXIT_FEASIBLE, EXIT_INFEASIBLE, EXIT_ERROR = 0, 1, 2
ORACLE_LIMIT = 24
TREEWIDTH_LIMIT = 3


class CliError(Exception):
    pass


SOLVERS = {
    "oracle": lambda inst, dec=None: brute_force_min_cost(inst),
    "complete-majority": lambda inst, dec=None: solve_complete_majority(inst),
    "complete-plurality": lambda inst, dec=None: solve_complete_plurality(inst),
    "tournament": lambda inst, dec=None: solve_transitive_tournament(inst),
    "cluster": lambda inst, dec=None: solve_cluster_dp(inst),
    "path": lambda inst, dec=None: solve_path_dp(inst),
    "treewidth": lambda inst, dec=None: solve_treewidth_dp(inst, dec),
    "fvs": lambda inst, dec=None: solve_via_fvs(inst),
    "cvd": lambda inst, dec=None: solve_via_cvd(inst),
    "partial-dom": lambda inst, dec=None: solve_via_partial_domination(inst),
}


def detect_class(instance) -> str:
    """Structural class of the network, testing the cheapest-to-solve classes first."""
    net = instance.network
    if is_complete_unit(net):
        return "complete-unit"
    if transitive_order(net) is not None and all(w == 1 for _, _, w in net.arcs):
        return "transitive-tournament"
    g = support_graph(net)
    if net.is_symmetric_unit and is_cluster_graph(g):
        return "cluster"
    if directed_path_order(net) is not None:
        return "directed-path"
    if net.is_symmetric_unit:
        if nx.is_forest(g):
            return "forest"
        width = build_tree_decomposition(g).width
        if width <= TREEWIDTH_LIMIT:
            return f"bounded-treewidth({width})"
    return "general"


def _auto_algorithm(instance, cls: str) -> str | None:
    if cls == "complete-unit":
        return "complete-plurality" if instance.rule == PLURALITY and instance.threshold is None else "complete-majority"
    if cls == "transitive-tournament":
        return "tournament"
    if cls == "cluster":
        return "cluster"
    if cls == "directed-path":
        return "path"
    if cls == "forest" or cls.startswith("bounded-treewidth"):
        return "treewidth"
    return None


def _oracle_guard(instance, limit: int) -> None:
    bits = instance.n * (instance.m - 1)
    if bits > limit:
        raise CliError(f"oracle size guard: n*(m-1) = {bits} exceeds {limit}; raise --oracle-limit to force")


def run_solver(name: str, instance, decomposition=None, oracle_limit: int = ORACLE_LIMIT):
    if name not in SOLVERS:
        raise CliError(f"unknown algorithm {name!r}")
    if name == "oracle":
        _oracle_guard(instance, oracle_limit)
    return SOLVERS[name](instance, decomposition)


def solve_auto(instance, decomposition=None, oracle_limit: int = ORACLE_LIMIT):
    cls = detect_class(instance)
    algo = _auto_algorithm(instance, cls)
    if algo is not None:
        try:
            return cls, run_solver(algo, instance, decomposition, oracle_limit)
        except PreconditionError:
            pass
    return cls, run_solver("oracle", instance, oracle_limit=oracle_limit)


def _format_stats(stats: dict) -> str:
    return ", ".join(f"{k}={v:.6f}" if isinstance(v, float) else f"{k}={v}" for k, v in sorted(stats.items()))


def cmd_solve(args) -> int:
    instance, dec = load_instance(args.instance)
    if args.decomposition:
        doc = read_json(args.decomposition)
        records = doc.get("tree_decomposition", doc) if isinstance(doc, dict) else doc
        dec = TreeDecomposition.from_records(records)
    if args.algo == "auto":
        cls, outcome = solve_auto(instance, dec, args.oracle_limit)
        print(f"class: {cls}")
    else:
        outcome = run_solver(args.algo, instance, dec, args.oracle_limit)
    print(f"algorithm: {outcome.algorithm}")
    print(f"feasible: {'yes' if outcome.feasible else 'no'}")
    if outcome.feasible:
        print(f"cost: {outcome.optimal_cost}")
        print("witness: " + ",".join(map(str, outcome.witness)))
    print(f"stats: {_format_stats(outcome.stats)}")
    return EXIT_FEASIBLE if outcome.feasible else EXIT_INFEASIBLE


def _parse_shifts(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")] if text.strip() else []
    except ValueError as exc:
        raise CliError(f"cannot parse shift vector {text!r}") from exc


def cmd_verify(args) -> int:
    instance, _ = load_instance(args.instance)
    s = _parse_shifts(args.shifts)
    cost = shift_cost(instance, s)
    eff = effective_shifts(instance, s)
    profile = apply_shift(instance, s)
    w = winner(profile, instance.rule, instance.tiebreak, instance.m)
    tops = sum(1 for r in profile.rankings if r[0] == instance.preferred)
    print(f"cost: {cost} (budget {instance.budget})")
    print("effective shifts: " + ",".join(map(str, eff)))
    print(f"winner: {'none' if w < 0 else w}")
    print(f"preferred tops: {tops}")
    if cost > instance.budget:
        print("budget exceeded")
        return EXIT_INFEASIBLE
    ok = verify(instance, s)
    print("verified" if ok else "preferred candidate does not win")
    return EXIT_FEASIBLE if ok else EXIT_INFEASIBLE


def _emit(text: str, out) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def cmd_generate(args) -> int:
    instance = generate_instance(
        args.cls,
        args.n,
        args.seed,
        m=args.m,
        budget=args.budget,
        supporter_frac=args.supporter_frac,
        cost=args.cost,
        rule=args.rule,
        width=args.width,
    )
    _emit(dumps_instance(instance), args.out)
    return EXIT_FEASIBLE


def cmd_reduce(args) -> int:
    if args.k is None:
        raise CliError("--k is required")
    if args.source_kind == "setcover":
        n, sets = load_set_system(args.source)
        record = reduce_setcover_to_sbon_bipartite(n, sets, args.k, directed=args.directed)
    else:
        graph = load_graph(args.source)
        if args.source_kind == "ds":
            record = reduce_ds_to_sbon_general(graph, args.k)
        elif args.source_kind == "ds-complete":
            record = reduce_ds_to_sbon_complete(graph, args.k)
        else:
            record = reduce_ktds_to_sbon(graph, args.k, args.t)
    _emit(dumps_instance(record.instance), args.out)
    return EXIT_FEASIBLE


BENCH_COLUMNS = ["instance", "algorithm", "feasible", "cost", "param", "states", "micros"]


def _param(stats: dict):
    for key in ("width", "p", "kappa", "alpha"):
        if key in stats:
            if key == "width" and "kappa" in stats:
                return f"w={stats['width']};kappa={stats['kappa']}"
            return f"{key}={stats[key]}"
    if "deletion_set" in stats:
        return f"k={len(stats['deletion_set'])}"
    return ""


def bench_rows(paths, algos, repeat: int = 1, oracle_limit: int = ORACLE_LIMIT):
    """Run every applicable algorithm; returns (rows, disagreements)."""
    rows = []
    problems = []
    for path in paths:
        instance, dec = load_instance(path)
        results = []
        for algo in algos:
            times = []
            outcome = None
            try:
                for _ in range(max(1, repeat)):
                    t0 = time.perf_counter()
                    outcome = run_solver(algo, instance, dec, oracle_limit)
                    times.append(time.perf_counter() - t0)
            except (PreconditionError, CliError):
                continue
            stats = outcome.stats
            rows.append(
                {
                    "instance": Path(path).name,
                    "algorithm": algo,
                    "feasible": outcome.feasible,
                    "cost": "" if outcome.optimal_cost is None else outcome.optimal_cost,
                    "param": _param(stats),
                    "states": stats.get("states", stats.get("visited", "")),
                    "micros": int(statistics.median(times) * 1e6),
                }
            )
            results.append((algo, outcome))
        keys = {(o.feasible, o.optimal_cost) for _, o in results}
        if len(keys) > 1:
            problems.append((Path(path).name, results))
    rows.sort(key=lambda r: (r["instance"], r["algorithm"]))
    return rows, problems


def _csv_text(rows) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=BENCH_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def cmd_bench(args) -> int:
    corpus = Path(args.corpus)
    if not corpus.is_dir():
        raise CliError(f"corpus {corpus} is not a directory")
    paths = sorted(corpus.glob("*.json"))
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    for a in algos:
        if a not in SOLVERS:
            raise CliError(f"unknown algorithm {a!r}")
    rows, problems = bench_rows(paths, algos, args.repeat, args.oracle_limit)
    widths = {c: max([len(c)] + [len(str(r[c])) for r in rows]) for c in BENCH_COLUMNS}
    print("  ".join(c.ljust(widths[c]) for c in BENCH_COLUMNS))
    for r in rows:
        print("  ".join(str(r[c]).ljust(widths[c]) for c in BENCH_COLUMNS))
    print(f"{len(paths)} instances, {len(rows)} rows, {len(problems)} disagreements")
    if args.csv:
        _emit(_csv_text(rows), args.csv)
    for name, results in problems:
        print(f"DISAGREEMENT on {name}:", file=sys.stderr)
        for algo, o in results:
            print(f"  {algo}: feasible={o.feasible} cost={o.optimal_cost} witness={o.witness}", file=sys.stderr)
    return EXIT_INFEASIBLE if problems else EXIT_FEASIBLE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="shiftbribery", description="Shift bribery over social networks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="find a cheapest winning bribery")
    p.add_argument("instance")
    p.add_argument("--algo", default="auto", choices=["auto", *SOLVERS])
    p.add_argument("--decomposition", help="JSON file with a tree decomposition for the treewidth DP")
    p.add_argument("--oracle-limit", type=int, default=ORACLE_LIMIT, help="max n*(m-1) for the exhaustive oracle")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a shift vector against an instance")
    p.add_argument("instance")
    p.add_argument("--shifts", required=True, help="comma-separated direct shifts, one per voter")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", help="emit a seeded random instance")
    p.add_argument("--class", dest="cls", required=True, choices=CLASSES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--m", type=int)
    p.add_argument("--budget", type=int)
    p.add_argument("--supporter-frac", type=float, default=0.25)
    p.add_argument("--cost", choices=["identity", "linear"], default="identity")
    p.add_argument("--rule", choices=["majority", "plurality"], default="majority")
    p.add_argument("--width", type=int, default=2, help="treewidth bound for --class=treewidth")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("reduce", help="build a bribery instance from a source problem")
    p.add_argument("--from", dest="source_kind", required=True, choices=["ds", "ds-complete", "setcover", "ktds"])
    p.add_argument("source", help="graph file {vertices, edges} or set system {universe, sets}")
    p.add_argument("--k", type=int)
    p.add_argument("--t", type=int, help="coverage target for ktds (default: majority)")
    p.add_argument("--directed", action="store_true", help="acyclic variant of the set-cover construction")
    p.add_argument("--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("bench", help="run algorithms over a corpus and cross-check results")
    p.add_argument("--corpus", required=True)
    p.add_argument("--algos", required=True, help="comma-separated algorithm names")
    p.add_argument("--repeat", type=int, default=1)
    p.add_argument("--csv", help="also write the report as CSV to this file ('-' for stdout)")
    p.add_argument("--oracle-limit", type=int, default=ORACLE_LIMIT)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, FormatError, InstanceError, PreconditionError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
