"""``secdom`` command line: generate | build | solve | verify | oracle | bench.

Exit codes: 0 success (or the property holds), 1 the property fails,
2 usage or input error, 3 internal invariant breach.
"""
from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path

from . import __version__
from .certify import GuardSet, OracleCapExceeded, Property, oracle_minimum, verify
from .formulations import DisconnectedGraphError, FormulationKind, build
from .graphs import FamilySpec, Graph, GraphFormatError, random_connected_graph, read_graph
from .graphs import to_edge_list
from .model import emit_lp, emit_mps
from .solve import STATUS_OPTIMAL, IncumbentError, bnb_solve, property_of

EXIT_OK, EXIT_FAILS, EXIT_USAGE, EXIT_BREACH = 0, 1, 2, 3
KIND_CHOICES = ("burger", "improved", "cdom", "scdom")
PROPERTY_CHOICES = tuple(p.value for p in Property) + ("secure", "scdom", "cdom", "dom")
RANDOM_EDGE_PROB = 0.3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    time_limit: float = 600.0
    node_limit: int | None = None
    workers: int = 1
    seed: int = 0
    out: str | None = None

    def __post_init__(self):
        if self.time_limit <= 0:
            raise UsageError("--time-limit must be positive")
        if self.node_limit is not None and self.node_limit <= 0:
            raise UsageError("--node-limit must be positive")
        if self.workers <= 0:
            raise UsageError("--workers must be positive")


@dataclass
class BenchRecord:
    family: str
    k: int
    kind: str
    n: int
    m: int
    n_binary: int
    n_continuous: int
    n_constraints: int
    status: str
    objective: int | None
    wall_time: float
    nodes: int
    message: str = ""

    FIELDS = ("family", "k", "kind", "n", "m", "n_binary", "n_continuous", "n_constraints",
              "status", "objective", "wall_time", "nodes", "message")

    def row(self) -> list:
        return [getattr(self, f) if getattr(self, f) is not None else "" for f in self.FIELDS]


# -- helpers -----------------------------------------------------------------


def _family_graph(family: str, k: int, seed: int) -> Graph:
    if family == "random":
        if k < 1:
            raise ValueError("random: k (vertex count) must be >= 1")
        g = random_connected_graph(k, RANDOM_EDGE_PROB, random.Random(seed * 1000 + k))
        return Graph.from_edges(g.n, g.edges, name=f"random{k}s{seed}")
    return FamilySpec(family, k).build()


def _load_graph(args) -> Graph:
    if getattr(args, "graph", None):
        return read_graph(args.graph)
    if args.family is None or args.k is None:
        raise UsageError("give a graph file or --family with --k")
    return _family_graph(args.family, int(args.k), args.seed)


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _kind(text: str) -> FormulationKind:
    return FormulationKind.parse(text)


def _parse_ks(text: str) -> list[int]:
    ks: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part:
            lo, hi = part.split("-", 1)
            ks.extend(range(int(lo), int(hi) + 1))
        elif part:
            ks.append(int(part))
    return ks


def _solve_record(g: Graph, kind: FormulationKind, cfg: RunConfig) -> dict:
    model = build(g, kind)
    rep = bnb_solve(model, time_limit=cfg.time_limit, node_limit=cfg.node_limit)
    if rep.status == STATUS_OPTIMAL:
        if rep.incumbent is None:
            raise IncumbentError("optimal report without a guard set")
        cert = verify(g, rep.incumbent, property_of(kind))
        if not cert.holds:
            raise IncumbentError(f"optimal incumbent fails: {cert.describe()}")
    st = model.stats()
    return {
        "graph": g.name, "n": g.n, "m": g.m, "kind": kind.value,
        "n_binary": st.n_binary, "n_continuous": st.n_continuous,
        "n_constraints": st.n_constraints,
        "status": rep.status, "objective": rep.best_objective,
        "lower_bound": rep.lower_bound, "nodes": rep.nodes_explored,
        "iterations": rep.simplex_iterations, "wall_time": round(rep.wall_time, 4),
        "workers": rep.workers,
        "guards": rep.incumbent.sorted() if rep.incumbent is not None else None,
    }


# -- subcommands -------------------------------------------------------------


def cmd_generate(args) -> int:
    if args.family is None or args.k is None:
        raise UsageError("generate needs --family and --k")
    g = _family_graph(args.family, int(args.k), args.seed)
    _write(to_edge_list(g), args.out)
    return EXIT_OK


def cmd_build(args) -> int:
    g = _load_graph(args)
    model = build(g, _kind(args.kind))
    text = emit_lp(model) if args.format == "lp" else emit_mps(model)
    _write(text, args.out)
    st = model.stats()
    print(f"binary={st.n_binary} continuous={st.n_continuous} "
          f"constraints={st.n_constraints}", file=sys.stderr)
    return EXIT_OK


def cmd_solve(args) -> int:
    cfg = RunConfig(args.time_limit, args.node_limit, 1, args.seed, args.out)
    g = _load_graph(args)
    rec = _solve_record(g, _kind(args.kind), cfg)
    line = json.dumps(rec, sort_keys=True)
    print(line)
    if cfg.out:
        with open(cfg.out, "a") as fh:
            fh.write(line + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _load_graph(args)
    text = Path(args.guards).read_text()
    guards = GuardSet.loads(g, text)
    cert = verify(g, guards, args.property)
    print(cert.describe())
    return EXIT_OK if cert.holds else EXIT_FAILS


def cmd_oracle(args) -> int:
    g = _load_graph(args)
    prop = Property.parse(args.property)
    size, found = oracle_minimum(g, prop, cap=args.cap)
    print(f"{prop.value} minimum {size}: {' '.join(map(str, found.sorted()))}")
    if args.out:
        Path(args.out).write_text(found.dumps())
    return EXIT_OK


def _bench_one(task) -> BenchRecord:
    family, k, kind, cfg = task
    try:
        g = _family_graph(family, k, cfg.seed)
        rec = _solve_record(g, kind, cfg)
        return BenchRecord(family, k, kind.value, g.n, g.m, rec["n_binary"],
                           rec["n_continuous"], rec["n_constraints"], rec["status"],
                           rec["objective"] if rec["status"] == STATUS_OPTIMAL else None,
                           rec["wall_time"], rec["nodes"])
    except Exception as exc:  # a failed instance becomes a row, never aborts the sweep
        return BenchRecord(family, k, kind.value, 0, 0, 0, 0, 0, "error", None, 0.0, 0,
                           f"{type(exc).__name__}: {exc}")


def run_bench(families, ks, kinds, cfg: RunConfig) -> list[BenchRecord]:
    tasks = [(f, k, kind, cfg) for f in families for k in ks for kind in kinds]
    if cfg.workers > 1:
        with ProcessPoolExecutor(cfg.workers) as pool:
            records = list(pool.map(_bench_one, tasks))
    else:
        records = [_bench_one(t) for t in tasks]
    records.sort(key=lambda r: (r.family, r.k, r.kind))
    return records


def write_bench(records: list[BenchRecord], out: Path, time_limit: float) -> None:
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "bench.csv", "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(BenchRecord.FIELDS)
        for rec in records:
            writer.writerow(rec.row())
    with open(out / "bench.jsonl", "w") as fh:
        for rec in records:
            fh.write(json.dumps(asdict(rec), sort_keys=True) + "\n")
    series: dict[tuple[str, str], list[str]] = {}
    for rec in records:
        if rec.status == "error":
            continue
        seconds = time_limit if rec.status != STATUS_OPTIMAL else min(rec.wall_time, time_limit)
        series.setdefault((rec.family, rec.kind), []).append(f"{rec.k} {seconds:.4f}")
    for (family, kind), rows in series.items():
        (out / f"plot_{family}_{kind}.dat").write_text("# k seconds\n" + "\n".join(rows) + "\n")


def cmd_bench(args) -> int:
    cfg = RunConfig(args.time_limit, args.node_limit, args.workers, args.seed, args.out)
    families = args.family or ["square_grid"]
    ks = _parse_ks(args.k or "2-4")
    kinds = [_kind(k) for k in (args.kind or ["burger", "improved"])]
    records = run_bench(families, ks, kinds, cfg)
    write_bench(records, Path(cfg.out or "bench_out"), cfg.time_limit)
    for rec in records:
        obj = "-" if rec.objective is None else rec.objective
        print(f"{rec.family:12s} k={rec.k:<3d} {rec.kind:17s} {rec.status:10s} obj={obj} "
              f"rows={rec.n_constraints} t={rec.wall_time:.2f}s nodes={rec.nodes}")
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="secdom", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"secdom {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_args(sp, positional=True):
        if positional:
            sp.add_argument("graph", nargs="?", help="edge-list file (p n m / e u v)")
        sp.add_argument("--family", help="grid, queen, hex, torus, gp1, gp2 or random")
        sp.add_argument("--k", type=int)
        sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("generate", help="write a family graph as an edge list")
    graph_args(sp, positional=False)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_generate)

    sp = sub.add_parser("build", help="emit a formulation as LP or MPS")
    graph_args(sp)
    sp.add_argument("--kind", choices=KIND_CHOICES, default="improved")
    sp.add_argument("--format", choices=("lp", "mps"), default="lp")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("solve", help="solve a formulation by branch-and-bound")
    graph_args(sp)
    sp.add_argument("--kind", choices=KIND_CHOICES, default="improved")
    sp.add_argument("--time-limit", type=float, default=600.0)
    sp.add_argument("--node-limit", type=int)
    sp.add_argument("--out", help="append the JSON record to this file")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("verify", help="check a guard set against a property")
    graph_args(sp)
    sp.add_argument("guards", help="file with whitespace-separated vertex indices")
    sp.add_argument("--property", choices=PROPERTY_CHOICES, default="secure_dominating")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("oracle", help="exhaustive minimum for small graphs")
    graph_args(sp)
    sp.add_argument("--property", choices=PROPERTY_CHOICES, default="secure_dominating")
    sp.add_argument("--cap", type=int, help="largest vertex count to enumerate")
    sp.add_argument("--out", help="write the witness guard set here")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("bench", help="sweep families and formulations")
    sp.add_argument("--family", action="append", help="repeatable")
    sp.add_argument("--k", help="values such as 2-5 or 3,5,7")
    sp.add_argument("--kind", action="append", choices=KIND_CHOICES, help="repeatable")
    sp.add_argument("--time-limit", type=float, default=600.0)
    sp.add_argument("--node-limit", type=int)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", help="output directory (default bench_out)")
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except IncumbentError as exc:
        print(f"secdom: invariant breach: {exc}", file=sys.stderr)
        return EXIT_BREACH
    except (UsageError, GraphFormatError, DisconnectedGraphError, OracleCapExceeded,
            ValueError, OSError) as exc:
        print(f"secdom: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
