"""Command-line entry point: ``degstar <subcommand> ...``.

Exit codes: 0 valid/success, 1 violated/failure (witness in the report),
2 usage or input error.  Reports are JSON (sorted keys) by default and always
carry the tool version, the seed and the parsed configuration.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import asdict, dataclass, field

from degstar import __version__, discharging, lll, lowerbound, oracles, reducer, verifiers
from degstar.embedding import EmbeddingError, euler_genus, parse_rotation_system
from degstar.graph import GraphError, parse_edge_list
from degstar.lists import ListAssignment
from degstar.orientation import Orientation, certify, format_orientation

CHECKS = {
    "proper": verifiers.is_proper,
    "acyclic": verifiers.is_acyclic,
    "star": verifiers.is_star,
    "degenerate": verifiers.is_degenerate,
    "degenerate_star": verifiers.is_degenerate_star,
    "distance_two": verifiers.is_distance_two,
}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    inputs: dict = field(default_factory=dict)
    seed: int = 0
    options: dict = field(default_factory=dict)
    format: str = "json"


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="degstar", description="Degenerate and star coloring toolkit.")
    p.add_argument("--version", action="version", version=f"degstar {__version__}")
    p.add_argument("--format", choices=("json", "text"), default="json")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check a coloring against one or more coloring notions")
    v.add_argument("graph")
    v.add_argument("--coloring", required=True)
    v.add_argument("--kind", choices=sorted(CHECKS) + ["all"], default="degenerate_star")
    v.add_argument("--mode", choices=("exhaustive", "restricted"), default="exhaustive")
    v.add_argument("--max-classes", type=int, default=verifiers.DEFAULT_MAX_CLASSES)
    v.add_argument("--threshold", type=int, help="also require distinct colors around vertices of at most this degree")

    c = sub.add_parser("certify", help="orientation certificate for a star coloring")
    c.add_argument("graph")
    c.add_argument("--coloring", required=True)

    col = sub.add_parser("color", help="construct a list coloring")
    col.add_argument("graph")
    col.add_argument("--strategy", choices=("lll", "genus"), required=True)
    col.add_argument("--genus", type=int)
    col.add_argument("--embedding")
    col.add_argument("--palette", type=int, help="uniform lists {0..palette-1}")
    col.add_argument("--max-rounds", "--budget", dest="max_rounds", type=int)
    col.add_argument("--seed", type=int, default=0)

    r = sub.add_parser("reduce", help="reduce to an irreducible core and print the trace")
    r.add_argument("graph")

    a = sub.add_parser("audit", help="run the discharging audit on an embedded graph")
    a.add_argument("--embedding", required=True)
    a.add_argument("--specials", help="file with whitespace-separated special vertices")
    a.add_argument("--verbose", action="store_true")

    lb = sub.add_parser("lowerbound", help="random-graph lower-bound experiment")
    lb.add_argument("--n", required=True, help="comma-separated vertex counts")
    lb.add_argument("--trials", type=int, default=10)
    lb.add_argument("--seed", type=int, default=0)
    lb.add_argument("--family", choices=("p3", "p4", "c4", "k13"), default="p4")
    lb.add_argument("--p", type=float, help="override the edge probability")
    lb.add_argument("--exact-max-n", type=int, default=12)

    o = sub.add_parser("oracle", help="exact chromatic number of a small graph")
    o.add_argument("graph")
    o.add_argument("--kind", choices=oracles.KINDS, required=True)
    o.add_argument("--max-vertices", type=int, default=oracles.DEFAULT_MAX_VERTICES)
    return p


def parse_args(argv=None) -> RunConfig:
    ns = _parser().parse_args(argv)
    raw = vars(ns)
    command = raw.pop("command")
    fmt = raw.pop("format")
    seed = raw.pop("seed", 0)
    inputs = {k: raw.pop(k) for k in ("graph", "coloring", "embedding", "specials") if raw.get(k) is not None}
    for k in ("graph", "coloring", "embedding", "specials"):
        raw.pop(k, None)
    if command == "color" and raw["strategy"] == "genus" and raw.get("genus") is None and "embedding" not in inputs:
        raise UsageError("--strategy genus needs --genus or --embedding")
    if command == "lowerbound":
        try:
            raw["n"] = [int(x) for x in raw["n"].split(",") if x.strip()]
        except ValueError:
            raise UsageError("--n expects comma-separated integers") from None
    return RunConfig(command, inputs, seed, raw, fmt)


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _graph(cfg: RunConfig):
    return parse_edge_list(_read(cfg.inputs["graph"]))


def _coloring(cfg: RunConfig, n: int) -> list[int]:
    c = verifiers.parse_coloring(_read(cfg.inputs["coloring"]), n)
    missing = [v for v, x in enumerate(c) if x is None]
    if missing:
        raise UsageError(f"coloring leaves vertices uncolored: {missing[:10]}")
    return c


def _cmd_verify(cfg):
    g = _graph(cfg)
    c = _coloring(cfg, g.n)
    opts = cfg.options
    kinds = sorted(CHECKS) if opts["kind"] == "all" else [opts["kind"]]
    proper = verifiers.is_proper(g, c)
    if proper.violated:
        # every other notion presupposes a proper coloring
        return 1, {"results": {"proper": proper.to_json()}}
    results = {}
    for kind in kinds:
        if kind in ("degenerate", "degenerate_star"):
            verdict = CHECKS[kind](g, c, mode=opts["mode"], max_classes=opts["max_classes"])
        else:
            verdict = CHECKS[kind](g, c)
        results[kind] = verdict.to_json()
    if opts.get("threshold") is not None:
        results["neighbors_distinct"] = verifiers.neighbors_distinct(g, c, opts["threshold"]).to_json()
    failed = any(r["status"] == verifiers.Status.VIOLATED.value for r in results.values())
    return (1 if failed else 0), {"results": results}


def _cmd_certify(cfg):
    g = _graph(cfg)
    c = _coloring(cfg, g.n)
    proper = verifiers.is_proper(g, c)
    if proper.violated:
        return 1, {"violation": proper.to_json()}
    out = certify(g, c)
    if isinstance(out, Orientation):
        return 0, {"orientation": [[u, v, h] for (u, v), h in sorted(out.head.items())],
                   "orientation_text": format_orientation(out)}
    return 1, {"violation": out.to_json()}


def _cmd_color(cfg):
    g = _graph(cfg)
    opts = cfg.options
    rng = random.Random(cfg.seed)
    if opts["strategy"] == "lll":
        palette = opts["palette"] or lll.palette_size(max(g.max_degree, 1))
        L = ListAssignment.uniform(g.n, range(palette))
        rounds = opts["max_rounds"] if opts["max_rounds"] is not None else 10 * g.n + 10
        try:
            run = lll.resample_until_clean(g, L, rng, rounds)
        except lll.RoundBudgetExhausted as exc:
            return 1, {"error": "RoundBudgetExhausted", "rounds": exc.rounds,
                       "violations": [v.to_json() for v in exc.violations]}
        return 0, {"palette": palette, "coloring": run.coloring, "stats": run.to_json()}
    genus = opts["genus"]
    if genus is None:
        emb = parse_rotation_system(_read(cfg.inputs["embedding"]))
        if emb.graph != g:
            raise UsageError("embedding does not match the graph")
        genus = euler_genus(emb)
    params = reducer.GenusParameters.for_genus(genus)
    palette = opts["palette"] or params.alpha
    L = ListAssignment.uniform(g.n, range(palette))
    try:
        run = reducer.run_genus_pipeline(g, L, genus, rng, params, opts["max_rounds"])
    except (reducer.NoAvailableColor, reducer.InsufficientLists, lll.RoundBudgetExhausted) as exc:
        return 1, {"error": type(exc).__name__, "message": str(exc)}
    return 0, {"palette": palette, "coloring": run.coloring, "stats": run.to_json()}


def _cmd_reduce(cfg):
    g = _graph(cfg)
    core, _, trace = reducer.reduce_fully(g)
    return 0, {
        "core_vertices": list(trace.labels),
        "core_edges": [[trace.labels[u], trace.labels[v]] for u, v in core.edges()],
        "core_max_degree": core.max_degree,
        "trace": trace.dump().splitlines(),
    }


def _cmd_audit(cfg):
    emb = parse_rotation_system(_read(cfg.inputs["embedding"]))
    specials = []
    if "specials" in cfg.inputs:
        specials = [int(x) for x in _read(cfg.inputs["specials"]).split()]
    try:
        rep = discharging.audit(emb, specials)
    except discharging.ReducibleInput as exc:
        return 1, {"error": "ReducibleInput", "vertex": exc.vertex, "rule": exc.kind}
    return (0 if rep.ok else 1), {"audit": rep.to_json(cfg.options["verbose"])}


def _cmd_lowerbound(cfg):
    fam = lowerbound.ForbiddenFamily.preset(cfg.options["family"])
    rep = lowerbound.run_experiment(cfg.options["n"], fam, cfg.options["trials"], cfg.seed,
                                    cfg.options["p"], cfg.options["exact_max_n"])
    return 0, {"experiment": rep}


def _cmd_oracle(cfg):
    g = _graph(cfg)
    res = oracles.chromatic(g, cfg.options["kind"], cfg.options["max_vertices"])
    return 0, {"value": res.value, "witness": list(res.witness),
               "nodes_per_k": {str(k): v for k, v in res.stats["nodes_per_k"].items()}}


COMMANDS = {
    "verify": _cmd_verify,
    "certify": _cmd_certify,
    "color": _cmd_color,
    "reduce": _cmd_reduce,
    "audit": _cmd_audit,
    "lowerbound": _cmd_lowerbound,
    "oracle": _cmd_oracle,
}


def _emit(report: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
        return
    for key in sorted(report):
        out.write(f"{key}: {json.dumps(report[key], sort_keys=True)}\n")


def run(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    report = {"tool": "degstar", "version": __version__, "seed": cfg.seed, "config": asdict(cfg)}
    try:
        code, body = COMMANDS[cfg.command](cfg)
    except (OSError, GraphError, EmbeddingError, UsageError, oracles.FeasibilityRefused,
            verifiers.ImproperColoring, verifiers.ExhaustiveRefused, ValueError) as exc:
        code, body = 2, {"error": type(exc).__name__, "message": str(exc)}
    report.update(body)
    report["exit_code"] = code
    _emit(report, cfg.format, out)
    return code


def main(argv=None) -> int:
    try:
        cfg = parse_args(argv)
    except UsageError as exc:
        print(f"degstar: error: {exc}", file=sys.stderr)
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
