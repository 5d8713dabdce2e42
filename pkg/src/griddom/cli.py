"""Command-line entry point: ``griddom <command> [flags]``.

Exit codes: 0 success / dominated, 1 verification failure or insufficient
agents, 2 usage error, 3 search budget exhausted, 4 file or parse error.
"""
from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from pathlib import Path

from .construct import (
    FormulaNotApplicable,
    bounds,
    construct,
    construct_best,
    construction_upper,
    gamma_formula,
    ratio_trend,
    verify_k_domination,
)
from .diagonal import DiagonalParams, Orientation
from .greedy import GreedyConfig, TieBreak, greedy_dominate
from .grid import GridError, GridSpec
from .io import DocumentError, SetDocument
from .oracle import BudgetExhausted, exact_min_dominating
from .render import RenderError, render
from .sim import (
    EventKind,
    ExplicitPlacement,
    FixedActivation,
    RandomActivation,
    RandomPlacement,
    SimConfig,
    SimulationError,
    run,
    write_trace,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET, EXIT_IO = 0, 1, 2, 3, 4
EXACT_GUARD = 36


class UsageError(Exception):
    pass


def _log(msg: str) -> None:
    print(msg, file=sys.stderr)


def _grid(args) -> GridSpec:
    try:
        return GridSpec(args.m, args.n)
    except GridError as exc:
        raise UsageError(str(exc)) from exc


def _seed(args) -> int:
    if args.seed is None:
        args.seed = random.SystemRandom().randrange(2**31)
        _log(f"seed={args.seed}")
    return args.seed


def _emit(doc: SetDocument, args) -> None:
    fmt = getattr(args, "format", "json")
    text = doc.to_json(indent=None) + "\n" if fmt == "json" else render(doc.grid, doc, fmt)
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_construct(args) -> int:
    g = _grid(args)
    if args.best:
        res = construct_best(g, args.k)
    else:
        try:
            p = DiagonalParams(args.k, args.r, Orientation(args.orientation))
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        res = construct(g, p)
    bound = construction_upper(g.m, g.n, args.k)
    meta = {
        "method": "construct_best" if args.best else "construct",
        "params": {"k": res.params.k, "r": res.params.r, "orientation": res.params.orientation.value},
        "size": res.size,
        "bound": bound,
        "orphans": [list(v) for v in res.orphan_part],
        "repaired": [list(v) for v in res.repaired],
    }
    summary = f"size={res.size} bound={bound}"
    if args.k == 1:
        try:
            gap = res.size - gamma_formula(g.m, g.n)
            meta["gap"] = gap
            summary += f" gap={gap}"
        except FormulaNotApplicable:
            pass
    _log(summary)
    _emit(SetDocument.build(g, args.k, res.dominating_set, **meta), args)
    return EXIT_OK


def _placement(spec: str, g: GridSpec, count: int, seed: int):
    if spec == "random":
        return RandomPlacement(seed)
    try:
        data = json.loads(Path(spec).read_text())
    except OSError as exc:
        raise FileNotFoundError(str(exc)) from exc
    pts = data["vertices"] if isinstance(data, dict) else data
    return ExplicitPlacement(tuple(tuple(p) for p in pts))


def _activation(spec: str, count: int, seed: int):
    if spec == "random":
        return RandomActivation(seed)
    if spec == "fixed":
        return FixedActivation(tuple(range(count)))
    try:
        return FixedActivation(tuple(int(t) for t in spec.split(",")))
    except ValueError as exc:
        raise UsageError(f"bad --activation {spec!r}") from exc


def cmd_simulate(args) -> int:
    g = _grid(args)
    seed = _seed(args)
    count = args.agents if args.agents is not None else construction_upper(g.m, g.n, args.k)
    placement = _placement(args.placement, g, count, seed)
    if isinstance(placement, ExplicitPlacement) and args.agents is None:
        count = len(placement.positions)
    cfg = SimConfig(
        grid=g,
        k=args.k,
        agent_count=count,
        placement=placement,
        activation=_activation(args.activation, count, seed),
        max_epochs=args.max_epochs,
        orphan_relay=not args.literal,
    )
    try:
        res = run(cfg)
    except SimulationError as exc:
        raise UsageError(str(exc)) from exc
    if args.trace:
        write_trace(res.events, args.trace)
    activated = {e.agent for e in res.events if e.kind is EventKind.ACTIVATED}
    meta = {
        "method": "simulate",
        "seed": seed,
        "agents": count,
        "settled": res.settled_count,
        "dominated": res.dominated,
        "halt_reason": res.final.halt_reason,
        "move_steps": res.final.move_steps,
        "never_activated": count - len(activated),
        "orphans": [list(v) for v in sorted(res.final.orphan_occupied)],
    }
    _log(f"dominated={res.dominated} settled={res.settled_count} agents={count} "
         f"halt={res.final.halt_reason}")
    _emit(SetDocument.build(g, args.k, res.final.occupied, **meta), args)
    return EXIT_OK if res.dominated else EXIT_FAIL


def cmd_exact(args) -> int:
    g = _grid(args)
    if g.size > EXACT_GUARD and not args.force:
        raise UsageError(f"{g.m}x{g.n} exceeds the exact-search guard of {EXACT_GUARD} vertices; use --force")
    try:
        res = exact_min_dominating(g, args.k, max_nodes=args.max_nodes, timeout_sec=args.timeout_sec)
    except BudgetExhausted as exc:
        _log(f"budget exhausted after {exc.nodes} nodes; best known upper bound {exc.best_upper}")
        return EXIT_BUDGET
    _log(f"gamma={res.gamma} nodes={res.nodes_explored} elapsed={res.elapsed:.3f}s")
    _emit(SetDocument.build(g, args.k, res.optimum, method="exact", gamma=res.gamma,
                            nodes=res.nodes_explored), args)
    return EXIT_OK


def cmd_greedy(args) -> int:
    g = _grid(args)
    tb = TieBreak(args.tie_break)
    seed = _seed(args) if tb is TieBreak.RANDOM else None
    s = greedy_dominate(g, GreedyConfig(tb, seed))
    _log(f"size={len(s)}")
    _emit(SetDocument.build(g, 1, s, method="greedy", tie_break=tb.value, seed=seed), args)
    return EXIT_OK


def _load(path) -> SetDocument:
    try:
        return SetDocument.load(path)
    except OSError as exc:
        raise FileNotFoundError(str(exc)) from exc


def cmd_verify(args) -> int:
    doc = _load(args.set)
    k = args.k or doc.k
    rep = verify_k_domination(doc.grid, doc.vertices, k)
    out = {
        "dominated": rep.dominated,
        "size": len(doc.vertices),
        "k": k,
        "uncovered": [list(v) for v in rep.uncovered],
        "histogram": {str(a): b for a, b in rep.histogram.items()},
    }
    print(json.dumps(out, sort_keys=True))
    return EXIT_OK if rep.dominated else EXIT_FAIL


def cmd_bounds(args) -> int:
    b = bounds(_grid(args), args.k)
    print(json.dumps({
        "m": b.m,
        "n": b.n,
        "k": b.k,
        "lower": b.lower,
        "upper": b.construction_upper,
        "diag_cardinality_upper": b.diag_cardinality_upper,
        "gamma_formula": b.gamma_exact_formula,
        "ratio_upper": f"{b.ratio_upper.numerator}/{b.ratio_upper.denominator}",
    }, sort_keys=True))
    return EXIT_OK


def cmd_render(args) -> int:
    doc = _load(args.set)
    fmt = args.format if args.format != "json" else "ascii"
    text = render(doc.grid, doc, fmt)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_report(args) -> int:
    from .oracle import exact_gamma_k
    from .plotting import plot_ratio_trend, plot_set, plot_sweep

    g = _grid(args)
    seed = _seed(args)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    rows = []
    for s in range(1, args.sweep_max + 1):
        sq = GridSpec(s, s)
        b = bounds(sq, args.k)
        exact = exact_gamma_k(sq, args.k) if s * s <= 30 else None
        rows.append({
            "m": s, "n": s, "k": args.k,
            "size": construct_best(sq, args.k).size,
            "upper": b.construction_upper, "lower": b.lower,
            "gamma_formula": b.gamma_exact_formula, "exact": exact,
        })
    with open(out / "sweep.csv", "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]))
        w.writeheader()
        w.writerows(rows)
    plot_sweep(rows, out / "sweep.png")

    sizes = [20, 40, 80, 160]
    series = {k: list(zip(sizes, ratio_trend(k, sizes))) for k in (1, 2)}
    with open(out / "ratio.csv", "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["k", "size", "ratio", "ratio_float"])
        for k, pts in series.items():
            for size, q in pts:
                w.writerow([k, size, f"{q.numerator}/{q.denominator}", f"{float(q):.6f}"])
    plot_ratio_trend(series, out / "ratio_trend.png")

    best = construct_best(g, args.k)
    cdoc = SetDocument.build(g, args.k, best.dominating_set, method="construct_best",
                             orphans=[list(v) for v in best.orphan_part])
    cdoc.dump(out / "construction.json")
    plot_set(cdoc, out / "construction.png")

    count = args.agents if args.agents is not None else construction_upper(g.m, g.n, args.k)
    res = run(SimConfig.seeded(g, count, seed, k=args.k))
    write_trace(res.events, out / "trace.jsonl")
    sdoc = SetDocument.build(g, args.k, res.final.occupied, method="simulate", seed=seed,
                             orphans=[list(v) for v in sorted(res.final.orphan_occupied)])
    sdoc.dump(out / "simulation.json")
    plot_set(sdoc, out / "simulation.png", title=f"simulation seed {seed}, {res.settled_count} settled")

    w = csv.writer(sys.stdout)
    w.writerow(["artifact", "m", "n", "k", "size", "dominated"])
    w.writerow(["construction", g.m, g.n, args.k, best.size,
                verify_k_domination(g, best.dominating_set, args.k).dominated])
    w.writerow(["simulation", g.m, g.n, args.k, res.settled_count, res.dominated])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="griddom", description="Dominating sets on grid graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def grid_args(p, k=True):
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--n", type=int, required=True)
        if k:
            p.add_argument("--k", type=int, default=1)

    def out_args(p):
        p.add_argument("--format", choices=["json", "ascii", "svg"], default="json")
        p.add_argument("--out")

    p = sub.add_parser("construct", help="diagonalize and project")
    grid_args(p)
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--orientation", choices=["xy", "swapped"], default="xy")
    p.add_argument("--best", action="store_true", help="sweep every residue and orientation")
    out_args(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("simulate", help="run the distributed protocol")
    grid_args(p)
    p.add_argument("--agents", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--placement", default="random", help="'random' or a JSON file of [x, y] pairs")
    p.add_argument("--activation", default="random", help="'random', 'fixed' or a comma list of agent ids")
    p.add_argument("--max-epochs", type=int)
    p.add_argument("--literal", action="store_true", help="orphan agents never relay slots")
    p.add_argument("--trace")
    out_args(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("exact", help="exact minimum by exhaustive search")
    grid_args(p)
    p.add_argument("--force", action="store_true")
    p.add_argument("--timeout-sec", type=float)
    p.add_argument("--max-nodes", type=int)
    out_args(p)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("greedy", help="greedy baseline (k = 1)")
    grid_args(p, k=False)
    p.add_argument("--tie-break", choices=[t.value for t in TieBreak], default="lex")
    p.add_argument("--seed", type=int)
    out_args(p)
    p.set_defaults(func=cmd_greedy)

    p = sub.add_parser("verify", help="check a set document")
    p.add_argument("--set", required=True)
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="closed-form bounds")
    grid_args(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("render", help="draw a set document")
    p.add_argument("--set", required=True)
    out_args(p)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("report", help="CSV tables and PNG figures")
    grid_args(p)
    p.add_argument("--seed", type=int)
    p.add_argument("--agents", type=int)
    p.add_argument("--sweep-max", type=int, default=30)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        _log(f"error: {exc}")
        return EXIT_USAGE
    except (FileNotFoundError, DocumentError, KeyError, json.JSONDecodeError) as exc:
        _log(f"error: {exc}")
        return EXIT_IO
    except (GridError, RenderError) as exc:
        _log(f"error: {exc}")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
