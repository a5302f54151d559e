"""``tredkit`` command line.

Exit codes: 0 success, 1 bad input (missing file, parse error, unmet
precondition), 2 the result failed closure verification.
"""
from __future__ import annotations

import argparse
import csv
import logging
import random
import sys
import time

from . import __version__
from .approx import SOLVERS, reduce_graph
from .arborescence import min_in_arborescence, min_out_arborescence
from .closure import classify_parity, is_strongly_connected, parity_closure, reachability
from .errors import TredkitError
from .export import arc_record, digest, dumps, to_dot
from .generate import random_strong_graph
from .graph import Arc, SignedDigraph, format_decimal, format_edgelist, parse_edgelist
from .lp import MAX_GAP_NODES, integrality_gap, matching_lower_bound, solve_lp_small
from .oracle import exact_min
from .reduction import ReductionResult
from .synthesis import redundancy, synthesize

OK, INPUT_ERROR, VERIFY_FAILED = 0, 1, 2

class InputError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str) -> tuple[SignedDigraph, str]:
    text = _read(path)
    return parse_edgelist(text), digest(text)


def _node(g: SignedDigraph, name: str | None) -> int:
    if name is None:
        return 0
    try:
        return g.index(name)
    except KeyError:
        raise InputError(f"unknown node {name!r}") from None


def _kv(pairs: dict) -> str:
    return "".join(f"{k}\t{v}\n" for k, v in pairs.items())


def _note(args, msg: str) -> None:
    if not args.quiet:
        print(msg, file=sys.stderr)


def _result_payload(g: SignedDigraph, res: ReductionResult) -> dict:
    R = res.redundancy
    return {
        "algorithm": res.algorithm,
        "label_aware": res.stats.get("label_aware"),
        "n": g.n,
        "m": g.m,
        "kept": res.kept_count,
        "deleted": res.deleted_count,
        "R": float(R) if R is not None else None,
        "R_exact": str(R) if R is not None else None,
        "lower_bound": res.lower_bound,
        "verified": res.verified,
        "kept_arcs": [arc_record(g, a) for a in res.kept],
        "augmentation": [arc_record(g, a) for a in res.augmentation],
    }


def _emit_reduction(args, g: SignedDigraph, res: ReductionResult, command: str, dig: str) -> int:
    if args.format == "json":
        sys.stdout.write(dumps({"command": command, "input_digest": dig, **_result_payload(g, res)}))
    elif args.format == "dot":
        sys.stdout.write(to_dot(g, res.kept))
    else:
        sys.stdout.write(format_edgelist(g, res.kept))
    R = res.redundancy
    _note(args, f"{res.algorithm}: kept {res.kept_count}/{res.total_count}"
                f"{'' if R is None else f', R={float(R):.4f}'}"
                f", verified={'yes' if res.verified else 'NO'}")
    return OK if res.verified else VERIFY_FAILED


# -- subcommands -------------------------------------------------------------

def cmd_reduce(args) -> int:
    g, dig = _load(args.input)
    t0 = time.perf_counter()
    res = reduce_graph(g, args.algo, label_aware=args.label_aware or args.algo == "btr",
                       c=args.c, repair=not args.verify_off)
    _note(args, f"wall {1000 * (time.perf_counter() - t0):.1f} ms")
    return _emit_reduction(args, g, res, "reduce", dig)


def cmd_oracle(args) -> int:
    g, dig = _load(args.input)
    res = exact_min(g, label_aware=args.label_aware, weighted=args.weighted)
    return _emit_reduction(args, g, res, "oracle", dig)


def cmd_closure(args) -> int:
    g, dig = _load(args.input)
    if args.label_blind:
        triples = sorted((u, v, 1) for u, v in reachability(g))
    else:
        triples = sorted(parity_closure(g).triples)
    sign = lambda p: "+" if p > 0 else "-"
    if args.format == "json":
        rows = [[g.names[u], g.names[v], sign(p)] for u, v, p in triples]
        sys.stdout.write(dumps({"command": "closure", "input_digest": dig,
                                "label_aware": not args.label_blind, "triples": rows}))
    elif args.format == "dot":
        arcs = [Arc(u, v, p) for u, v, p in triples if not (u == v and p > 0)]
        sys.stdout.write(to_dot(g, arcs))
    else:
        sys.stdout.write("".join(f"{g.names[u]}\t{g.names[v]}\t{sign(p)}\n" for u, v, p in triples))
    return OK


def cmd_parity(args) -> int:
    g, dig = _load(args.input)
    cls = classify_parity(g)
    witness = g.names[cls.witness] if cls.double else None
    if args.format == "json":
        sys.stdout.write(dumps({"command": "parity", "input_digest": dig, "class": cls.kind.value,
                                "witness": witness,
                                "potential": {g.names[v]: p for v, p in enumerate(cls.potential)}}))
    else:
        sys.stdout.write(f"double\t{witness}\n" if cls.double else "single\n")
    return OK


def cmd_arborescence(args) -> int:
    g, dig = _load(args.input)
    root = _node(g, args.root)
    fn = min_out_arborescence if args.direction == "out" else min_in_arborescence
    arb = fn(g, root)
    if args.format == "json":
        sys.stdout.write(dumps({"command": "arborescence", "input_digest": dig,
                                "root": g.names[root], "orientation": args.direction,
                                "total_weight": format_decimal(arb.total_weight),
                                "arcs": [arc_record(g, a) for a in arb.arcs]}))
    elif args.format == "dot":
        sys.stdout.write(to_dot(g, arb.arcs))
    else:
        sys.stdout.write(format_edgelist(g, arb.arcs))
    _note(args, f"total weight {format_decimal(arb.total_weight)}")
    return OK


def cmd_lp(args) -> int:
    g, dig = _load(args.input)
    root = _node(g, args.root)
    sol = solve_lp_small(g, args.variant, root)
    report = {"variant": args.variant, "objective": format_decimal(sol.objective),
              "integral": sol.integral}
    strong = is_strongly_connected(g)
    if strong and g.n <= MAX_GAP_NODES:
        report["gap"] = format_decimal(integrality_gap(g, args.variant, root))
    if strong and g.n >= 2:
        report["bound"] = matching_lower_bound(g)[0]
    if args.format == "json":
        report["x"] = [dict(arc_record(g, a), value=format_decimal(x)) for a, x in sol.x.items()]
        sys.stdout.write(dumps({"command": "lp", "input_digest": dig, **report}))
    else:
        sys.stdout.write(_kv({k: str(v).lower() if isinstance(v, bool) else v
                              for k, v in report.items()}))
    return OK


def cmd_synth(args) -> int:
    text = _read(args.input)
    syn = synthesize(text, args.algo)
    res, g = syn.result, syn.graph
    pseudo = [p.id for p in syn.pseudonodes]
    if args.format == "json":
        sys.stdout.write(dumps({
            "command": "synth", "input_digest": digest(text), "algorithm": res.algorithm,
            "nodes": list(g.names), "arcs": [arc_record(g, a) for a in syn.reduced.arcs],
            "pseudonodes": [{"node": g.names[p.id], "origin": str(p.origin), "line": p.origin.line}
                            for p in syn.pseudonodes],
            "R": float(res.redundancy) if res.total_count else None,
            "verified": res.verified, "evidence": len(syn.evidence), "m": g.m,
        }))
    elif args.format == "dot":
        sys.stdout.write(to_dot(g, syn.reduced.arcs, pseudo))
    else:
        sys.stdout.write(format_edgelist(g, syn.reduced.arcs))
    _note(args, f"{len(syn.evidence)} statements, {g.n} nodes ({len(pseudo)} pseudo), "
                f"kept {res.kept_count}/{g.m} arcs, verified={'yes' if res.verified else 'NO'}")
    return OK if res.verified else VERIFY_FAILED


def cmd_redundancy(args) -> int:
    g, dig = _load(args.input)
    R = redundancy(g, exact=args.exact)
    if args.format == "json":
        sys.stdout.write(dumps({"command": "redundancy", "input_digest": dig, "exact": args.exact,
                                "m": g.m, "kept": int(g.m * (1 - R)), "R": float(R),
                                "R_exact": str(R)}))
    else:
        sys.stdout.write(f"{format_decimal(R)}\n")
    return OK


def cmd_bench(args) -> int:
    algos = [a.strip() for a in args.algos.split(",") if a.strip()]
    bad = [a for a in algos if a not in SOLVERS or a == "dag"]
    if bad or not algos:
        raise InputError(f"bad --algos {args.algos!r}; choose from {', '.join(SOLVERS[1:])}")
    if args.n < 1 or args.m < args.n or args.m > args.n * args.n or args.repeats < 1:
        raise InputError("need n >= 1, n <= m <= n*n and repeats >= 1")
    rng = random.Random(args.seed)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["instance", "algo", "n", "m", "kept", "wall_ms", "ratio_vs_best_bound"])
    status = OK
    for inst in range(args.repeats):
        g = random_strong_graph(args.n, args.m, rng.getrandbits(64), args.neg_frac, args.crit_frac)
        rows = []
        for algo in algos:
            t0 = time.perf_counter()
            res = reduce_graph(g, algo, label_aware=algo == "btr", c=args.c)
            rows.append((algo, res, 1000 * (time.perf_counter() - t0)))
            if not res.verified:
                status = VERIFY_FAILED
        bound = max((r.lower_bound or 0) for _, r, _ in rows)
        for algo, res, ms in rows:
            ratio = f"{res.kept_count / bound:.4f}" if bound else ""
            writer.writerow([inst, algo, g.n, g.m, res.kept_count, f"{ms:.1f}", ratio])
    return status


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("tsv", "dot", "json"), default="tsv",
                        help="output format (tsv is the edge-list text format)")
    common.add_argument("--seed", type=int, default=0, help="random seed (bench)")
    common.add_argument("--quiet", action="store_true", help="no summary on stderr")

    p = argparse.ArgumentParser(prog="tredkit", description="Transitive reduction toolkit.")
    p.add_argument("--version", action="version", version=f"tredkit {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_, input_=True):
        sp = sub.add_parser(name, parents=[common], help=help_)
        if input_:
            sp.add_argument("input", help="input file, or - for stdin")
        sp.set_defaults(func=fn)
        return sp

    sp = add("reduce", cmd_reduce, "reduce a graph")
    sp.add_argument("--algo", choices=SOLVERS, default="btr")
    sp.add_argument("--label-aware", action="store_true",
                    help="preserve walk parities too (always on for btr)")
    sp.add_argument("--c", type=int, default=12, help="longest cycle length tried by kry")
    sp.add_argument("--verify-off", action="store_true",
                    help="skip the repair pass; closure is still checked and reported")

    sp = add("oracle", cmd_oracle, "exact minimum by subset enumeration")
    sp.add_argument("--label-aware", action="store_true")
    sp.add_argument("--weighted", action="store_true", help="minimize total weight")

    sp = add("closure", cmd_closure, "list reachability triples")
    sp.add_argument("--label-blind", action="store_true")

    add("parity", cmd_parity, "single or double parity of a strongly connected graph")

    sp = add("arborescence", cmd_arborescence, "minimum spanning arborescence")
    sp.add_argument("--root", help="root node name (default: first node)")
    sp.add_argument("--direction", choices=("out", "in"), default="out")

    sp = add("lp", cmd_lp, "cut-covering LP on a small graph")
    sp.add_argument("--variant", choices=("min-ed", "critical-min-ed", "arborescence"),
                    default="min-ed")
    sp.add_argument("--root", help="root node name for the arborescence variant")

    sp = add("synth", cmd_synth, "synthesize a network from evidence")
    sp.add_argument("--algo", choices=("critical2", "fj", "kry", "maxed2"), default="critical2",
                    help="per-component solver")

    sp = add("redundancy", cmd_redundancy, "redundancy measure R")
    sp.add_argument("--exact", action="store_true", help="use the brute-force optimum")

    sp = add("bench", cmd_bench, "time solvers on random strongly connected graphs", input_=False)
    sp.add_argument("--n", type=int, default=100)
    sp.add_argument("--m", type=int, default=500)
    sp.add_argument("--algos", default="fj,critical2")
    sp.add_argument("--repeats", type=int, default=1, help="number of instances")
    sp.add_argument("--c", type=int, default=12)
    sp.add_argument("--neg-frac", type=float, default=0.2)
    sp.add_argument("--crit-frac", type=float, default=0.1)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.ERROR if args.quiet else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        return args.func(args)
    except (InputError, TredkitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
