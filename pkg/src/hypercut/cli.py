"""Command-line entry point: ``hypercut <command> ...``.

Results go to stdout as JSON (or CSV for ``sweep``).  Exit codes: 0 ok,
1 other errors, 2 not reducible, 3 parse error, 4 size limit exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import hardness
from .errors import NotReducible, ParseError, SeedNotFound, SizeLimitError
from .experiment import build_super_st, parse_grid, sweep_w2
from .io import (
    format_hypergraph,
    node_lookup,
    parse_dimacs_cnf,
    parse_hypergraph,
    parse_nae_clauses,
    parse_split,
    read_terminals,
    write_sweep_csv,
)
from .multiway import MoveBased, is_multiway, is_submodular_movebased, solve_multiway
from .numeric import fmt
from .reduction import emit_dimacs, solve_st
from .splitting import classify, is_submodular

EXIT_NOT_REDUCIBLE = 2
EXIT_PARSE = 3
EXIT_SIZE = 4


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _node(H, token: str) -> int:
    try:
        return node_lookup(H, token)
    except KeyError:
        raise ParseError(f"unknown node {token!r}") from None


def _terminal_pair(args, H):
    s, t = args.s, args.t
    if s is None or t is None:
        listed = read_terminals(args.hgr) or []
        if len(listed) < 2:
            raise ParseError("give --s and --t (or a '% terminals s,t' comment)")
        s, t = s or listed[0], t or listed[1]
    return s, t


def cmd_solve_st(args) -> int:
    H = parse_hypergraph(args.hgr, args.split)
    s_tok, t_tok = _terminal_pair(args, H)
    if args.super_seeds:
        try:
            H, s, t = build_super_st(H, s_tok, t_tok)
        except SeedNotFound as exc:
            raise ParseError(f"unknown seed {exc.args[0]!r}") from None
    else:
        s, t = _node(H, s_tok), _node(H, t_tok)
    sol = solve_st(H, s, t, method=args.method, aon_gadget="lawler" if args.lawler else "cb")
    _emit({
        "value": fmt(sol.value),
        "source_size": len(sol.source_set),
        "source_set": [H.label(v) for v in sorted(sol.source_set)],
    })
    return 0


def cmd_solve_mc(args) -> int:
    H = parse_hypergraph(args.hgr, args.split)
    names = args.terminals.split(",") if args.terminals else read_terminals(args.hgr)
    if not names:
        raise ParseError("give --terminals (or a '% terminals' comment)")
    terminals = [_node(H, x.strip()) for x in names]
    method = "exact" if args.exact else "isolating" if args.isolating else "auto"
    sol = solve_multiway(H, terminals, method)
    clusters = {}
    for v, c in sorted(sol.assignment.items()):
        clusters.setdefault(H.label(terminals[c]), []).append(H.label(v))
    _emit({
        "value": fmt(sol.value),
        "method": sol.method,
        "removed_aux": len(sol.removed),
        "clusters": clusters,
    })
    return 0


def cmd_sweep(args) -> int:
    H = parse_hypergraph(args.hgr, args.split)
    try:
        H2, s, t = build_super_st(H, args.s_seed, args.t_seed)
    except SeedNotFound as exc:
        raise ParseError(f"unknown seed {exc.args[0]!r}") from None
    rows = sweep_w2(H2, s, t, parse_grid(args.grid), args.w1, workers=args.workers)
    if args.out and args.out != "-":
        with open(args.out, "w", newline="") as fh:
            write_sweep_csv(rows, fh, as_float=args.float)
    else:
        write_sweep_csv(rows, sys.stdout, as_float=args.float)
    return 0


def cmd_check(args) -> int:
    f = parse_split(args.split, args.arity)
    if isinstance(f, MoveBased):
        rep, kind = is_submodular_movebased(f), {}
    elif is_multiway(f):
        raise ParseError("only two-way and move-based specs have a submodularity check")
    else:
        rep, kind = is_submodular(f), classify(f)
    _emit({
        "spec": f.spec(),
        "submodular": rep.is_submodular,
        "violations": [str(v) for v in rep.violations],
        **kind,
    })
    return 0


def cmd_reduce(args) -> int:
    H = parse_hypergraph(args.hgr, args.split)
    s_tok, t_tok = _terminal_pair(args, H)
    s, t = _node(H, s_tok), _node(H, t_tok)
    net = emit_dimacs(H, s, t, args.dimacs, aon_gadget="lawler" if args.lawler else "cb")
    _emit({"nodes": net.node_count, "arcs": len(net.arcs), "dimacs": args.dimacs})
    return 0


def _read_graph(path):
    edges = []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            text = raw.split("#")[0].strip()
            if not text:
                continue
            try:
                u, v = (int(x) for x in text.split())
            except ValueError:
                raise ParseError("graph lines are 'u v' with 0-based ids", lineno) from None
            edges.append((u, v))
    n = max((max(e) for e in edges), default=-1) + 1
    return n, edges


def cmd_gen(args) -> int:
    kind = args.kind
    if kind == "maxcut4":
        n, edges = _read_graph(args.input)
        H, s, t = hardness.gen_4cb_from_maxcut(n, edges, (Fraction(1), Fraction(args.w2)))
        terms = [s, t]
    elif kind == "rj":
        n, edges = _read_graph(args.input)
        H, s, t = hardness.gen_rj_gadget_instance(args.r, args.j, n, edges)
        terms = [s, t]
    elif kind in ("needy", "needy3"):
        cnf = parse_dimacs_cnf(args.input)
        gen = hardness.gen_needy_from_sat if kind == "needy" else hardness.gen_needy3_from_3sat
        H, s, t = gen(cnf)
        terms = [s, t]
    elif kind == "nae5":
        nv, clauses = parse_nae_clauses(args.input)
        H, s, t = hardness.gen_5cb_from_monnae3sat(nv, clauses)
        terms = [s, t]
    else:
        nv, clauses = parse_nae_clauses(args.input)
        H, terms = hardness.gen_rainbow_from_monnae3sat(nv, clauses)
    text = "% terminals " + ",".join(H.label(v) for v in terms) + "\n" + format_hypergraph(H)
    if args.out and args.out != "-":
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hypercut", description="Generalized hypergraph s-t and multiway cuts.")
    sub = p.add_subparsers(dest="command", required=True)

    st = sub.add_parser("solve-st", help="minimum s-t cut of a hypergraph file")
    st.add_argument("hgr")
    st.add_argument("--split", default="aon", help="default splitting spec (default: aon)")
    st.add_argument("--s")
    st.add_argument("--t")
    st.add_argument("--super-seeds", action="store_true", help="treat --s/--t as seeds and attach super terminals")
    st.add_argument("--method", choices=["dinic", "rational"], default="dinic")
    st.add_argument("--lawler", action="store_true", help="use Lawler gadgets for all-or-nothing edges")
    st.set_defaults(func=cmd_solve_st)

    mc = sub.add_parser("solve-mc", help="multiway cut via node-weighted reduction")
    mc.add_argument("hgr")
    mc.add_argument("--split", default="move 1", help="default multiway spec (default: all-or-nothing moves)")
    mc.add_argument("--terminals", help="comma-separated terminal labels")
    g = mc.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true")
    g.add_argument("--isolating", action="store_true")
    mc.set_defaults(func=cmd_solve_mc)

    sw = sub.add_parser("sweep", help="w2 sweep with super terminals and Jaccard against w2 = w1")
    sw.add_argument("hgr")
    sw.add_argument("--split", default="aon")
    sw.add_argument("--s-seed", required=True)
    sw.add_argument("--t-seed", required=True)
    sw.add_argument("--grid", default="1:2:0.05")
    sw.add_argument("--w1", default="1")
    sw.add_argument("--out", default="-")
    sw.add_argument("--float", action="store_true", help="render numbers as floats")
    sw.add_argument("--workers", type=int, default=None)
    sw.set_defaults(func=cmd_sweep)

    ck = sub.add_parser("check-submodular", help="submodularity report for a splitting spec")
    ck.add_argument("--split", required=True)
    ck.add_argument("--arity", "-r", type=int, required=True)
    ck.set_defaults(func=cmd_check)

    rd = sub.add_parser("reduce", help="write the flow network of an s-t instance in DIMACS format")
    rd.add_argument("hgr")
    rd.add_argument("--split", default="aon")
    rd.add_argument("--s")
    rd.add_argument("--t")
    rd.add_argument("--dimacs", required=True)
    rd.add_argument("--lawler", action="store_true")
    rd.set_defaults(func=cmd_reduce)

    gn = sub.add_parser("gen", help="generate a hard instance as a hypergraph file")
    gn.add_argument("kind", choices=["maxcut4", "rj", "needy", "needy3", "nae5", "rainbow"])
    gn.add_argument("input", help="graph edge list, DIMACS CNF, or clause triples")
    gn.add_argument("--r", type=int, default=4)
    gn.add_argument("--j", type=int, default=2)
    gn.add_argument("--w2", default="1/2", help="w2 for maxcut4 (w1 = 1)")
    gn.add_argument("--out", default="-")
    gn.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NotReducible as exc:
        print(f"not reducible: {exc}", file=sys.stderr)
        return EXIT_NOT_REDUCIBLE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SizeLimitError as exc:
        print(f"size limit: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
