"""Turn a hypergraph s-t cut instance into a directed flow network and back.

Every hyperedge is replaced by a gadget chosen from its splitting function:

========================  ==================================================
symmetric CB              sum of CB-gadgets (all-or-nothing: one b=1 gadget,
                          or a Lawler gadget on request)
asymmetric CB             sum of asymmetric CB-gadgets
2-node table              two opposed arcs
3-node table              weighted directed star
4-node symmetric table    nonnegative combination of the seven basis gadgets
========================  ==================================================

Tables that turn out to be cardinality-based are routed through the CB paths.
Asymmetric penalties are indexed by the number of nodes on the *source* side.

Network node ids: hypergraph node ``v`` keeps id ``v``; auxiliary nodes are
appended edge by edge in edge order, so a reduction is reproducible.
"""
from __future__ import annotations

import os
from typing import TextIO

from .errors import NotModelable, NotReducible, NotSubmodular
from .gadgets import (
    SOURCE,
    Arc,
    Aux,
    Gadget,
    Slot,
    combined_asym_gadget,
    combined_cb_gadget,
    four_node_basis_gadget,
    four_node_penalties,
    lawler_gadget,
    three_node_from_table,
)
from .hypergraph import CutSolution, Hypergraph, validate
from .maxflow import FlowNetwork, min_cut, write_dimacs
from .splitting import (
    AsymmetricCB,
    GeneralTable,
    NeedyNode,
    SymmetricCB,
    cardinality_vector,
    classify,
    is_submodular_table,
)


def _is_aon(f: SymmetricCB) -> bool:
    return len(set(f.w)) == 1


def edge_gadget(f, aon_gadget: str = "cb") -> Gadget:
    """Gadget modeling ``f``; raises ``ValueError`` subclasses with a reason."""
    if isinstance(f, SymmetricCB):
        if not f.is_exact:
            raise ValueError("penalties are irrational and only approximated")
        if f.r == 2:
            return Gadget(2, 0, (Arc(Slot(0), Slot(1), f.w[0], directed=False),))
        if aon_gadget == "lawler" and _is_aon(f):
            return lawler_gadget(f.r, f.w[0])
        return combined_cb_gadget(f)
    if isinstance(f, AsymmetricCB):
        return combined_asym_gadget(f)
    if isinstance(f, (GeneralTable, NeedyNode)):
        return _table_gadget(f.table(), aon_gadget)
    raise ValueError(f"{type(f).__name__} is not a two-way splitting function")


def _table_gadget(t: GeneralTable, aon_gadget: str) -> Gadget:
    r = t.r
    if r == 2:
        return Gadget(2, 0, (Arc(Slot(0), Slot(1), t.values[0b01]), Arc(Slot(1), Slot(0), t.values[0b10])))
    kind = classify(t)
    if kind["cardinality_based"]:
        y = cardinality_vector(t)
        if kind["symmetric"]:
            return edge_gadget(SymmetricCB(r, y[: r // 2]), aon_gadget)
        return combined_asym_gadget(AsymmetricCB(r, y))
    if r == 3:
        return three_node_from_table(t)
    if r == 4 and kind["symmetric"]:
        rep = is_submodular_table(t)
        if not rep.is_submodular:
            raise NotSubmodular(f"table is not submodular: {rep.violations[0]}", rep)
        return four_node_basis_gadget(four_node_penalties(t))
    rep = is_submodular_table(t) if r <= 12 else None
    if rep is not None and not rep.is_submodular:
        raise NotSubmodular(f"table is not submodular: {rep.violations[0]}", rep)
    raise ValueError(f"no gadget family for a {'symmetric' if kind['symmetric'] else 'general'} "
                     f"non-cardinality table on {r} nodes")


def reduce_st(H: Hypergraph, s: int, t: int, aon_gadget: str = "cb") -> tuple[FlowNetwork, dict]:
    """Flow network whose minimum s-t cuts correspond to minimum hypergraph cuts.

    Returns the network (with infinite arcs lowered) and the map from hypergraph
    nodes to network nodes.
    """
    problems = validate(H)
    if problems:
        raise ValueError("invalid hypergraph: " + "; ".join(problems))
    if s == t:
        raise ValueError("s and t must differ")
    for v in (s, t):
        if not 0 <= v < H.n:
            raise ValueError(f"terminal {v} outside 0..{H.n - 1}")
    net = FlowNetwork(H.n, s, t, node_names={v: H.label(v) for v in range(H.n)})
    for idx, e in enumerate(H.edges):
        try:
            g = edge_gadget(e.splitting, aon_gadget)
        except NotModelable as exc:
            raise NotReducible(idx, f"not modelable by the four-node basis: {exc}") from exc
        except ValueError as exc:
            raise NotReducible(idx, str(exc)) from exc
        base = net.node_count
        for j in range(g.aux_count):
            net.add_node(f"e{idx}.aux{j}")

        def node(end, e=e, base=base):
            if isinstance(end, Slot):
                return e.nodes[end.i]
            if isinstance(end, Aux):
                return base + end.j
            return s if end is SOURCE else t

        for a in g.arcs:
            if a.weight == 0:
                continue
            u, v = node(a.tail), node(a.head)
            if u == v:
                continue
            if a.directed:
                net.add_arc(u, v, a.weight)
            else:
                net.add_edge(u, v, a.weight)
    low, _ = net.lowered()
    return low, {v: v for v in range(H.n)}


def solve_st(H: Hypergraph, s: int, t: int, method: str = "dinic", aon_gadget: str = "cb") -> CutSolution:
    net, mapping = reduce_st(H, s, t, aon_gadget)
    res = min_cut(net, method)
    back = {nv: hv for hv, nv in mapping.items()}
    side = frozenset(back[x] for x in res.source_side if x in back)
    return CutSolution(side, res.value)


def emit_dimacs(H: Hypergraph, s: int, t: int, out: TextIO | str | os.PathLike, aon_gadget: str = "cb") -> FlowNetwork:
    net, _ = reduce_st(H, s, t, aon_gadget)
    write_dimacs(net, out)
    return net
