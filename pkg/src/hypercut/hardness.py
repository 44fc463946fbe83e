"""Generators for the hard-instance families.

Each generator is deterministic.  Terminals come first, then the problem's own
nodes (graph vertices, literals or variables), then auxiliary nodes in input
order.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .hypergraph import Hypergraph
from .multiway import rainbow_split
from .splitting import NeedyNode, SymmetricCB

S_NODE, T_NODE = 0, 1


@dataclass(frozen=True)
class CNF:
    """Clauses of nonzero ints: ``i`` is ``x_i``, ``-i`` is its negation."""

    num_vars: int
    clauses: tuple

    def __post_init__(self):
        clauses = tuple(tuple(c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        for c in clauses:
            if not c:
                raise ValueError("empty clause")
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} outside 1..{self.num_vars}")


def _edge_list(edges) -> list[tuple[int, int]]:
    out = []
    for u, v in edges:
        if u == v:
            raise ValueError("graph must be simple (self-loop found)")
        out.append((u, v))
    if len({frozenset(e) for e in out}) != len(out):
        raise ValueError("graph must be simple (parallel edge found)")
    return out


def gen_4cb_from_maxcut(n: int, edges: Iterable[tuple[int, int]], w=(1, Fraction(1, 2))):
    """One 4-node edge (s, t, u, v) per graph edge.  Vertex ``u`` becomes node ``u + 2``."""
    f = SymmetricCB(4, tuple(w))
    hyper = [((S_NODE, T_NODE, u + 2, v + 2), f) for u, v in _edge_list(edges)]
    labels = {S_NODE: "s", T_NODE: "t", **{u + 2: f"v{u}" for u in range(n)}}
    return Hypergraph.build(n + 2, hyper, labels), S_NODE, T_NODE


def default_rj_weights(r: int, j: int) -> SymmetricCB:
    """``w_1 = 1`` and every other penalty ``1/2``, so ``0 < w_j < w_1`` and ``w_j`` is minimal."""
    return SymmetricCB(r, (Fraction(1),) + (Fraction(1, 2),) * (r // 2 - 1))


def gen_rj_gadget_instance(r: int, j: int, n: int, edges: Iterable[tuple[int, int]], f: SymmetricCB | None = None):
    """Per graph edge (u, v): fresh aux sets A (j-2), B (r-j-2), U (j+1), V (r-j+1) and
    the edges ``{u,v,s,t} + A + B``, ``{u} + B + U``, ``{v} + A + V``."""
    if r < 4 or not 2 <= j <= r // 2:
        raise ValueError("need r >= 4 and 2 <= j <= r // 2")
    f = f or default_rj_weights(r, j)
    if f.r != r:
        raise ValueError("splitting function arity must equal r")
    next_id = n + 2
    hyper = []
    labels = {S_NODE: "s", T_NODE: "t", **{u + 2: f"v{u}" for u in range(n)}}
    for idx, (u, v) in enumerate(_edge_list(edges)):
        groups = {}
        for name, size in (("A", j - 2), ("B", r - j - 2), ("U", j + 1), ("V", r - j + 1)):
            groups[name] = list(range(next_id, next_id + size))
            for k, x in enumerate(groups[name]):
                labels[x] = f"g{idx}.{name}{k}"
            next_id += size
        A, B, U, V = groups["A"], groups["B"], groups["U"], groups["V"]
        hyper.append(([u + 2, v + 2, S_NODE, T_NODE, *A, *B], f))
        hyper.append(([u + 2, *B, *U], f))
        hyper.append(([v + 2, *A, *V], f))
    return Hypergraph.build(next_id, hyper, labels), S_NODE, T_NODE


def literal_node(lit: int) -> int:
    """``x_i`` -> ``2i``, ``not x_i`` -> ``2i + 1`` (after s = 0, t = 1)."""
    i = abs(lit)
    return 2 * i if lit > 0 else 2 * i + 1


def _literal_labels(num_vars: int) -> dict:
    labels = {S_NODE: "s", T_NODE: "t"}
    for i in range(1, num_vars + 1):
        labels[literal_node(i)] = f"x{i}"
        labels[literal_node(-i)] = f"~x{i}"
    return labels


def _variable_edges(num_vars: int, weight) -> list:
    out = []
    for i in range(1, num_vars + 1):
        pair = (literal_node(i), literal_node(-i))
        out.append(((S_NODE, *pair), NeedyNode(3, 0, weight)))
        out.append(((T_NODE, *pair), NeedyNode(3, 0, weight)))
    return out


def gen_needy_from_sat(cnf: CNF, weight=1):
    """Needy-node instance whose minimum cut is zero iff ``cnf`` is satisfiable.

    Sink side means true.  Each variable gets two edges around its literal pair
    (needy s, needy t); each clause gets its literals plus a needy t.
    """
    hyper = _variable_edges(cnf.num_vars, weight)
    for clause in cnf.clauses:
        nodes = list(dict.fromkeys(literal_node(l) for l in clause))
        hyper.append(((T_NODE, *nodes), NeedyNode(len(nodes) + 1, 0, weight)))
    return Hypergraph.build(2 * cnf.num_vars + 2, hyper, _literal_labels(cnf.num_vars)), S_NODE, T_NODE


def gen_needy3_from_3sat(cnf: CNF, weight=1):
    """3-uniform variant: clause (a, b, c) adds node ``t_abc`` with edges
    ``(t_abc, a, b)`` (needy ``t_abc``) and ``(t, t_abc, c)`` (needy t)."""
    hyper = _variable_edges(cnf.num_vars, weight)
    labels = _literal_labels(cnf.num_vars)
    next_id = 2 * cnf.num_vars + 2
    for idx, clause in enumerate(cnf.clauses):
        nodes = [literal_node(l) for l in clause]
        if len(nodes) != 3 or len(set(nodes)) != 3:
            raise ValueError(f"clause {idx} must have exactly 3 distinct literals")
        aux = next_id
        next_id += 1
        labels[aux] = f"c{idx}"
        hyper.append(((aux, nodes[0], nodes[1]), NeedyNode(3, 0, weight)))
        hyper.append(((T_NODE, aux, nodes[2]), NeedyNode(3, 0, weight)))
    return Hypergraph.build(next_id, hyper, labels), S_NODE, T_NODE


def _check_nae_clauses(num_vars: int, clauses) -> list[tuple[int, int, int]]:
    out = []
    for idx, c in enumerate(clauses):
        c = tuple(c)
        if len(c) != 3 or len(set(c)) != 3:
            raise ValueError(f"clause {idx} must name 3 distinct variables")
        if any(not 1 <= x <= num_vars for x in c):
            raise ValueError(f"clause {idx} names a variable outside 1..{num_vars}")
        out.append(c)
    return out


def gen_5cb_from_monnae3sat(num_vars: int, clauses: Iterable[Sequence[int]]):
    """Edge (s, t, i, j, k) per clause with ``w = [1, 0]``; variable ``i`` is node ``i + 1``."""
    f = SymmetricCB(5, (Fraction(1), Fraction(0)))
    hyper = [((S_NODE, T_NODE, i + 1, j + 1, k + 1), f) for i, j, k in _check_nae_clauses(num_vars, clauses)]
    labels = {S_NODE: "s", T_NODE: "t", **{i + 1: f"x{i}" for i in range(1, num_vars + 1)}}
    return Hypergraph.build(num_vars + 2, hyper, labels), S_NODE, T_NODE


RED, BLUE, GREEN = 0, 1, 2


def sperner_nodes(i: int) -> tuple[int, int, int]:
    """Nodes ``(i1, i2, i3)`` of variable ``i`` (1-based), after the three terminals."""
    base = 3 + 3 * (i - 1)
    return base, base + 1, base + 2


def gen_rainbow_from_monnae3sat(num_vars: int, clauses: Iterable[Sequence[int]], weight=1):
    """3-uniform rainbow-split instance with terminals red, blue, green.

    Returns ``(H, [red, blue, green])``.  The optimum is zero iff the clauses are
    not-all-equal satisfiable.
    """
    f = rainbow_split(3, weight)
    hyper = []
    labels = {RED: "red", BLUE: "blue", GREEN: "green"}
    for i in range(1, num_vars + 1):
        a, b, c = sperner_nodes(i)
        labels.update({a: f"x{i}.1", b: f"x{i}.2", c: f"x{i}.3"})
        for nodes in ((a, GREEN, RED), (a, RED, b), (b, RED, BLUE), (b, BLUE, c), (c, BLUE, GREEN), (c, GREEN, a)):
            hyper.append((nodes, f))
    for i, j, k in _check_nae_clauses(num_vars, clauses):
        hyper.append(((sperner_nodes(i)[0], sperner_nodes(j)[1], sperner_nodes(k)[2]), f))
    return Hypergraph.build(3 + 3 * num_vars, hyper, labels), [RED, BLUE, GREEN]
