"""Exact max-flow / min-cut over rational capacities.

Two independent engines:

* ``"dinic"`` scales every capacity by the common denominator and runs Dinic's
  blocking-flow algorithm on Python integers.
* ``"rational"`` runs shortest-augmenting-path (Edmonds-Karp) directly on
  ``Fraction`` capacities.

Both return the inclusion-minimal minimum cut: the nodes reachable from the
source in the final residual graph.
"""
from __future__ import annotations

import io
import os
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, TextIO

from .errors import ParseError
from .numeric import INF, Number, as_rational, common_denominator, fmt


@dataclass
class FlowNetwork:
    node_count: int
    source: int
    sink: int
    arcs: list = field(default_factory=list)
    node_names: dict = field(default_factory=dict)
    # value that stands in for infinite capacity once the network has been lowered
    infinity: Fraction | None = None

    def __post_init__(self):
        if self.source == self.sink:
            raise ValueError("source and sink must differ")
        for v in (self.source, self.sink):
            if not 0 <= v < self.node_count:
                raise ValueError(f"terminal {v} outside 0..{self.node_count - 1}")

    def add_node(self, name=None) -> int:
        v = self.node_count
        self.node_count += 1
        if name is not None:
            self.node_names[v] = name
        return v

    def add_arc(self, u: int, v: int, cap) -> None:
        cap = as_rational(cap)
        if u == v:
            raise ValueError(f"self-loop at node {u}")
        if not (0 <= u < self.node_count and 0 <= v < self.node_count):
            raise ValueError(f"arc ({u}, {v}) outside 0..{self.node_count - 1}")
        if cap is not INF and cap < 0:
            raise ValueError(f"negative capacity {fmt(cap)}")
        self.arcs.append((u, v, cap))

    def add_edge(self, u: int, v: int, cap) -> None:
        """Undirected edge, stored as two opposed arcs."""
        self.add_arc(u, v, cap)
        self.add_arc(v, u, cap)

    @property
    def has_infinite(self) -> bool:
        return any(c is INF for _, _, c in self.arcs)

    def infinity_value(self) -> Fraction:
        return sum((c for _, _, c in self.arcs if c is not INF), Fraction(0)) + 1

    def lowered(self) -> tuple["FlowNetwork", Fraction | None]:
        """Copy with ``INF`` replaced by (sum of finite capacities) + 1."""
        if not self.has_infinite:
            return self, self.infinity
        big = self.infinity_value()
        arcs = [(u, v, big if c is INF else c) for u, v, c in self.arcs]
        return FlowNetwork(self.node_count, self.source, self.sink, arcs, dict(self.node_names), big), big

    def scaled(self, lam) -> "FlowNetwork":
        lam = as_rational(lam)
        arcs = [(u, v, c * lam) for u, v, c in self.arcs]
        big = self.infinity * lam if self.infinity is not None else None
        return FlowNetwork(self.node_count, self.source, self.sink, arcs, dict(self.node_names), big)


@dataclass(frozen=True)
class MinCutResult:
    value: Number
    source_side: frozenset
    flows: tuple = field(default=(), repr=False, compare=False)


def directed_cut_value(net: FlowNetwork, S: Iterable[int]) -> Number:
    """Total capacity of arcs leaving ``S``; arcs entering ``S`` are free."""
    S = set(S)
    total = Fraction(0)
    for u, v, c in net.arcs:
        if u in S and v not in S:
            total = total + c
    return total


class _Residual:
    """Paired forward/backward residual arcs; arc ``k ^ 1`` is the reverse of ``k``."""

    def __init__(self, n: int, arcs, caps):
        self.head = []
        self.cap = []
        self.adj = [[] for _ in range(n)]
        for (u, v, _), c in zip(arcs, caps):
            self.adj[u].append(len(self.head))
            self.head.append(v)
            self.cap.append(c)
            self.adj[v].append(len(self.head))
            self.head.append(u)
            self.cap.append(0 * c)
        self.original = list(caps)

    def reachable(self, s: int) -> set:
        seen = {s}
        dq = deque([s])
        while dq:
            u = dq.popleft()
            for k in self.adj[u]:
                v = self.head[k]
                if self.cap[k] > 0 and v not in seen:
                    seen.add(v)
                    dq.append(v)
        return seen

    def flows(self) -> list:
        return [self.original[k] - self.cap[2 * k] for k in range(len(self.original))]


def _dinic(res: _Residual, s: int, t: int) -> int:
    n = len(res.adj)
    head, cap, adj = res.head, res.cap, res.adj
    total = 0
    while True:
        level = [-1] * n
        level[s] = 0
        dq = deque([s])
        while dq:
            u = dq.popleft()
            for k in adj[u]:
                if cap[k] > 0 and level[head[k]] < 0:
                    level[head[k]] = level[u] + 1
                    dq.append(head[k])
        if level[t] < 0:
            return total
        it = [0] * n
        # iterative DFS for blocking flow
        while True:
            path = []
            u = s
            while u != t:
                advanced = False
                while it[u] < len(adj[u]):
                    k = adj[u][it[u]]
                    v = head[k]
                    if cap[k] > 0 and level[v] == level[u] + 1:
                        path.append(k)
                        u = v
                        advanced = True
                        break
                    it[u] += 1
                if not advanced:
                    if u == s:
                        break
                    level[u] = -1  # dead end
                    k = path.pop()
                    u = head[k ^ 1]
                    it[u] += 1
            if u != t:
                break
            push = min(cap[k] for k in path)
            for k in path:
                cap[k] -= push
                cap[k ^ 1] += push
            total += push


def _edmonds_karp(res: _Residual, s: int, t: int) -> Fraction:
    head, cap, adj = res.head, res.cap, res.adj
    total = Fraction(0)
    while True:
        parent = {s: None}
        dq = deque([s])
        while dq and t not in parent:
            u = dq.popleft()
            for k in adj[u]:
                v = head[k]
                if cap[k] > 0 and v not in parent:
                    parent[v] = k
                    dq.append(v)
        if t not in parent:
            return total
        path = []
        v = t
        while parent[v] is not None:
            k = parent[v]
            path.append(k)
            v = head[k ^ 1]
        push = min(cap[k] for k in path)
        for k in path:
            cap[k] -= push
            cap[k ^ 1] += push
        total += push


def min_cut(net: FlowNetwork, method: str = "dinic") -> MinCutResult:
    """Maximum flow value and the minimal source side of a minimum cut.

    Infinite arcs are lowered first; a cut value reaching the lowered infinity
    is reported as ``INF``.
    """
    low, big = net.lowered()
    caps = [c for _, _, c in low.arcs]
    if method == "dinic":
        d = common_denominator(caps)
        res = _Residual(low.node_count, low.arcs, [int(c * d) for c in caps])
        value = Fraction(_dinic(res, low.source, low.sink), d)
        flows = tuple(Fraction(f, d) for f in res.flows())
    elif method == "rational":
        res = _Residual(low.node_count, low.arcs, [Fraction(c) for c in caps])
        value = _edmonds_karp(res, low.source, low.sink)
        flows = tuple(res.flows())
    else:
        raise ValueError(f"unknown max-flow method {method!r}")
    side = frozenset(res.reachable(low.source))
    if big is not None and value >= big:
        value = INF
    return MinCutResult(value, side, flows)


# -- DIMACS -------------------------------------------------------------------------

def write_dimacs(net: FlowNetwork, out: TextIO | str | os.PathLike) -> None:
    """``p max`` format with integer capacities; 1-based node ids.

    Comment lines record the scale denominator, the value used for infinite
    arcs, and ``c node <id> <name>`` for every named node.
    """
    if not hasattr(out, "write"):
        with open(out, "w") as fh:
            write_dimacs(net, fh)
        return
    low, big = net.lowered()
    d = common_denominator(c for _, _, c in low.arcs)
    out.write(f"c scale {d}\n")
    if big is not None:
        out.write(f"c infinity {int(big * d)}\n")
    for v in sorted(low.node_names):
        out.write(f"c node {v + 1} {low.node_names[v]}\n")
    out.write(f"p max {low.node_count} {len(low.arcs)}\n")
    out.write(f"n {low.source + 1} s\n")
    out.write(f"n {low.sink + 1} t\n")
    for u, v, c in low.arcs:
        out.write(f"a {u + 1} {v + 1} {int(c * d)}\n")


def read_dimacs(src: TextIO | str | os.PathLike) -> FlowNetwork:
    """Parse a ``p max`` file.  Capacities are divided by the recorded scale and
    the recorded infinity value, if any, is kept on the network."""
    if not hasattr(src, "read"):
        with open(src) as fh:
            return read_dimacs(fh)
    scale = 1
    infinity = None
    names = {}
    header = None
    s = t = None
    arcs = []
    for lineno, raw in enumerate(src, start=1):
        parts = raw.split()
        if not parts:
            continue
        tag = parts[0]
        try:
            if tag == "c":
                if len(parts) >= 3 and parts[1] == "scale":
                    scale = int(parts[2])
                elif len(parts) >= 3 and parts[1] == "infinity":
                    infinity = int(parts[2])
                elif len(parts) >= 4 and parts[1] == "node":
                    names[int(parts[2]) - 1] = " ".join(parts[3:])
            elif tag == "p":
                if len(parts) != 4 or parts[1] != "max":
                    raise ParseError("expected 'p max N M'", lineno)
                header = (int(parts[2]), int(parts[3]))
            elif tag == "n":
                if parts[2] == "s":
                    s = int(parts[1]) - 1
                elif parts[2] == "t":
                    t = int(parts[1]) - 1
                else:
                    raise ParseError(f"unknown terminal designator {parts[2]!r}", lineno)
            elif tag == "a":
                arcs.append((int(parts[1]) - 1, int(parts[2]) - 1, int(parts[3])))
            else:
                raise ParseError(f"unknown line type {tag!r}", lineno)
        except (IndexError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"malformed line {raw.strip()!r}", lineno) from None
    if header is None or s is None or t is None:
        raise ParseError("missing problem line or terminals")
    if len(arcs) != header[1]:
        raise ParseError(f"header promises {header[1]} arcs, found {len(arcs)}")
    big = Fraction(infinity, scale) if infinity is not None else None
    net = FlowNetwork(header[0], s, t, node_names=names, infinity=big)
    for u, v, c in arcs:
        net.add_arc(u, v, Fraction(c, scale))
    return net


def dimacs_string(net: FlowNetwork) -> str:
    buf = io.StringIO()
    write_dimacs(net, buf)
    return buf.getvalue()
