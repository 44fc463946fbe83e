"""Hypergraph data model: nodes are dense ints, each edge carries its own splitting function."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .numeric import Number


@dataclass(frozen=True)
class Hyperedge:
    """A node tuple kept in sorted order plus the splitting function over its slots.

    Slot ``k`` of the splitting function refers to ``nodes[k]``.  Use
    :func:`make_edge` to build one from nodes in arbitrary order; it relabels
    slot-dependent functions so that they keep referring to the same nodes.
    """

    nodes: tuple
    splitting: object

    @property
    def r(self) -> int:
        return len(self.nodes)

    def slots_in(self, S) -> tuple[int, ...]:
        return tuple(k for k, v in enumerate(self.nodes) if v in S)

    def penalty(self, S) -> Number:
        return self.splitting.penalty(self.slots_in(S))


def make_edge(nodes: Iterable[int], splitting) -> Hyperedge:
    nodes = tuple(nodes)
    order = sorted(nodes)
    if order == list(nodes) or len(set(nodes)) != len(nodes):
        return Hyperedge(tuple(nodes), splitting)
    pos = {v: k for k, v in enumerate(order)}
    mapping = [pos[v] for v in nodes]
    return Hyperedge(tuple(order), splitting.permuted(mapping))


@dataclass(frozen=True)
class Hypergraph:
    n: int
    edges: tuple = ()
    labels: Mapping[int, str] | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))

    @classmethod
    def build(cls, n: int, edges: Iterable[tuple[Sequence[int], object]], labels=None) -> "Hypergraph":
        return cls(n, tuple(make_edge(nodes, f) for nodes, f in edges), labels)

    @property
    def nodes(self) -> range:
        return range(self.n)

    def label(self, v: int) -> str:
        if self.labels and v in self.labels:
            return self.labels[v]
        return str(v)

    def validate(self) -> list[str]:
        return validate(self)

    def cut_value(self, S) -> Number:
        return cut_value(self, S)

    def neighbors(self, v: int) -> set[int]:
        out = set()
        for e in self.edges:
            if v in e.nodes:
                out.update(e.nodes)
        out.discard(v)
        return out

    def with_edges(self, edges: Iterable[Hyperedge]) -> "Hypergraph":
        return Hypergraph(self.n, tuple(edges), self.labels)


def validate(H: Hypergraph) -> list[str]:
    """Structural problems as readable strings; an empty list means well-formed."""
    problems = []
    for i, e in enumerate(H.edges):
        if len(e.nodes) < 2:
            problems.append(f"edge {i}: fewer than 2 nodes")
        bad = [v for v in e.nodes if not (isinstance(v, int) and 0 <= v < H.n)]
        if bad:
            problems.append(f"edge {i}: node out of range {bad}")
        if len(set(e.nodes)) != len(e.nodes):
            problems.append(f"edge {i}: duplicate node")
        r = getattr(e.splitting, "r", None)
        if r != len(e.nodes):
            problems.append(f"edge {i}: arity mismatch (edge has {len(e.nodes)} nodes, function has arity {r})")
    if H.labels:
        seen = {}
        for v, name in H.labels.items():
            if name in seen:
                problems.append(f"label {name!r} used by nodes {seen[name]} and {v}")
            seen[name] = v
            if not 0 <= v < H.n:
                problems.append(f"label for node out of range {v}")
    return problems


def cut_value(H: Hypergraph, S) -> Number:
    S = set(S)
    total = Fraction(0)
    for e in H.edges:
        total = total + e.penalty(S)
    return total


@dataclass(frozen=True)
class CutSolution:
    source_set: frozenset
    value: Number

    def __post_init__(self):
        object.__setattr__(self, "source_set", frozenset(self.source_set))
