"""Brute-force exact solvers used as ground truth for every reduction."""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence

from .errors import TooLarge
from .hypergraph import CutSolution, Hypergraph
from .multiway import is_multiway, multiway_cut_value
from .numeric import INF, Number, common_denominator

MAX_FREE_NODES = 22
MAX_ASSIGNMENTS = 1 << 21
_TABLE_ARITY = 16


def _edge_tables(H: Hypergraph):
    """Per-edge integer penalty lookups sharing one scale; INF becomes ``big``."""
    raw = []
    for e in H.edges:
        f = e.splitting
        if e.r <= _TABLE_ARITY:
            raw.append([f.mask_penalty(m) for m in range(1 << e.r)])
        else:
            # cardinality-based edges can be tabulated by size instead
            raw.append(("size", [f.size_penalty(i) for i in range(e.r + 1)]))
    values = []
    for t in raw:
        values.extend(t[1] if isinstance(t, tuple) else t)
    d = common_denominator(values)
    big = sum(int(v * d) for v in values if v is not INF) + 1
    tables = []
    for t in raw:
        kind = "size" if isinstance(t, tuple) else "mask"
        vals = t[1] if kind == "size" else t
        tables.append((kind, [big if v is INF else int(v * d) for v in vals]))
    return tables, d, big


def brute_st_cut(H: Hypergraph, s: int, t: int) -> CutSolution:
    """Minimum over every S with s in S and t outside.

    Ties go to the smaller source set, then the lexicographically smaller sorted
    node tuple.  Non-terminal membership is walked in Gray-code order so each
    step updates only the edges touching one node.
    """
    if s == t:
        raise ValueError("s and t must differ")
    free = [v for v in range(H.n) if v not in (s, t)]
    if len(free) > MAX_FREE_NODES:
        raise TooLarge(f"{len(free)} free nodes exceed the brute-force limit {MAX_FREE_NODES}")
    tables, d, big = _edge_tables(H)
    incident = {v: [] for v in range(H.n)}
    for idx, e in enumerate(H.edges):
        for slot, v in enumerate(e.nodes):
            incident[v].append((idx, slot))
    kinds = [k for k, _ in tables]
    vals = [v for _, v in tables]
    state = [0] * len(H.edges)  # source-side slot mask, or count for size tables
    for idx, e in enumerate(H.edges):
        if s in e.nodes:
            slot = e.nodes.index(s)
            state[idx] = 1 if kinds[idx] == "size" else 1 << slot

    def lookup(idx):
        return vals[idx][state[idx]]

    total = sum(lookup(i) for i in range(len(H.edges)))
    inside = [False] * H.n
    inside[s] = True
    size = 1

    best_key = (total, size, (s,))
    for step in range(1, 1 << len(free)):
        v = free[(step & -step).bit_length() - 1]
        entering = not inside[v]
        inside[v] = entering
        size += 1 if entering else -1
        for idx, slot in incident[v]:
            before = lookup(idx)
            if kinds[idx] == "size":
                state[idx] += 1 if entering else -1
            else:
                state[idx] ^= 1 << slot
            total += lookup(idx) - before
        if total < best_key[0] or (total == best_key[0] and size <= best_key[1]):
            key = (total, size, tuple(u for u in range(H.n) if inside[u]))
            if key < best_key:
                best_key = key
    value, _, members = best_key
    return CutSolution(frozenset(members), INF if value >= big else Fraction(value, d))


def brute_multiway(H: Hypergraph, terminals: Sequence[int]) -> tuple[Number, dict]:
    """Minimum multiway objective over every assignment with terminal i in cluster i.

    Two-way splitting functions are accepted only for k = 2, with cluster 0 as
    the source side.
    """
    k = len(terminals)
    if len(set(terminals)) != k:
        raise ValueError("terminals must be distinct")
    free = [v for v in range(H.n) if v not in terminals]
    if k ** len(free) > MAX_ASSIGNMENTS:
        raise TooLarge(f"{k}^{len(free)} assignments exceed the brute-force limit")
    if k != 2 and any(not is_multiway(e.splitting) for e in H.edges):
        raise ValueError("two-way splitting functions need exactly 2 terminals")
    memo = [{} for _ in H.edges]

    def edge_cost(idx, labels):
        cache = memo[idx]
        if labels not in cache:
            f = H.edges[idx].splitting
            if is_multiway(f):
                cache[labels] = f.multiway_penalty(labels)
            else:
                cache[labels] = f.penalty(j for j, lab in enumerate(labels) if lab == 0)
        return cache[labels]

    assignment = [0] * H.n
    for i, t in enumerate(terminals):
        assignment[t] = i
    best_value, best_assign = None, None
    for combo in itertools.product(range(k), repeat=len(free)):
        for v, c in zip(free, combo):
            assignment[v] = c
        total = Fraction(0)
        for idx, e in enumerate(H.edges):
            total = total + edge_cost(idx, tuple(assignment[v] for v in e.nodes))
            if best_value is not None and total >= best_value:
                break
        else:
            if best_value is None or total < best_value:
                best_value, best_assign = total, dict(enumerate(assignment))
                if best_value == 0:
                    break  # penalties are nonnegative
    if best_assign is None:
        best_assign = dict(enumerate(assignment))
        best_value = multiway_cut_value(H, best_assign)
    return best_value, best_assign
