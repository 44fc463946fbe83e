"""Seed-based s-t experiments: attach super terminals, sweep ``w2``, compare with Jaccard.

The super source is tied by infinite 2-node edges to the source seed and to
every neighbor of the source seed that is not also a neighbor of the sink seed
(and symmetrically for the super sink).  The sweep then replaces every finite
edge's penalties by ``[w1, w2, w2, ...]`` times that edge's weight and records
the minimal-source-side minimum cut at each grid point.
"""
from __future__ import annotations

import random
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NotReducible, SeedNotFound, SeedsAdjacentWarning
from .hypergraph import Hypergraph, make_edge
from .numeric import INF, as_rational
from .reduction import solve_st
from .splitting import SymmetricCB, all_or_nothing

SUPER_SOURCE_LABEL = "<s>"
SUPER_SINK_LABEL = "<t>"


def jaccard(A: Iterable, B: Iterable) -> Fraction:
    A, B = set(A), set(B)
    if not A and not B:
        return Fraction(1)
    return Fraction(len(A & B), len(A | B))


def parse_grid(text: str) -> tuple[Fraction, Fraction, Fraction]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError("grid must be start:stop:step")
    return tuple(as_rational(p) for p in parts)


def grid_points(start, stop, step) -> list[Fraction]:
    """Inclusive arithmetic grid in exact arithmetic."""
    start, stop, step = as_rational(start), as_rational(stop), as_rational(step)
    if step <= 0:
        raise ValueError("grid step must be positive")
    if stop < start:
        raise ValueError("grid stop lies below start")
    count = int((stop - start) / step)
    return [start + i * step for i in range(count + 1)]


def _resolve(H: Hypergraph, seed) -> int:
    if isinstance(seed, int) and not isinstance(seed, bool):
        if 0 <= seed < H.n:
            return seed
    elif H.labels:
        for v, name in H.labels.items():
            if name == seed:
                return v
    elif isinstance(seed, str) and seed.isdigit() and 1 <= int(seed) <= H.n:
        return int(seed) - 1
    raise SeedNotFound(seed)


def build_super_st(H: Hypergraph, s_seed, t_seed) -> tuple[Hypergraph, int, int]:
    """Add super source ``H.n`` and super sink ``H.n + 1`` with infinite attachments."""
    a, b = _resolve(H, s_seed), _resolve(H, t_seed)
    if a == b:
        raise ValueError("seeds must be distinct")
    na, nb = H.neighbors(a), H.neighbors(b)
    if b in na:
        warnings.warn(f"seeds {H.label(a)!r} and {H.label(b)!r} share a hyperedge", SeedsAdjacentWarning, stacklevel=2)
    attach_s = {a} | (na - nb - {b})
    attach_t = {b} | (nb - na - {a})
    s, t = H.n, H.n + 1
    hard = SymmetricCB(2, (INF,), name="hard")
    edges = list(H.edges)
    edges += [make_edge((s, v), hard) for v in sorted(attach_s)]
    edges += [make_edge((v, t), hard) for v in sorted(attach_t)]
    labels = dict(H.labels) if H.labels else {v: str(v + 1) for v in range(H.n)}
    labels[s], labels[t] = SUPER_SOURCE_LABEL, SUPER_SINK_LABEL
    return Hypergraph(H.n + 2, tuple(edges), labels), s, t


def _is_hard(f) -> bool:
    return isinstance(f, SymmetricCB) and INF in f.w


def reweight(H: Hypergraph, w1, w2) -> Hypergraph:
    """Each finite CB edge gets penalties ``[w1, w2, w2, ...] * (its current w_1 / 1)``."""
    w1, w2 = as_rational(w1), as_rational(w2)
    edges = []
    for idx, e in enumerate(H.edges):
        f = e.splitting
        if _is_hard(f):
            edges.append(e)
            continue
        if not isinstance(f, SymmetricCB):
            raise NotReducible(idx, "the sweep needs symmetric cardinality-based edges")
        q = f.q
        base = f.w[0] if q else Fraction(1)
        w = ([w1] + [w2] * (q - 1))[:q]
        edges.append(make_edge(e.nodes, SymmetricCB(e.r, tuple(x * base for x in w))))
    return H.with_edges(edges)


@dataclass(frozen=True)
class SweepRow:
    w2: Fraction
    value: Fraction
    source_size: int  # original nodes on the source side (super terminals excluded)
    inter: int
    union: int

    @property
    def jaccard(self) -> Fraction:
        return Fraction(1) if self.union == 0 else Fraction(self.inter, self.union)


def _solve_at(args):
    H, s, t, w1, w2 = args
    sol = solve_st(reweight(H, w1, w2), s, t)
    return sol.value, frozenset(sol.source_set - {s, t})


def sweep_w2(H: Hypergraph, s: int, t: int, grid: Sequence = (1, 2, Fraction(1, 20)), w1=1,
             workers: int | None = None) -> list[SweepRow]:
    """One row per grid point, in grid order.

    The baseline is the solution at ``w2 = w1``; Jaccard compares source sets
    over the original nodes (s and t excluded).
    """
    w1 = as_rational(w1)
    points = grid_points(*grid)
    has_pairs = [i for i, e in enumerate(H.edges) if not _is_hard(e.splitting) and e.r >= 4]
    for w2 in points:
        if has_pairs and not w1 <= w2 <= 2 * w1:
            raise NotReducible(has_pairs[0], f"w2 = {w2} lies outside the submodular range [{w1}, {2 * w1}]")
    jobs = [(H, s, t, w1, w1)] + [(H, s, t, w1, w2) for w2 in points]
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_solve_at, jobs))
    else:
        results = [_solve_at(j) for j in jobs]
    _, baseline = results[0]
    rows = []
    for w2, (value, side) in zip(points, results[1:]):
        rows.append(SweepRow(w2, value, len(side), len(side & baseline), len(side | baseline)))
    return rows


def synthetic_hypergraph(n: int = 50, m: int = 120, seed: int = 2, max_size: int = 6, window: int = 10) -> Hypergraph:
    """Random labeled hypergraph laid out along a line, for sweep demos and tests.

    Each edge draws 2..max_size nodes from a random window of consecutive
    nodes, so seeds at opposite ends (``n0``, ``n{n-1}``) are far apart and the
    best cut position shifts as ``w2`` changes.
    """
    rng = random.Random(seed)
    edges = []
    for _ in range(m):
        size = rng.randint(2, max_size)
        lo = rng.randrange(0, n - window + 1)
        nodes = rng.sample(range(lo, lo + window), size)
        edges.append(make_edge(nodes, all_or_nothing(size, rng.randint(1, 3))))
    return Hypergraph(n, tuple(edges), {v: f"n{v}" for v in range(n)})
