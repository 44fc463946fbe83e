"""Multiway splitting functions and node-weighted multiway cut.

A multiway splitting function charges a hyperedge according to how a
k-way partition cuts it.  Partitions are passed as per-slot cluster labels
(any hashable values) or as a list of slot collections.  Clusters are
numbered from 0 in the order of the terminal list.

Move-based submodular functions reduce to node-weighted multiway cut (NMC):
every hypergraph node gets infinite weight and each hyperedge contributes a
few finite-weight auxiliary nodes.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import NotReducible, NotSubmodular, TooLarge
from .hypergraph import Hypergraph, validate
from .maxflow import FlowNetwork, min_cut
from .numeric import INF, Number, as_rational, fmt, power
from .splitting import SubmodularityReport, SymmetricCB, _concavity_report

MAX_EXACT_FINITE = 22
MAX_LABELINGS = 1 << 21


def integer_partitions(r: int, largest: int | None = None):
    """Nonincreasing tuples of positive ints summing to ``r``."""
    largest = r if largest is None else largest
    if r == 0:
        yield ()
        return
    for first in range(min(r, largest), 0, -1):
        for rest in integer_partitions(r - first, first):
            yield (first,) + rest


def _labels(partition) -> tuple:
    partition = list(partition)
    if all(not isinstance(x, (set, frozenset, list, tuple)) for x in partition):
        return tuple(partition)
    slots = {}
    for c, cluster in enumerate(partition):
        for v in cluster:
            if v in slots:
                raise ValueError(f"slot {v} appears in two clusters")
            slots[v] = c
    if sorted(slots) != list(range(len(slots))):
        raise ValueError("clusters must cover slots 0..r-1")
    return tuple(slots[v] for v in range(len(slots)))


def signature_of(partition) -> tuple:
    """Cluster sizes, largest first."""
    return tuple(sorted(Counter(_labels(partition)).values(), reverse=True))


class _Multiway:
    r: int

    def permuted(self, mapping):
        return self

    def multiway_penalty(self, labels: Sequence) -> Number:
        return self.signature_penalty(signature_of(labels))

    def penalty_by_source(self, S) -> Number:
        """Two-way view: slots in ``S`` form one cluster, the rest another."""
        S = set(S)
        return self.multiway_penalty(tuple(0 if i in S else 1 for i in range(self.r)))


@dataclass(frozen=True)
class MoveBased(_Multiway):
    """``m[i-1]`` is charged when ``i`` nodes lie outside the largest cluster."""

    r: int
    m: tuple
    name: str = field(default="", compare=False)

    def __post_init__(self):
        m = tuple(as_rational(x) for x in self.m)
        object.__setattr__(self, "m", m)
        if len(m) != self.r - 1:
            raise ValueError(f"move-based function on {self.r} nodes needs {self.r - 1} penalties, got {len(m)}")
        if any(x is INF or x < 0 for x in m):
            raise ValueError("move penalties must be finite and nonnegative")

    def signature_penalty(self, sig) -> Number:
        i = self.r - sig[0]
        return Fraction(0) if i == 0 else self.m[i - 1]

    def as_two_way(self) -> SymmetricCB:
        return SymmetricCB(self.r, self.m[: self.r // 2])

    def scaled(self, c) -> "MoveBased":
        c = as_rational(c)
        return MoveBased(self.r, tuple(x * c for x in self.m), self.name)

    def spec(self) -> str:
        return "move " + " ".join(fmt(x) for x in self.m)


@dataclass(frozen=True)
class ClusterBased(_Multiway):
    """``h[t-2]`` is charged when the edge meets ``t >= 2`` clusters."""

    r: int
    h: tuple
    name: str = field(default="", compare=False)

    def __post_init__(self):
        h = tuple(as_rational(x) for x in self.h)
        object.__setattr__(self, "h", h)
        if len(h) != self.r - 1:
            raise ValueError(f"cluster-based function on {self.r} nodes needs {self.r - 1} penalties, got {len(h)}")
        if any(x is INF or x < 0 for x in h):
            raise ValueError("cluster penalties must be finite and nonnegative")

    def signature_penalty(self, sig) -> Number:
        return Fraction(0) if len(sig) == 1 else self.h[len(sig) - 2]

    def as_two_way(self) -> SymmetricCB:
        return SymmetricCB(self.r, (self.h[0],) * (self.r // 2))

    def scaled(self, c) -> "ClusterBased":
        c = as_rational(c)
        return ClusterBased(self.r, tuple(x * c for x in self.h), self.name)

    def spec(self) -> str:
        return "cluster " + " ".join(fmt(x) for x in self.h)


@dataclass(frozen=True)
class SignatureBased(_Multiway):
    """Penalty looked up by signature; unlisted signatures cost 0."""

    r: int
    table: Mapping
    exact: bool = True
    name: str = field(default="", compare=False)

    def __post_init__(self):
        table = {}
        for sig, pen in dict(self.table).items():
            sig = tuple(sorted(sig, reverse=True))
            if sum(sig) != self.r or any(x <= 0 for x in sig):
                raise ValueError(f"signature {sig} does not partition {self.r}")
            pen = as_rational(pen)
            if pen is INF or pen < 0:
                raise ValueError("signature penalties must be finite and nonnegative")
            if len(sig) == 1 and pen != 0:
                raise ValueError("an unsplit edge must cost 0")
            table[sig] = pen
        object.__setattr__(self, "table", table)

    def __hash__(self):
        return hash((self.r, tuple(sorted(self.table.items()))))

    def signature_penalty(self, sig) -> Number:
        return self.table.get(tuple(sig), Fraction(0))

    def as_two_way(self) -> SymmetricCB:
        return SymmetricCB(self.r, tuple(self.signature_penalty((self.r - i, i)) for i in range(1, self.r // 2 + 1)))

    def scaled(self, c) -> "SignatureBased":
        c = as_rational(c)
        return SignatureBased(self.r, {k: v * c for k, v in self.table.items()}, self.exact, self.name)

    def spec(self) -> str:
        body = ", ".join("+".join(map(str, k)) + ":" + fmt(v) for k, v in sorted(self.table.items()) if v != 0)
        return "sig { " + body + " }"


MULTIWAY_TYPES = (MoveBased, ClusterBased, SignatureBased)


def is_multiway(f) -> bool:
    return isinstance(f, MULTIWAY_TYPES)


# -- named forms --------------------------------------------------------------------

def all_or_nothing(r: int, c=1) -> MoveBased:
    c = as_rational(c)
    return MoveBased(r, (c,) * (r - 1), name="aon")


def sum_external_degrees(r: int, c=1) -> ClusterBased:
    c = as_rational(c)
    return ClusterBased(r, tuple(t * c for t in range(2, r + 1)), name="sed")


def k_minus_one(r: int, c=1) -> ClusterBased:
    c = as_rational(c)
    return ClusterBased(r, tuple((t - 1) * c for t in range(2, r + 1)), name="km1")


def rainbow_split(r: int, c=1) -> MoveBased:
    c = as_rational(c)
    return MoveBased(r, (Fraction(0),) * (r - 2) + (c,), name="rainbow")


def discount(r: int, alpha, c=1):
    """Sum of ``|cluster| ** alpha`` over every cluster but a largest one."""
    alpha = as_rational(alpha)
    if not 0 < alpha <= 1:
        raise ValueError("discount exponent must lie in (0, 1]")
    c = as_rational(c)
    if alpha == 1:
        return MoveBased(r, tuple(i * c for i in range(1, r)), name="mdiscount")
    table, exact = {}, True
    for sig in integer_partitions(r):
        total = Fraction(0)
        for size in sig[1:]:
            v, ok = power(size, alpha)
            exact &= ok
            total += v
        table[sig] = total * c
    return SignatureBased(r, table, exact=exact, name="mdiscount")


def evaluate_multiway(f, partition) -> Number:
    labels = _labels(partition)
    if len(labels) != f.r:
        raise ValueError(f"partition covers {len(labels)} slots, function has arity {f.r}")
    return f.multiway_penalty(labels)


def multiway_cut_value(H: Hypergraph, assignment) -> Number:
    """Objective of a full node assignment (sequence or mapping node -> cluster).

    Two-way splitting functions are allowed when only clusters 0 and 1 occur;
    cluster 0 plays the source side.
    """
    total = Fraction(0)
    for e in H.edges:
        labels = tuple(assignment[v] for v in e.nodes)
        f = e.splitting
        if is_multiway(f):
            total = total + f.multiway_penalty(labels)
        elif set(labels) <= {0, 1}:
            total = total + f.penalty(k for k, lab in enumerate(labels) if lab == 0)
        else:
            raise ValueError("two-way splitting functions need a partition into clusters 0 and 1")
    return total


# -- submodularity of move-based functions ------------------------------------------

def is_submodular_movebased(f: MoveBased) -> SubmodularityReport:
    """Conditions making every NMC basis weight nonnegative.

    Concavity of ``m`` (with ``m_0 = 0``) up to ``r - 2`` and a nondecreasing
    sequence.  Extending by ``m_r = m_{r-2}`` these are exactly the conditions
    under which the induced two-way function is submodular.
    """
    return _concavity_report(f.m, "m", "monotone")


def check_extension(f: MoveBased, m_r) -> None:
    """Only the extension ``m_r = m_{r-2}`` is supported."""
    expected = f.m[-2] if f.r >= 3 else Fraction(0)
    if as_rational(m_r) != expected:
        raise ValueError(
            f"unsupported extension m_r = {fmt(as_rational(m_r))}; only m_r = m_(r-2) = {fmt(expected)} "
            "is known to preserve submodularity (other choices are an open question)"
        )


def nmc_weights(f: MoveBased) -> tuple:
    """Coefficients ``c`` with ``sum_j c_j min(i, j) = m_i`` for ``i = 1..r-1``."""
    rep = is_submodular_movebased(f)
    if not rep.is_submodular:
        raise NotSubmodular(f"move penalties {f.spec()!r} are not submodular: {rep.violations[0]}", rep)
    m = (Fraction(0),) + f.m + (f.m[-1],)
    return tuple(2 * m[j] - m[j - 1] - m[j + 1] for j in range(1, f.r))


# -- node-weighted graphs -----------------------------------------------------------

@dataclass
class NodeWeightedGraph:
    node_count: int = 0
    weights: list = field(default_factory=list)
    edges: list = field(default_factory=list)
    terminals: list = field(default_factory=list)
    names: dict = field(default_factory=dict)

    def add_node(self, weight, name=None) -> int:
        v = self.node_count
        self.node_count += 1
        self.weights.append(as_rational(weight))
        if name is not None:
            self.names[v] = name
        return v

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise ValueError("self-loop")
        self.edges.append((u, v))

    def adjacency(self) -> list[list[int]]:
        adj = [[] for _ in range(self.node_count)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def components(self, removed: Iterable[int] = ()) -> list[set]:
        removed = set(removed)
        adj = self.adjacency()
        seen = set(removed)
        out = []
        for v in range(self.node_count):
            if v in seen:
                continue
            comp = {v}
            seen.add(v)
            stack = [v]
            while stack:
                u = stack.pop()
                for x in adj[u]:
                    if x not in seen:
                        seen.add(x)
                        comp.add(x)
                        stack.append(x)
            out.append(comp)
        return out

    def separates(self, removed: Iterable[int]) -> bool:
        removed = set(removed)
        if removed & set(self.terminals):
            return False
        term = set(self.terminals)
        return all(len(c & term) <= 1 for c in self.components(removed))

    def removal_weight(self, removed: Iterable[int]) -> Number:
        total = Fraction(0)
        for v in removed:
            total = total + self.weights[v]
        return total


def nmc_basis_gadget(g: NodeWeightedGraph, slots: Sequence[int], b: int, scale, tag: str = "") -> None:
    """Append a basis gadget charging ``min(i, b) * scale``, ``i`` = nodes outside the largest part."""
    if b < 1:
        raise ValueError("b must be a positive integer")
    scale = as_rational(scale)
    hub = g.add_node(b * scale, f"{tag}hub")
    for k, v in enumerate(slots):
        a = g.add_node(scale, f"{tag}a{k}")
        g.add_edge(v, a)
        g.add_edge(a, hub)


def nmc_star(g: NodeWeightedGraph, slots: Sequence[int], weight, tag: str = "") -> None:
    """All-or-nothing: one finite node joined to every slot."""
    hub = g.add_node(weight, f"{tag}hub")
    for v in slots:
        g.add_edge(v, hub)


def reduce_multiway(H: Hypergraph, terminals: Sequence[int]) -> NodeWeightedGraph:
    """NMC instance whose optimum equals the multiway cut optimum of ``H``.

    Hypergraph nodes keep their ids and get infinite weight; auxiliary nodes
    follow in edge order.
    """
    problems = validate(H)
    if problems:
        raise ValueError("invalid hypergraph: " + "; ".join(problems))
    _check_terminals(H, terminals)
    g = NodeWeightedGraph()
    for v in range(H.n):
        g.add_node(INF, H.label(v))
    g.terminals = list(terminals)
    for idx, e in enumerate(H.edges):
        f = e.splitting
        if not isinstance(f, MoveBased):
            raise NotReducible(idx, f"{type(f).__name__} penalties have no node-weighted gadget")
        if len(set(f.m)) == 1:
            if f.m[0] != 0:
                nmc_star(g, e.nodes, f.m[0], f"e{idx}.")
            continue
        try:
            c = nmc_weights(f)
        except NotSubmodular as exc:
            raise NotReducible(idx, str(exc)) from exc
        for b, cb in enumerate(c, start=1):
            if cb != 0:
                nmc_basis_gadget(g, e.nodes, b, cb, f"e{idx}.b{b}.")
    return g


def _check_terminals(H: Hypergraph, terminals) -> None:
    if len(set(terminals)) != len(terminals):
        raise ValueError("terminals must be distinct")
    for t in terminals:
        if not 0 <= t < H.n:
            raise ValueError(f"terminal {t} outside 0..{H.n - 1}")


@dataclass(frozen=True)
class MultiwaySolution:
    assignment: dict
    value: Number
    removed: frozenset = frozenset()
    method: str = ""


def _assign_from_removal(g: NodeWeightedGraph, removed) -> dict:
    """Component of each terminal gets its cluster; orphan components go to cluster 0."""
    index = {t: i for i, t in enumerate(g.terminals)}
    out = {}
    for comp in g.components(removed):
        hits = [index[t] for t in comp if t in index]
        cluster = hits[0] if hits else 0
        for v in comp:
            out[v] = cluster
    return out


def solve_nwmc_exact(g: NodeWeightedGraph) -> MultiwaySolution:
    """Exact minimum-weight node multiway cut.

    Zero-weight nodes are removed for free.  Each labeling of the
    infinite-weight nodes by terminals is tried; given a labeling, the
    remaining finite-weight components are independent and each is solved by
    subset enumeration (memoized on the labels of its boundary).  The budget is
    per component: at most ``MAX_EXACT_FINITE`` finite nodes each.
    """
    adj = g.adjacency()
    term_index = {t: i for i, t in enumerate(g.terminals)}
    k = len(g.terminals)
    free = [v for v in range(g.node_count) if g.weights[v] is not INF and g.weights[v] == 0]
    finite = [v for v in range(g.node_count) if g.weights[v] is not INF and g.weights[v] > 0]
    if any(g.weights[t] is not INF for t in g.terminals):
        raise ValueError("terminal nodes must have infinite weight")
    free_set = set(free)
    finite_set = set(finite)

    # infinite nodes joined directly must share a label: contract them first
    hard = [v for v in range(g.node_count) if g.weights[v] is INF]
    parent = {v: v for v in hard}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        if u in parent and v in parent:
            parent[find(u)] = find(v)
    groups: dict[int, list] = {}
    for v in hard:
        groups.setdefault(find(v), []).append(v)
    forced = {}
    for root, members in groups.items():
        labs = {term_index[v] for v in members if v in term_index}
        if len(labs) > 1:
            return MultiwaySolution({}, INF, frozenset(), "exact")
        if labs:
            forced[root] = labs.pop()
    # Only groups touching some finite component matter; isolated groups take cluster 0.
    fin_comps = []
    seen = set()
    for v in finite:
        if v in seen:
            continue
        comp, stack = [v], [v]
        seen.add(v)
        while stack:
            u = stack.pop()
            for x in adj[u]:
                if x in finite_set and x not in seen:
                    seen.add(x)
                    comp.append(x)
                    stack.append(x)
        if len(comp) > MAX_EXACT_FINITE:
            raise TooLarge(f"a component of {len(comp)} finite-weight nodes exceeds the exact limit {MAX_EXACT_FINITE}")
        boundary = sorted({find(x) for u in comp for x in adj[u] if x in parent})
        fin_comps.append((sorted(comp), boundary))
    touched = sorted({b for _, bd in fin_comps for b in bd})
    open_groups = [b for b in touched if b not in forced]
    if k and k ** len(open_groups) > MAX_LABELINGS:
        raise TooLarge(f"{k}^{len(open_groups)} labelings exceed the exact budget")

    memo: dict = {}
    # removal subsets of each component, cheapest first; the first feasible one wins
    by_weight = []
    for nodes, _ in fin_comps:
        ws = [g.weights[v] for v in nodes]
        subsets = [(sum((ws[i] for i in range(len(nodes)) if mask >> i & 1), Fraction(0)), mask)
                   for mask in range(1 << len(nodes))]
        subsets.sort()
        by_weight.append(subsets)

    def comp_cost(ci: int, labels: tuple):
        key = (ci, _canonical(labels))
        if key not in memo:
            nodes, boundary = fin_comps[ci]
            lab = dict(zip(boundary, labels))
            pos = {v: i for i, v in enumerate(nodes)}
            memo[key] = next(
                (w, mask) for w, mask in by_weight[ci]
                if _component_ok(nodes, pos, mask, adj, lab, find, parent)
            )
        return memo[key]

    best_total, best_choice = INF, None
    label_space = range(k) if k else range(1)
    for combo in itertools.product(label_space, repeat=len(open_groups)):
        labels = dict(forced)
        labels.update(zip(open_groups, combo))
        total = Fraction(0)
        choice = []
        for ci, (_, boundary) in enumerate(fin_comps):
            cost, mask = comp_cost(ci, tuple(labels[b] for b in boundary))
            total = total + cost
            choice.append(mask)
            if best_total is not INF and total >= best_total:
                break
        else:
            if best_total is INF or total < best_total:
                best_total, best_choice = total, choice
    if best_choice is None:
        return MultiwaySolution({}, INF, frozenset(), "exact")
    removed = set(free_set)
    for (nodes, _), mask in zip(fin_comps, best_choice):
        removed.update(nodes[i] for i in range(len(nodes)) if mask >> i & 1)
    removed = frozenset(removed)
    return MultiwaySolution(_assign_from_removal(g, removed), g.removal_weight(removed), removed, "exact")


def _canonical(labels: tuple) -> tuple:
    seen = {}
    return tuple(seen.setdefault(x, len(seen)) for x in labels)


def _component_ok(nodes, pos, mask, adj, lab, find, parent) -> bool:
    """Kept finite nodes must not join two differently labeled boundary groups."""
    seen = set()
    for i, v in enumerate(nodes):
        if mask >> i & 1 or v in seen:
            continue
        found = None
        stack = [v]
        seen.add(v)
        while stack:
            u = stack.pop()
            for x in adj[u]:
                if x in parent:
                    l = lab[find(x)]
                    if found is None:
                        found = l
                    elif found != l:
                        return False
                elif x in pos and not mask >> pos[x] & 1 and x not in seen:
                    seen.add(x)
                    stack.append(x)
    return True


def _split_network(g: NodeWeightedGraph, source_terminal: int, sinks: Sequence[int]) -> FlowNetwork:
    """Node ``v`` becomes ``2v -> 2v+1`` with capacity = weight; edges become infinite arcs."""
    n = g.node_count
    net = FlowNetwork(2 * n + 1, 2 * source_terminal + 1, 2 * n)
    for v in range(n):
        net.add_arc(2 * v, 2 * v + 1, g.weights[v])
    for u, v in g.edges:
        net.add_arc(2 * u + 1, 2 * v, INF)
        net.add_arc(2 * v + 1, 2 * u, INF)
    for t in sinks:
        net.add_arc(2 * t + 1, 2 * n, INF)
    return net


def isolating_cut(g: NodeWeightedGraph, i: int) -> tuple[Number, frozenset]:
    """Cheapest node set separating terminal ``i`` from all other terminals."""
    t = g.terminals[i]
    others = [x for x in g.terminals if x != t]
    if not others:
        return Fraction(0), frozenset()
    res = min_cut(_split_network(g, t, others))
    side = res.source_side
    removed = frozenset(v for v in range(g.node_count) if 2 * v in side and 2 * v + 1 not in side)
    return res.value, removed


def solve_nwmc_isolating(g: NodeWeightedGraph) -> MultiwaySolution:
    """Union of the ``k - 1`` cheapest isolating cuts.  Always a valid separator; no ratio claimed."""
    cuts = [isolating_cut(g, i) for i in range(len(g.terminals))]
    if any(v is INF for v, _ in cuts):
        return MultiwaySolution({}, INF, frozenset(), "isolating")
    order = sorted(range(len(cuts)), key=lambda i: (cuts[i][0], i))
    removed = frozenset().union(*(cuts[i][1] for i in order[: max(len(cuts) - 1, 0)]))
    return MultiwaySolution(_assign_from_removal(g, removed), g.removal_weight(removed), removed, "isolating")


def solve_multiway(H: Hypergraph, terminals: Sequence[int], method: str = "auto") -> MultiwaySolution:
    """Reduce to NMC, solve, and lift the removal set back to a node partition of ``H``.

    The reported value is the hypergraph objective of the lifted partition.
    """
    g = reduce_multiway(H, terminals)
    sol = None
    if method in ("auto", "exact"):
        try:
            sol = solve_nwmc_exact(g)
        except TooLarge:
            if method == "exact":
                raise
    if sol is None:
        sol = solve_nwmc_isolating(g)
    if sol.value is INF:
        return MultiwaySolution({}, INF, sol.removed, sol.method)
    assignment = {v: sol.assignment.get(v, 0) for v in range(H.n)}
    return MultiwaySolution(assignment, multiway_cut_value(H, assignment), sol.removed, sol.method)
