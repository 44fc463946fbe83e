"""Hyperedge s-t gadgets and the linear algebra that combines them.

A gadget replaces one hyperedge by a small directed graph over the edge's
slots plus some auxiliary nodes.  Its splitting function at ``S`` is the
cheapest directed cut that puts ``S`` on the source side, minimized over all
placements of the auxiliary nodes (see :func:`gadget_eval`).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence, Union

from .errors import NotModelable, NotSubmodular, TooManyAux
from .numeric import INF, Number, as_rational, fmt
from .splitting import (
    AsymmetricCB,
    GeneralTable,
    SymmetricCB,
    is_submodular_asym,
    is_submodular_cb,
    subset_mask,
)

MAX_EVAL_AUX = 20


@dataclass(frozen=True)
class Slot:
    i: int


@dataclass(frozen=True)
class Aux:
    j: int


@dataclass(frozen=True)
class Terminal:
    name: str


SOURCE = Terminal("s")
SINK = Terminal("t")

Endpoint = Union[Slot, Aux, Terminal]


class Arc(NamedTuple):
    tail: Endpoint
    head: Endpoint
    weight: Number
    directed: bool = True


@dataclass(frozen=True)
class Gadget:
    r: int
    aux_count: int
    arcs: tuple

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(self.arcs))
        for a in self.arcs:
            if a.weight is not INF and a.weight < 0:
                raise ValueError(f"negative arc weight {fmt(a.weight)}")
            for end in (a.tail, a.head):
                if isinstance(end, Slot) and not 0 <= end.i < self.r:
                    raise ValueError(f"slot {end.i} outside arity {self.r}")
                if isinstance(end, Aux) and not 0 <= end.j < self.aux_count:
                    raise ValueError(f"aux {end.j} outside aux count {self.aux_count}")

    def table(self) -> GeneralTable:
        return GeneralTable(self.r, tuple(gadget_eval_mask(self, m) for m in range(1 << self.r)))


def concat(r: int, gadgets: Sequence[Gadget]) -> Gadget:
    """Disjoint union over shared slots; aux indices are shifted to stay distinct."""
    arcs = []
    offset = 0
    for g in gadgets:
        if g.r != r:
            raise ValueError("cannot combine gadgets of different arity")

        def shift(end, off=offset):
            return Aux(end.j + off) if isinstance(end, Aux) else end

        arcs.extend(Arc(shift(a.tail), shift(a.head), a.weight, a.directed) for a in g.arcs)
        offset += g.aux_count
    return Gadget(r, offset, tuple(arcs))


# -- evaluation ---------------------------------------------------------------------

def gadget_eval(g: Gadget, S) -> Number:
    """Minimum directed cut with slots in ``S`` on the source side, over all aux placements."""
    return gadget_eval_mask(g, subset_mask(S))


def gadget_eval_mask(g: Gadget, mask: int) -> Number:
    if g.aux_count > MAX_EVAL_AUX:
        raise TooManyAux(f"gadget has {g.aux_count} auxiliary nodes, limit is {MAX_EVAL_AUX}")

    # An arc only cares about the source-side membership of its two ends.
    # Resolve slot and terminal ends once; aux ends are looked up per placement.
    def side(end):
        if isinstance(end, Slot):
            return bool(mask >> end.i & 1)
        if isinstance(end, Terminal):
            return end is SOURCE
        return None

    fixed = Fraction(0)
    loose = []  # (tail_aux or None, tail_side, head_aux or None, head_side, weight, directed)
    for a in g.arcs:
        ts, hs = side(a.tail), side(a.head)
        if ts is not None and hs is not None:
            if (ts and not hs) or (not a.directed and hs and not ts):
                fixed = fixed + a.weight
            continue
        loose.append((
            a.tail.j if ts is None else None, ts,
            a.head.j if hs is None else None, hs,
            a.weight, a.directed,
        ))

    best = INF
    for placement in range(1 << g.aux_count):
        total = fixed
        for tj, ts, hj, hs, w, directed in loose:
            t_src = ts if tj is None else bool(placement >> tj & 1)
            h_src = hs if hj is None else bool(placement >> hj & 1)
            if (t_src and not h_src) or (not directed and h_src and not t_src):
                total = total + w
                if total >= best:
                    break
        if total < best:
            best = total
            if best == 0:
                break
    return best


# -- elementary gadgets -------------------------------------------------------------

def _two_aux_gadget(in_weights: Sequence, aux_weight) -> Gadget:
    """Slots feed aux 0, aux 0 feeds aux 1, aux 1 feeds slots back.

    Penalty is ``min(sum of in_weights on S, sum on the complement, aux_weight)``.
    """
    r = len(in_weights)
    arcs = [Arc(Slot(v), Aux(0), in_weights[v]) for v in range(r)]
    arcs.append(Arc(Aux(0), Aux(1), aux_weight))
    arcs.extend(Arc(Aux(1), Slot(v), in_weights[v]) for v in range(r))
    return Gadget(r, 2, tuple(arcs))


def lawler_gadget(r: int, scale=1) -> Gadget:
    scale = as_rational(scale)
    if r < 2:
        raise ValueError("gadgets need at least 2 slots")
    return _two_aux_gadget([INF] * r, scale)


def cb_gadget(r: int, b: int, scale=1) -> Gadget:
    """Penalty ``min(|S|, |e\\S|, b) * scale``."""
    scale = as_rational(scale)
    if r < 2:
        raise ValueError("gadgets need at least 2 slots")
    if b < 1:
        raise ValueError("b must be a positive integer")
    return _two_aux_gadget([scale] * r, b * scale)


def star_gadget(r: int, scale=1) -> Gadget:
    scale = as_rational(scale)
    return Gadget(r, 1, tuple(Arc(Slot(v), Aux(0), scale, directed=False) for v in range(r)))


def clique_gadget(r: int, scale=1) -> Gadget:
    scale = as_rational(scale)
    arcs = [Arc(Slot(u), Slot(v), scale, directed=False) for u in range(r) for v in range(u + 1, r)]
    return Gadget(r, 0, tuple(arcs))


def asym_cb_gadget(r: int, a: int, b: int, scale=1) -> Gadget:
    """Penalty ``min(i * a, (r - i) * b) * scale`` for ``i`` slots on the source side."""
    scale = as_rational(scale)
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive integers")
    arcs = [Arc(Slot(v), Aux(0), a * scale) for v in range(r)]
    arcs.extend(Arc(Aux(0), Slot(v), b * scale) for v in range(r))
    return Gadget(r, 1, tuple(arcs))


# -- symmetric cardinality-based combination ----------------------------------------

def cb_matrix(q: int) -> list[list[Fraction]]:
    """Penalty of the b=j gadget at small-side size i: ``min(i, j)``."""
    return [[Fraction(min(i, j)) for j in range(1, q + 1)] for i in range(1, q + 1)]


def mat_vec(A, c) -> list:
    return [sum((a * x for a, x in zip(row, c)), Fraction(0)) for row in A]


def cb_weights(f: SymmetricCB) -> tuple:
    """Scaling weights ``c_1..c_q`` with ``sum_j c_j min(i, j) = w_i``."""
    rep = is_submodular_cb(f)
    if not rep.is_submodular:
        raise NotSubmodular(f"cardinality penalties {f.spec()!r} are not submodular: {rep.violations[0]}", rep)
    w = (Fraction(0),) + f.w + (f.w[-1] if f.w else Fraction(0),)
    q = f.q
    # with w_{q+1} := w_q the last weight collapses to w_q - w_{q-1}
    return tuple(2 * w[j] - w[j - 1] - w[j + 1] if w[j] is not INF else INF for j in range(1, q + 1))


def combined_cb_gadget(f: SymmetricCB) -> Gadget:
    c = cb_weights(f)
    return concat(f.r, [cb_gadget(f.r, j, cj) for j, cj in enumerate(c, start=1) if cj != 0])


# -- asymmetric cardinality-based combination ---------------------------------------

def asym_matrix(r: int) -> list[list[Fraction]]:
    """Penalty of the j-th asymmetric gadget at source-side count i."""
    return [[Fraction(min(i * (r - j), (r - i) * j)) for j in range(1, r)] for i in range(1, r)]


def asym_weights(f: AsymmetricCB) -> tuple:
    rep = is_submodular_asym(f)
    if not rep.is_submodular:
        raise NotSubmodular(f"asymmetric penalties {f.spec()!r} are not submodular: {rep.violations[0]}", rep)
    y = (Fraction(0),) + f.y + (Fraction(0),)
    return tuple((2 * y[i] - y[i - 1] - y[i + 1]) / f.r for i in range(1, f.r))


def combined_asym_gadget(f: AsymmetricCB) -> Gadget:
    c = asym_weights(f)
    r = f.r
    return concat(r, [asym_cb_gadget(r, r - j, j, cj) for j, cj in enumerate(c, start=1) if cj != 0])


# -- three-node general gadget ------------------------------------------------------

def three_node_inequalities(p1, p2, p3, p23, p13, p12) -> list[str]:
    """Failing conditions among the six that make a 3-node table submodular."""
    single = {1: p1, 2: p2, 3: p3}
    pair = {(2, 3): p23, (1, 3): p13, (1, 2): p12}
    bad = []
    for i in (1, 2, 3):
        j, k = (x for x in (1, 2, 3) if x != i)
        pij = pair[tuple(sorted((i, j)))]
        pik = pair[tuple(sorted((i, k)))]
        if single[i] > pij + pik:
            bad.append(f"p{i} <= p{min(i, j)}{max(i, j)} + p{min(i, k)}{max(i, k)}")
        if pair[(j, k)] > single[j] + single[k]:
            bad.append(f"p{j}{k} <= p{j} + p{k}")
    return bad


def three_node_general_gadget(p1, p2, p3, p23, p13, p12) -> Gadget:
    """Directed star: arc ``i -> v_e`` carries ``p_i`` and ``v_e -> i`` carries ``p_jk``.

    ``p_i`` is the penalty with only node ``i`` on the source side, ``p_jk`` the
    penalty with ``j`` and ``k`` on the source side.
    """
    p1, p2, p3, p23, p13, p12 = map(as_rational, (p1, p2, p3, p23, p13, p12))
    bad = three_node_inequalities(p1, p2, p3, p23, p13, p12)
    if bad:
        raise NotSubmodular("3-node penalties are not submodular: " + "; ".join(bad))
    out = [p1, p2, p3]
    back = [p23, p13, p12]
    arcs = [Arc(Slot(i), Aux(0), out[i]) for i in range(3)]
    arcs.extend(Arc(Aux(0), Slot(i), back[i]) for i in range(3))
    return Gadget(3, 1, tuple(arcs))


def three_node_from_table(t: GeneralTable) -> Gadget:
    v = t.values
    return three_node_general_gadget(v[0b001], v[0b010], v[0b100], v[0b110], v[0b101], v[0b011])


# -- four-node basis ----------------------------------------------------------------

FOUR_NODE_PARAMS = {
    "alpha": Fraction(1),
    "beta": Fraction(1, 2),
    "gamma": Fraction(1),
    "delta": Fraction(1, 2),
    "epsilon": Fraction(1, 4),
}

# Subsets of the 4 slots named by the seven penalties, in order p1 p2 p3 p4 p12 p13 p14.
FOUR_NODE_SUBSETS = ((0,), (1,), (2,), (3,), (0, 1), (0, 2), (0, 3))
FOUR_NODE_LABELS = ("p1", "p2", "p3", "p4", "p12", "p13", "p14")

_h, _q = Fraction(1, 2), Fraction(1, 4)
# Row g, column k: penalty that basis gadget g assigns to subset k.
FOUR_NODE_MATRIX = tuple(tuple(Fraction(x) for x in row) for row in (
    (1, _h, _h, _h, 1, 1, 1),
    (_h, 1, _h, _h, 1, 1, 1),
    (_h, _h, 1, _h, 1, 1, 1),
    (_h, _h, _h, 1, 1, 1, 1),
    (_h, _h, _q, _q, _h, 3 * _q, 3 * _q),
    (_h, _q, _h, _q, 3 * _q, _h, 3 * _q),
    (_h, _q, _q, _h, 3 * _q, 3 * _q, _h),
))
FOUR_NODE_INVERSE = tuple(tuple(Fraction(x) for x in row) for row in (
    (4, 0, 0, 0, -2, -2, -2),
    (2, 2, 0, 0, -2, -2, -2),
    (2, 0, 2, 0, -2, -2, -2),
    (2, 0, 0, 2, -2, -2, -2),
    (-2, 1, -1, -1, -1, 3, 3),
    (-2, -1, 1, -1, 3, -1, 3),
    (-2, -1, -1, 1, 3, 3, -1),
))


def four_node_basis(params=None) -> list[Gadget]:
    """The seven basis gadgets: four single-node ones, then pairs {1,2}, {1,3}, {1,4}."""
    p = dict(FOUR_NODE_PARAMS, **(params or {}))
    out = []
    for i in range(4):
        out.append(_two_aux_gadget([p["alpha"] if v == i else p["beta"] for v in range(4)], p["gamma"]))
    for j in (1, 2, 3):
        out.append(_two_aux_gadget([p["delta"] if v in (0, j) else p["epsilon"] for v in range(4)], Fraction(1)))
    return out


def transpose(A):
    return [list(col) for col in zip(*A)]


def four_node_weights(p: Sequence) -> tuple:
    """Basis coefficients reproducing the seven penalties.

    Gadget ``g`` contributes ``c_g * M[g][k]`` to penalty ``k``, so the
    penalties are ``M^T c`` and the coefficients are ``(M^-1)^T p``.
    """
    p = [as_rational(x) for x in p]
    if len(p) != 7:
        raise ValueError("four-node penalties are p1 p2 p3 p4 p12 p13 p14")
    if INF in p:
        raise NotModelable("infinite penalties are outside the four-node basis")
    return tuple(mat_vec(transpose(FOUR_NODE_INVERSE), p))


def four_node_basis_gadget(p: Sequence) -> Gadget:
    c = four_node_weights(p)
    negative = {FOUR_NODE_LABELS[k].replace("p", "c"): v for k, v in enumerate(c) if v < 0}
    if negative:
        detail = ", ".join(f"{k}={fmt(v)}" for k, v in negative.items())
        raise NotModelable(f"four-node penalties need negative basis weights ({detail})", c, negative)
    basis = four_node_basis()
    return concat(4, [scale_gadget(g, cg) for g, cg in zip(basis, c) if cg != 0])


def four_node_penalties(t: GeneralTable) -> tuple:
    return tuple(t.values[subset_mask(S)] for S in FOUR_NODE_SUBSETS)


def scale_gadget(g: Gadget, c) -> Gadget:
    c = as_rational(c)
    return Gadget(g.r, g.aux_count, tuple(Arc(a.tail, a.head, a.weight * c, a.directed) for a in g.arcs))
