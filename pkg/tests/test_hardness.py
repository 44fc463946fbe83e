import itertools
import random
from fractions import Fraction

import pytest

from hypercut.hardness import (
    BLUE,
    CNF,
    GREEN,
    RED,
    gen_4cb_from_maxcut,
    gen_5cb_from_monnae3sat,
    gen_needy3_from_3sat,
    gen_needy_from_sat,
    gen_rainbow_from_monnae3sat,
    gen_rj_gadget_instance,
    literal_node,
    sperner_nodes,
)
from hypercut.hypergraph import Hypergraph, make_edge
from hypercut.multiway import multiway_cut_value
from hypercut.oracle import brute_multiway, brute_st_cut
from hypercut.splitting import SymmetricCB

from conftest import dpll, max_cut, nae_satisfiable

half = Fraction(1, 2)
HARD = SymmetricCB(2, ("inf",))
K3 = [(0, 1), (1, 2), (0, 2)]
FANO = [(1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6)]


def random_cnf(rng, num_vars, max_clauses=6, width=(1, 3)):
    clauses = []
    for _ in range(rng.randint(1, max_clauses)):
        k = rng.randint(*width)
        vs = rng.sample(range(1, num_vars + 1), min(k, num_vars))
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    return CNF(num_vars, clauses)


def zero_coloring_exists(H: Hypergraph, terminals) -> bool:
    """Backtracking search for a zero-cost multiway assignment (independent of brute_multiway)."""
    k = len(terminals)
    color = {t: i for i, t in enumerate(terminals)}
    order = [v for v in range(H.n) if v not in color]
    incident = {v: [e for e in H.edges if v in e.nodes] for v in range(H.n)}

    def ok(v):
        for e in incident[v]:
            if all(u in color for u in e.nodes):
                if e.splitting.multiway_penalty(tuple(color[u] for u in e.nodes)) != 0:
                    return False
        return True

    def search(i):
        if i == len(order):
            return True
        v = order[i]
        for c in range(k):
            color[v] = c
            if ok(v) and search(i + 1):
                return True
        del color[v]
        return False

    return search(0)


# -- 4-node reduction from max cut -------------------------------------------------------

def test_triangle():
    H, s, t = gen_4cb_from_maxcut(3, K3)
    assert len(H.edges) == 3 and all(e.r == 4 for e in H.edges)
    assert brute_st_cut(H, s, t).value == 2
    H1, s, t = gen_4cb_from_maxcut(3, K3, (1, 1))
    assert brute_st_cut(H1, s, t).value == 3


def test_maxcut_correspondence_small_graphs():
    rng = random.Random(8)
    graphs = []
    for n in range(2, 5):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            graphs.append((n, [p for k, p in enumerate(pairs) if mask >> k & 1]))
    for _ in range(40):
        n = rng.randint(5, 7)
        graphs.append((n, [p for p in itertools.combinations(range(n), 2) if rng.random() < 0.5]))
    for n, edges in graphs:
        H, s, t = gen_4cb_from_maxcut(n, edges)
        best, _ = max_cut(n, edges)
        sol = brute_st_cut(H, s, t)
        assert sol.value == len(edges) - half * best
        side = {v - 2 for v in sol.source_set - {s}}
        assert sum(1 for u, v in edges if (u in side) != (v in side)) == best


def test_generator_rejects_non_simple_graphs():
    with pytest.raises(ValueError):
        gen_4cb_from_maxcut(2, [(0, 0)])
    with pytest.raises(ValueError):
        gen_4cb_from_maxcut(2, [(0, 1), (1, 0)])


# -- (r, j) gadgets -------------------------------------------------------------------------

def test_rj_structure():
    H, s, t = gen_rj_gadget_instance(4, 2, 2, [(0, 1)])
    assert all(e.r == 4 for e in H.edges) and len(H.edges) == 3
    assert (s, t, 2, 3) == H.edges[0].nodes
    H, _, _ = gen_rj_gadget_instance(6, 3, 2, [(0, 1)])
    assert all(e.r == 6 for e in H.edges)
    assert H.n == 4 + (1 + 1 + 4 + 4)
    with pytest.raises(ValueError):
        gen_rj_gadget_instance(4, 3, 2, [(0, 1)])


def forced(H, pairs):
    return H.with_edges(H.edges + tuple(make_edge(p, HARD) for p in pairs))


@pytest.mark.parametrize("r, j", [(4, 2), (5, 2), (6, 3)])
def test_rj_single_gadget(r, j):
    H, s, t = gen_rj_gadget_instance(r, j, 2, [(0, 1)])
    u, v = 2, 3
    wj = H.edges[0].splitting.size_penalty(j)
    apart = brute_st_cut(forced(H, [(s, u), (v, t)]), s, t).value
    assert apart == wj
    with_s = brute_st_cut(forced(H, [(s, u), (s, v)]), s, t).value
    with_t = brute_st_cut(forced(H, [(u, t), (v, t)]), s, t).value
    assert with_s == with_t > wj


@pytest.mark.parametrize("n, edges", [(2, [(0, 1)]), (3, [(0, 1), (1, 2)]), (4, [(0, 1), (2, 3)])])
def test_rj_instance_tracks_max_cut(n, edges):
    r, j = 4, 2
    one, _, _ = gen_rj_gadget_instance(r, j, 2, [(0, 1)])
    y = brute_st_cut(forced(one, [(0, 2), (0, 3)]), 0, 1).value
    wj = one.edges[0].splitting.size_penalty(j)
    H, s, t = gen_rj_gadget_instance(r, j, n, edges)
    best, _ = max_cut(n, edges)
    assert brute_st_cut(H, s, t).value == len(edges) * y - best * (y - wj)


# -- needy-node constructions --------------------------------------------------------------

def test_needy_examples():
    H, s, t = gen_needy_from_sat(CNF(2, [(1, 2)]))
    assert brute_st_cut(H, s, t).value == 0
    H, s, t = gen_needy_from_sat(CNF(1, [(1,), (-1,)]))
    assert brute_st_cut(H, s, t).value >= 1
    H, s, t = gen_needy_from_sat(CNF(3, []))
    assert len(H.edges) == 6 and brute_st_cut(H, s, t).value == 0


def test_needy3_examples():
    H, s, t = gen_needy3_from_3sat(CNF(3, [(1, 2, 3)]))
    assert all(e.r == 3 for e in H.edges)
    assert brute_st_cut(H, s, t).value == 0
    unsat = [(a * 1, b * 2, c * 3) for a in (1, -1) for b in (1, -1) for c in (1, -1)]
    H, s, t = gen_needy3_from_3sat(CNF(3, unsat))
    assert brute_st_cut(H, s, t).value >= 1
    H, s, t = gen_needy3_from_3sat(CNF(2, []))
    assert len(H.edges) == 4 and brute_st_cut(H, s, t).value == 0
    with pytest.raises(ValueError):
        gen_needy3_from_3sat(CNF(3, [(1, 2)]))


def test_literal_layout():
    assert literal_node(1) == 2 and literal_node(-1) == 3 and literal_node(-4) == 9
    H, _, _ = gen_needy_from_sat(CNF(2, [(1, -2)]))
    assert H.label(2) == "x1" and H.label(5) == "~x2"


def test_needy_zero_iff_satisfiable():
    rng = random.Random(19)
    for _ in range(120):
        cnf = random_cnf(rng, rng.randint(1, 4))
        H, s, t = gen_needy_from_sat(cnf)
        assert (brute_st_cut(H, s, t).value == 0) == dpll(cnf.clauses)


def test_needy3_zero_iff_satisfiable():
    rng = random.Random(20)
    for _ in range(80):
        cnf = random_cnf(rng, rng.randint(3, 4), max_clauses=8, width=(3, 3))
        H, s, t = gen_needy3_from_3sat(cnf)
        assert (brute_st_cut(H, s, t).value == 0) == dpll(cnf.clauses)


def test_sat_oracle_sanity():
    assert dpll([(1, 2), (-1,), (-2, 3)])
    assert not dpll([(1,), (-1,)])
    assert nae_satisfiable(3, [(1, 2, 3)])
    assert not nae_satisfiable(7, FANO)


# -- 5-node construction -----------------------------------------------------------------

def test_nae5_examples():
    H, s, t = gen_5cb_from_monnae3sat(3, [(1, 2, 3)])
    assert brute_st_cut(H, s, t).value == 0
    H, s, t = gen_5cb_from_monnae3sat(7, FANO)
    assert brute_st_cut(H, s, t).value >= 1
    H, s, t = gen_5cb_from_monnae3sat(2, [])
    assert brute_st_cut(H, s, t).value == 0


def test_nae5_zero_iff_nae_satisfiable():
    rng = random.Random(21)
    for _ in range(60):
        nv = rng.randint(3, 7)
        clauses = [tuple(rng.sample(range(1, nv + 1), 3)) for _ in range(rng.randint(1, 9))]
        H, s, t = gen_5cb_from_monnae3sat(nv, clauses)
        assert (brute_st_cut(H, s, t).value == 0) == nae_satisfiable(nv, clauses)


# -- rainbow construction ----------------------------------------------------------------

def test_sperner_gadget_has_two_zero_colorings():
    H, terms = gen_rainbow_from_monnae3sat(1, [])
    assert terms == [RED, BLUE, GREEN]
    assert len(H.edges) == 6
    value, _ = brute_multiway(H, terms)
    assert value == 0
    zero = []
    for colors in itertools.product(range(3), repeat=3):
        assign = {RED: RED, BLUE: BLUE, GREEN: GREEN, **dict(zip(sperner_nodes(1), colors))}
        if multiway_cut_value(H, assign) == 0:
            zero.append(colors)
    assert len(zero) == 2


def test_rainbow_examples():
    H, terms = gen_rainbow_from_monnae3sat(3, [(1, 2, 3)])
    assert brute_multiway(H, terms)[0] == 0
    # five variables with every triple: some color class holds three variables
    five = list(itertools.combinations(range(1, 6), 3))
    H, terms = gen_rainbow_from_monnae3sat(5, five)
    assert not nae_satisfiable(5, five)
    assert not zero_coloring_exists(H, terms)


def test_rainbow_zero_iff_nae_satisfiable():
    rng = random.Random(22)
    for _ in range(25):
        nv = rng.randint(3, 6)
        clauses = [tuple(rng.sample(range(1, nv + 1), 3)) for _ in range(rng.randint(1, 12))]
        H, terms = gen_rainbow_from_monnae3sat(nv, clauses)
        assert zero_coloring_exists(H, terms) == nae_satisfiable(nv, clauses)


def test_backtracking_agrees_with_brute_force():
    rng = random.Random(23)
    for _ in range(10):
        clauses = [tuple(rng.sample(range(1, 4), 3))]
        H, terms = gen_rainbow_from_monnae3sat(3, clauses)
        assert zero_coloring_exists(H, terms) == (brute_multiway(H, terms)[0] == 0)


def test_nae_input_validation():
    with pytest.raises(ValueError):
        gen_5cb_from_monnae3sat(3, [(1, 1, 2)])
    with pytest.raises(ValueError):
        gen_rainbow_from_monnae3sat(3, [(1, 2, 4)])
    with pytest.raises(ValueError):
        CNF(2, [(3,)])
