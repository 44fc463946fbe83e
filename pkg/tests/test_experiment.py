import warnings
from fractions import Fraction

import pytest

from hypercut.errors import NotReducible, SeedNotFound, SeedsAdjacentWarning
from hypercut.experiment import (
    SUPER_SINK_LABEL,
    SUPER_SOURCE_LABEL,
    build_super_st,
    grid_points,
    jaccard,
    parse_grid,
    reweight,
    sweep_w2,
    synthetic_hypergraph,
)
from hypercut.hypergraph import Hypergraph
from hypercut.numeric import INF
from hypercut.oracle import brute_st_cut
from hypercut.splitting import all_or_nothing

half = Fraction(1, 2)


def test_jaccard():
    assert jaccard({1, 2}, {2, 1}) == 1
    assert jaccard({1}, {2}) == 0
    assert jaccard({1, 2}, {2, 3, 4}) == Fraction(1, 4)
    assert jaccard(set(), set()) == 1


def test_grid():
    pts = grid_points(1, 2, Fraction(1, 20))
    assert len(pts) == 21 and pts[0] == 1 and pts[-1] == 2 and pts[1] == Fraction(21, 20)
    assert parse_grid("1:2:0.05") == (1, 2, Fraction(1, 20))
    assert grid_points(1, 1, 1) == [1]
    with pytest.raises(ValueError):
        grid_points(1, 2, 0)
    with pytest.raises(ValueError):
        grid_points(2, 1, half)
    with pytest.raises(ValueError):
        parse_grid("1:2")


def path_graph():
    # 0 - 1 - 2 - 3 - 4 as 2-node edges plus a 3-node edge in the middle
    return Hypergraph.build(5, [((0, 1), all_or_nothing(2)), ((1, 2), all_or_nothing(2)),
                                ((2, 3), all_or_nothing(2)), ((3, 4), all_or_nothing(2)),
                                ((1, 2, 3), all_or_nothing(3))])


def test_super_terminals_attach_exclusive_neighbors():
    H = path_graph()
    H2, s, t = build_super_st(H, 0, 4)
    assert (s, t) == (5, 6) and H2.n == 7
    assert H2.label(s) == SUPER_SOURCE_LABEL and H2.label(t) == SUPER_SINK_LABEL
    assert H2.neighbors(s) == {0, 1}
    assert H2.neighbors(t) == {3, 4}
    hard = [e for e in H2.edges if INF in e.splitting.w]
    assert len(hard) == 4


def test_common_neighbors_attach_to_neither():
    H = Hypergraph.build(4, [((0, 1), all_or_nothing(2)), ((1, 3), all_or_nothing(2)), ((0, 2), all_or_nothing(2))])
    H2, s, t = build_super_st(H, 0, 3)
    assert H2.neighbors(s) == {0, 2}
    assert H2.neighbors(t) == {3}


def test_adjacent_seeds_warn():
    H = Hypergraph.build(3, [((0, 1, 2), all_or_nothing(3))])
    with pytest.warns(SeedsAdjacentWarning):
        H2, s, t = build_super_st(H, 0, 1)
    assert H2.neighbors(s) == {0} and H2.neighbors(t) == {1}


def test_seed_lookup():
    H = synthetic_hypergraph(n=12, m=10, max_size=4, window=4)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SeedsAdjacentWarning)
        H2, _, _ = build_super_st(H, "n0", "n11")
    assert H2.n == 14
    with pytest.raises(SeedNotFound):
        build_super_st(H, "n0", "zz")
    with pytest.raises(SeedNotFound):
        build_super_st(path_graph(), 0, 9)
    with pytest.raises(ValueError):
        build_super_st(path_graph(), 1, 1)


def test_reweight_keeps_hard_edges_and_scales_by_weight():
    H = Hypergraph.build(5, [((0, 1, 2, 3), all_or_nothing(4, 3))])
    with pytest.warns(SeedsAdjacentWarning):
        H2, s, t = build_super_st(H, 0, 3)
    R = reweight(H2, 1, Fraction(3, 2))
    assert R.edges[0].splitting.w == (3, Fraction(9, 2))
    assert R.edges[1:] == H2.edges[1:]


# found by a seeded offline search over small random instances, checked here by enumeration
FLIP = Hypergraph.build(7, [((0, 1, 3, 5), all_or_nothing(4)), ((3, 5, 6), all_or_nothing(3))])


def test_flip_instance():
    H2, s, t = build_super_st(FLIP, 0, 6)
    low = brute_st_cut(reweight(H2, 1, 1), s, t)
    high = brute_st_cut(reweight(H2, 1, Fraction(3, 2)), s, t)
    assert low.source_set - {s} == {0, 1}
    assert high.source_set - {s} == {0, 1, 3, 5}
    rows = sweep_w2(H2, s, t, (1, Fraction(3, 2), half))
    assert [r.value for r in rows] == [low.value, high.value]
    assert rows[0].jaccard == 1
    assert rows[1].jaccard == half and rows[1].source_size == 4


def test_sweep_endpoints_and_range():
    H2, s, t = build_super_st(FLIP, 0, 6)
    rows = sweep_w2(H2, s, t, (1, 2, 1))
    assert len(rows) == 2
    with pytest.raises(NotReducible):
        sweep_w2(H2, s, t, (1, Fraction(41, 20), Fraction(41, 20) - 1))
    with pytest.raises(NotReducible):
        sweep_w2(H2, s, t, (Fraction(19, 20), 1, Fraction(1, 20)))


def test_sweep_rows_match_enumeration():
    H = synthetic_hypergraph(n=14, m=16, seed=5, max_size=5, window=5)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SeedsAdjacentWarning)
        H2, s, t = build_super_st(H, "n0", "n13")
    rows = sweep_w2(H2, s, t, (1, 2, Fraction(1, 4)))
    base = brute_st_cut(reweight(H2, 1, 1), s, t).source_set - {s}
    for row in rows:
        sol = brute_st_cut(reweight(H2, 1, row.w2), s, t)
        side = sol.source_set - {s}
        assert row.value == sol.value
        assert row.source_size == len(side)
        assert row.jaccard == jaccard(side, base)


def test_parallel_sweep_matches_serial():
    H = synthetic_hypergraph(n=20, m=30, seed=7)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SeedsAdjacentWarning)
        H2, s, t = build_super_st(H, "n0", "n19")
    grid = (1, 2, Fraction(1, 4))
    assert sweep_w2(H2, s, t, grid, workers=2) == sweep_w2(H2, s, t, grid)


def test_synthetic_is_reproducible():
    a, b = synthetic_hypergraph(), synthetic_hypergraph()
    assert a == b and a.n == 50 and len(a.edges) == 120
    assert synthetic_hypergraph(seed=3) != a
