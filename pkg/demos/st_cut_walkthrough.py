"""Walk through one s-t cut: build a hypergraph, reduce it to a flow network, solve, and check by enumeration."""
from fractions import Fraction

from hypercut.hypergraph import Hypergraph
from hypercut.numeric import fmt
from hypercut.oracle import brute_st_cut
from hypercut.reduction import reduce_st, solve_st
from hypercut.splitting import SymmetricCB, all_or_nothing, classify, is_submodular


def main():
    # a 4-node edge where a 2-2 split costs 3/2 and a 1-3 split costs 1
    cb = SymmetricCB(4, (1, Fraction(3, 2)))
    print("splitting function:", cb.spec(), classify(cb))
    print("submodular:", is_submodular(cb).is_submodular)

    H = Hypergraph.build(6, [
        ((0, 1, 2, 3), cb),
        ((2, 3, 4), all_or_nothing(3, 2)),
        ((3, 4, 5), all_or_nothing(3)),
        ((1, 5), all_or_nothing(2)),
    ])
    net, _ = reduce_st(H, 0, 5)
    print(f"flow network: {net.node_count} nodes, {len(net.arcs)} arcs")
    for tail, head, cap in net.arcs[:8]:
        print(f"  {net.node_names[tail]:>8} -> {net.node_names[head]:<8} {fmt(cap)}")
    print("  ...")

    sol = solve_st(H, 0, 5)
    print("min cut", fmt(sol.value), "source side", sorted(sol.source_set))
    check = brute_st_cut(H, 0, 5)
    print("enumeration agrees:", check.value == sol.value and check.source_set == sol.source_set)

    bad = SymmetricCB(4, (1, Fraction(5, 2)))
    rep = is_submodular(bad)
    print(f"\n{bad.spec()} submodular: {rep.is_submodular}")
    for v in rep.violations:
        print("  ", v)


if __name__ == "__main__":
    main()
