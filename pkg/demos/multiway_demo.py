"""Three-terminal multiway cut: exact node-weighted solve, isolating heuristic, and brute force."""
from fractions import Fraction

from hypercut.hypergraph import Hypergraph
from hypercut.multiway import MoveBased, all_or_nothing, is_submodular_movebased, nmc_weights, reduce_multiway, solve_multiway
from hypercut.numeric import fmt
from hypercut.oracle import brute_multiway


def main():
    f = MoveBased(4, (1, Fraction(3, 2), 2))
    print("move penalties", [fmt(x) for x in f.m], "submodular:", is_submodular_movebased(f).is_submodular)
    print("basis weights", [fmt(x) for x in nmc_weights(f)])

    H = Hypergraph.build(9, [
        ((0, 3, 4, 5), f),
        ((1, 4, 6, 7), f),
        ((2, 5, 7, 8), f),
        ((3, 6, 8), all_or_nothing(3)),
        ((4, 5, 7), all_or_nothing(3, 2)),
    ])
    terms = [0, 1, 2]
    g = reduce_multiway(H, terms)
    print(f"node-weighted graph: {len(g.weights)} nodes")

    for method in ("exact", "isolating"):
        sol = solve_multiway(H, terms, method)
        clusters = {i: sorted(v for v, c in sol.assignment.items() if c == i) for i in range(3)}
        print(f"{method:>9}: value {fmt(sol.value)}  clusters {clusters}")
    value, _ = brute_multiway(H, terms)
    print(f"{'brute':>9}: value {fmt(value)}")


if __name__ == "__main__":
    main()
