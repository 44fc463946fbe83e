"""Small instances of each hardness construction, solved by enumeration."""
import itertools

from hypercut.hardness import (
    CNF,
    gen_4cb_from_maxcut,
    gen_5cb_from_monnae3sat,
    gen_needy_from_sat,
    gen_rainbow_from_monnae3sat,
)
from hypercut.numeric import fmt
from hypercut.oracle import brute_multiway, brute_st_cut


def main():
    # max cut of a 5-cycle is 4; the instance value is |E| - 4/2 = 3
    c5 = [(i, (i + 1) % 5) for i in range(5)]
    H, s, t = gen_4cb_from_maxcut(5, c5)
    sol = brute_st_cut(H, s, t)
    side = sorted(v - 2 for v in sol.source_set - {s})
    print(f"C5 via 4-node edges: value {fmt(sol.value)}, one side of the cut {side}")

    for name, cnf in [("sat", CNF(3, [(1, -2), (2, 3), (-1, -3)])), ("unsat", CNF(1, [(1,), (-1,)]))]:
        H, s, t = gen_needy_from_sat(cnf)
        print(f"needy-node {name}: {H.n} nodes, optimum {fmt(brute_st_cut(H, s, t).value)}")

    five = list(itertools.combinations(range(1, 6), 3))
    for nv, clauses in [(4, [(1, 2, 3), (2, 3, 4)]), (5, five)]:
        H, s, t = gen_5cb_from_monnae3sat(nv, clauses)
        print(f"5-node NAE with {len(clauses)} clauses: optimum {fmt(brute_st_cut(H, s, t).value)}")

    H, terms = gen_rainbow_from_monnae3sat(3, [(1, 2, 3)])
    value, assign = brute_multiway(H, terms)
    print("rainbow instance, one clause: optimum", fmt(value))


if __name__ == "__main__":
    main()
