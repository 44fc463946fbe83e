"""Print the penalty tables of the gadget families and show the four-node basis at work."""
from fractions import Fraction

from hypercut.errors import NotModelable
from hypercut.gadgets import (
    FOUR_NODE_LABELS,
    FOUR_NODE_SUBSETS,
    asym_cb_gadget,
    cb_gadget,
    cb_weights,
    combined_cb_gadget,
    four_node_basis_gadget,
    gadget_eval,
    lawler_gadget,
    three_node_general_gadget,
)
from hypercut.numeric import fmt
from hypercut.splitting import SymmetricCB


def by_size(g, r):
    return " ".join(fmt(gadget_eval(g, range(i))) for i in range(r + 1))


def main():
    r = 6
    print(f"penalty by |S| for r = {r}")
    print("  lawler      ", by_size(lawler_gadget(r), r))
    for b in range(1, 4):
        print(f"  cb b={b}      ", by_size(cb_gadget(r, b), r))
    print("  asym a=4 b=2", by_size(asym_cb_gadget(r, 4, 2), r))

    f = SymmetricCB(6, (1, Fraction(7, 4), 2))
    c = cb_weights(f)
    print("\nw =", [fmt(x) for x in f.w], "-> cb weights", [fmt(x) for x in c])
    print("combined gadget:", by_size(combined_cb_gadget(f), 6))

    g = three_node_general_gadget(2, 1, 1, 2, 2, 1)
    print("\nthree-node gadget aux nodes:", g.aux_count)

    p = (4, Fraction(7, 2), Fraction(7, 2), Fraction(7, 2), 6, 6, 6)
    g = four_node_basis_gadget(p)
    print("four-node table reproduced:",
          {lab: fmt(gadget_eval(g, S)) for lab, S in zip(FOUR_NODE_LABELS, FOUR_NODE_SUBSETS)})
    try:
        four_node_basis_gadget((0, 2, 2, 2, 2, 2, 2))
    except NotModelable as exc:
        print("clique table:", exc)


if __name__ == "__main__":
    main()
