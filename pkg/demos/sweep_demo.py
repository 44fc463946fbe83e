"""Sweep w2 on the bundled synthetic hypergraph and print how the source side drifts."""
import sys
import warnings
from fractions import Fraction
from importlib.resources import files

from hypercut.errors import SeedsAdjacentWarning
from hypercut.experiment import build_super_st, sweep_w2
from hypercut.io import parse_hypergraph, write_sweep_csv


def main():
    H = parse_hypergraph(files("hypercut") / "data" / "synthetic50.hgr")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SeedsAdjacentWarning)
        H2, s, t = build_super_st(H, "n0", "n49")
    rows = sweep_w2(H2, s, t, (1, 2, Fraction(1, 20)))
    for row in rows:
        bar = "#" * row.source_size
        print(f"w2={float(row.w2):4.2f}  value={float(row.value):6.2f}  J={float(row.jaccard):.3f}  {bar}")
    print()
    write_sweep_csv(rows[:3], sys.stdout)


if __name__ == "__main__":
    main()
