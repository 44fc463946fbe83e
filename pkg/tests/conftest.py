import random
from fractions import Fraction

import pytest

from hypercut.hypergraph import Hypergraph, make_edge
from hypercut.splitting import SymmetricCB

# Lines collected by test_acceptance.py and echoed in the terminal summary.
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])


@pytest.fixture
def report():
    def _report(criterion: int, ok: bool, detail: str) -> None:
        line = f"criterion {criterion:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES[criterion] = line
        print(line)
    return _report


def random_submodular_w(rng: random.Random, r: int, denom: int = 4) -> tuple:
    """Concave, nondecreasing w_1..w_q with 2w_1 >= w_2, built from nonnegative slopes."""
    q = r // 2
    w, slope, prev = [], Fraction(rng.randint(0, 4 * denom), denom), Fraction(0)
    for _ in range(q):
        prev += slope
        w.append(prev)
        slope = slope * Fraction(rng.randint(0, denom), denom)
    if q and w[0] == 0:
        w = [x + 1 for x in w]
        if q >= 2 and 2 * w[0] < w[1]:
            w = [w[0]] * q
    return tuple(w)


def random_cb_instance(rng: random.Random, max_n: int = 12, max_m: int = 15, max_r: int = 6):
    n = rng.randint(2, max_n)
    edges = []
    for _ in range(rng.randint(0, max_m)):
        r = rng.randint(2, min(max_r, n))
        nodes = rng.sample(range(n), r)
        edges.append(make_edge(nodes, SymmetricCB(r, random_submodular_w(rng, r))))
    s, t = rng.sample(range(n), 2)
    return Hypergraph(n, tuple(edges)), s, t


# -- independent satisfiability oracles ----------------------------------------------

def dpll(clauses, assignment=None) -> bool:
    """Plain DPLL with unit propagation over clauses of nonzero ints."""
    assignment = dict(assignment or {})
    clauses = [list(c) for c in clauses]
    while True:
        simplified, unit = [], None
        for c in clauses:
            if any(assignment.get(abs(l)) == (l > 0) for l in c):
                continue
            rest = [l for l in c if abs(l) not in assignment]
            if not rest:
                return False
            if len(rest) == 1 and unit is None:
                unit = rest[0]
            simplified.append(rest)
        clauses = simplified
        if not clauses:
            return True
        if unit is None:
            break
        assignment[abs(unit)] = unit > 0
    var = abs(clauses[0][0])
    return dpll(clauses, {**assignment, var: True}) or dpll(clauses, {**assignment, var: False})


def nae_satisfiable(num_vars: int, clauses) -> bool:
    """Monotone NAE: reduce to CNF (each triple needs a true and a false variable)."""
    cnf = []
    for c in clauses:
        cnf.append(list(c))
        cnf.append([-x for x in c])
    return dpll(cnf) if cnf else True


def max_cut(n: int, edges) -> tuple[int, list[frozenset]]:
    """Best cut size and every vertex set attaining it (both sides listed)."""
    best, sets = -1, []
    for mask in range(1 << n):
        cut = sum(1 for u, v in edges if (mask >> u & 1) != (mask >> v & 1))
        S = frozenset(v for v in range(n) if mask >> v & 1)
        if cut > best:
            best, sets = cut, [S]
        elif cut == best:
            sets.append(S)
    return best, sets
