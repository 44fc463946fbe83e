"""Two-way hyperedge splitting functions.

A splitting function of arity ``r`` assigns a penalty to every subset ``S`` of
the slots ``{0, ..., r-1}`` of a hyperedge, where ``S`` is the part of the edge
that lands on the *source* side of a cut.  Every variant is zero on the empty
set and on the full slot set.

Variants
--------
SymmetricCB   penalty ``w[i-1]`` where ``i = min(|S|, r - |S|)``
AsymmetricCB  penalty ``y[i-1]`` where ``i = |S|`` (source-side count)
GeneralTable  one penalty per subset, indexed by bitmask (bit ``k`` = slot ``k``)
NeedyNode     ``weight`` iff slot ``z`` is alone on its side

All values are exact (``Fraction``) except where the ``INF`` sentinel is used
for hard links.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from .errors import ArityTooLarge
from .numeric import INF, Number, as_rational, common_denominator, fmt, power

MAX_TABLE_ARITY = 12
MAX_REPORTED_VIOLATIONS = 16


def subset_mask(S: Iterable[int]) -> int:
    mask = 0
    for i in S:
        mask |= 1 << i
    return mask


def mask_members(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _check_arity(r: int) -> None:
    if r < 1:
        raise ValueError(f"arity must be positive, got {r}")


def _nonneg(values, what: str) -> None:
    for v in values:
        if v is not INF and v < 0:
            raise ValueError(f"{what} must be nonnegative, got {fmt(v)}")


class _TwoWay:
    """Shared evaluation plumbing; subclasses implement ``mask_penalty``."""

    r: int
    symmetric: bool = False

    def penalty(self, S: Iterable[int]) -> Number:
        S = tuple(S)
        for i in S:
            if not 0 <= i < self.r:
                raise ValueError(f"slot {i} outside arity {self.r}")
        return self.mask_penalty(subset_mask(S))

    def table(self) -> "GeneralTable":
        return GeneralTable(self.r, tuple(self.mask_penalty(m) for m in range(1 << self.r)))

    def permuted(self, mapping: Sequence[int]):
        """Relabel slots: old slot ``i`` becomes slot ``mapping[i]``."""
        return self

    @property
    def is_exact(self) -> bool:
        return True


@dataclass(frozen=True)
class SymmetricCB(_TwoWay):
    r: int
    w: tuple
    exact: bool = True
    name: str = field(default="", compare=False)

    symmetric = True

    def __post_init__(self):
        _check_arity(self.r)
        w = tuple(as_rational(x) for x in self.w)
        object.__setattr__(self, "w", w)
        if len(w) != self.r // 2:
            raise ValueError(f"symmetric CB on {self.r} nodes needs {self.r // 2} penalties, got {len(w)}")
        _nonneg(w, "penalties")
        if INF in w and len(w) > 1:
            raise ValueError("infinite penalties are only supported for 2- and 3-node edges")

    @property
    def q(self) -> int:
        return self.r // 2

    @property
    def is_exact(self) -> bool:
        return self.exact

    def size_penalty(self, size: int) -> Number:
        i = min(size, self.r - size)
        return Fraction(0) if i == 0 else self.w[i - 1]

    def mask_penalty(self, mask: int) -> Number:
        return self.size_penalty(bin(mask).count("1"))

    def scaled(self, c) -> "SymmetricCB":
        c = as_rational(c)
        return SymmetricCB(self.r, tuple(x * c for x in self.w), self.exact, self.name)

    def spec(self) -> str:
        return "cb " + " ".join(fmt(x) for x in self.w)


@dataclass(frozen=True)
class AsymmetricCB(_TwoWay):
    """``y[i-1]`` is the penalty when exactly ``i`` slots sit on the source side."""

    r: int
    y: tuple

    def __post_init__(self):
        _check_arity(self.r)
        y = tuple(as_rational(x) for x in self.y)
        object.__setattr__(self, "y", y)
        if len(y) != self.r - 1:
            raise ValueError(f"asymmetric CB on {self.r} nodes needs {self.r - 1} penalties, got {len(y)}")
        _nonneg(y, "penalties")

    @property
    def symmetric(self) -> bool:
        return all(self.y[i] == self.y[self.r - 2 - i] for i in range(self.r - 1))

    def size_penalty(self, size: int) -> Number:
        return Fraction(0) if size in (0, self.r) else self.y[size - 1]

    def mask_penalty(self, mask: int) -> Number:
        return self.size_penalty(bin(mask).count("1"))

    def scaled(self, c) -> "AsymmetricCB":
        c = as_rational(c)
        return AsymmetricCB(self.r, tuple(x * c for x in self.y))

    def spec(self) -> str:
        return "acb " + " ".join(fmt(x) for x in self.y)


@dataclass(frozen=True)
class GeneralTable(_TwoWay):
    r: int
    values: tuple

    def __post_init__(self):
        _check_arity(self.r)
        vals = tuple(as_rational(x) for x in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) != 1 << self.r:
            raise ValueError(f"table on {self.r} nodes needs {1 << self.r} entries, got {len(vals)}")
        _nonneg(vals, "table entries")
        if vals[0] != 0 or vals[-1] != 0:
            raise ValueError("table must vanish on the empty and the full set")

    @classmethod
    def from_dict(cls, r: int, entries: Mapping, symmetric: bool = False) -> "GeneralTable":
        """Build from ``{subset-or-mask: penalty}``; absent subsets are 0.

        With ``symmetric=True`` the complement of each listed subset receives the
        same penalty unless the complement is itself listed.
        """
        full = (1 << r) - 1
        vals = [Fraction(0)] * (1 << r)
        given = {}
        for key, pen in entries.items():
            m = key if isinstance(key, int) else subset_mask(key)
            if not 0 <= m <= full:
                raise ValueError(f"subset mask {m} outside arity {r}")
            given[m] = as_rational(pen)
        for m, pen in given.items():
            vals[m] = pen
            if symmetric and (full ^ m) not in given:
                vals[full ^ m] = pen
        return cls(r, tuple(vals))

    @property
    def symmetric(self) -> bool:
        full = (1 << self.r) - 1
        return all(self.values[m] == self.values[full ^ m] for m in range(1 << self.r))

    def mask_penalty(self, mask: int) -> Number:
        return self.values[mask]

    def table(self) -> "GeneralTable":
        return self

    def scaled(self, c) -> "GeneralTable":
        c = as_rational(c)
        return GeneralTable(self.r, tuple(v * c for v in self.values))

    def permuted(self, mapping: Sequence[int]) -> "GeneralTable":
        new = [Fraction(0)] * (1 << self.r)
        for m, v in enumerate(self.values):
            new[subset_mask(mapping[i] for i in mask_members(m))] = v
        return GeneralTable(self.r, tuple(new))

    def spec(self) -> str:
        body = ", ".join(f"{m}:{fmt(v)}" for m, v in enumerate(self.values) if 0 < m < len(self.values) - 1)
        return "table { " + body + " }"


@dataclass(frozen=True)
class NeedyNode(_TwoWay):
    r: int
    z: int
    weight: Fraction = Fraction(1)

    symmetric = True

    def __post_init__(self):
        _check_arity(self.r)
        if not 0 <= self.z < self.r:
            raise ValueError(f"needy slot {self.z} outside arity {self.r}")
        object.__setattr__(self, "weight", as_rational(self.weight))
        _nonneg([self.weight], "weight")

    def mask_penalty(self, mask: int) -> Number:
        full = (1 << self.r) - 1
        zbit = 1 << self.z
        if self.r >= 2 and (mask == zbit or mask == full ^ zbit):
            return self.weight
        return Fraction(0)

    def scaled(self, c) -> "NeedyNode":
        return NeedyNode(self.r, self.z, self.weight * as_rational(c))

    def permuted(self, mapping: Sequence[int]) -> "NeedyNode":
        return NeedyNode(self.r, mapping[self.z], self.weight)

    def spec(self) -> str:
        return f"needy {self.z} {fmt(self.weight)}"


SplittingFunction = Union[SymmetricCB, AsymmetricCB, GeneralTable, NeedyNode]


# -- named cardinality-based families -------------------------------------------------

def all_or_nothing(r: int, c=1) -> SymmetricCB:
    c = as_rational(c)
    return SymmetricCB(r, (c,) * (r // 2), name="aon")


def linear(r: int, c=1) -> SymmetricCB:
    c = as_rational(c)
    return SymmetricCB(r, tuple(i * c for i in range(1, r // 2 + 1)), name="linear")


def quadratic(r: int, c=1) -> SymmetricCB:
    c = as_rational(c)
    return SymmetricCB(r, tuple(i * (r - i) * c for i in range(1, r // 2 + 1)), name="quadratic")


def discount(r: int, alpha, c=1) -> SymmetricCB:
    """``min(|S|, |e\\S|) ** alpha``.  Marked inexact when some power is irrational."""
    alpha = as_rational(alpha)
    if not 0 < alpha <= 1:
        raise ValueError("discount exponent must lie in (0, 1]")
    c = as_rational(c)
    w, exact = [], True
    for i in range(1, r // 2 + 1):
        v, ok = power(i, alpha)
        exact &= ok
        w.append(v * c)
    return SymmetricCB(r, tuple(w), exact=exact, name="discount")


def lm_submodular(r: int, alpha, c=1) -> SymmetricCB:
    """``1/2 + 1/2 * min(1, |S|/k, |e\\S|/k)`` with ``k = floor(alpha * r)``."""
    alpha = as_rational(alpha)
    k = int(alpha * r)
    if k < 1:
        raise ValueError("floor(alpha * r) must be at least 1")
    c = as_rational(c)
    half = Fraction(1, 2)
    w = tuple((half + half * min(Fraction(1), Fraction(i, k))) * c for i in range(1, r // 2 + 1))
    return SymmetricCB(r, w, name="lm")


def evaluate(f, S: Iterable[int]) -> Number:
    return f.penalty(S)


def to_table(f) -> GeneralTable:
    return f.table()


# -- submodularity ------------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    name: str
    indices: tuple
    lhs: Number
    rhs: Number

    def __str__(self) -> str:
        return f"{self.name} at {self.indices}: {fmt(self.lhs)} < {fmt(self.rhs)}"


@dataclass
class SubmodularityReport:
    violations: list = field(default_factory=list)
    truncated: bool = False

    @property
    def is_submodular(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.is_submodular

    def add(self, v: Violation) -> None:
        if len(self.violations) < MAX_REPORTED_VIOLATIONS:
            self.violations.append(v)
        else:
            self.truncated = True

    def __str__(self) -> str:
        if self.is_submodular:
            return "submodular"
        lines = ["not submodular:"] + [f"  {v}" for v in self.violations]
        if self.truncated:
            lines.append("  ...")
        return "\n".join(lines)


def _concavity_report(vals: Sequence, label: str, tail: str) -> SubmodularityReport:
    """Shared check behind the CB-type tests.

    ``vals`` is the penalty vector ``v_1..v_n`` with ``v_0 = 0``.  Checks
    nonnegativity of ``v_1``, ``2v_j >= v_{j-1} + v_{j+1}`` for ``j < n`` and the
    closing condition selected by ``tail``: ``"monotone"`` (``v_n >= v_{n-1}``,
    plus monotonicity throughout) or ``"zero"`` (``2v_n >= v_{n-1}``, i.e. ``v_{n+1} = 0``).
    """
    rep = SubmodularityReport()
    n = len(vals)
    v = [Fraction(0)] + list(vals)
    if n and v[1] < 0:
        rep.add(Violation(f"{label}_1 >= 0", (1,), v[1], Fraction(0)))
    for j in range(1, n):
        lhs, rhs = 2 * v[j], v[j - 1] + v[j + 1]
        if lhs < rhs:
            name = f"2{label}_1 >= {label}_2" if j == 1 else f"2{label}_j >= {label}_(j-1) + {label}_(j+1)"
            rep.add(Violation(name, (j,), lhs, rhs))
    if tail == "monotone":
        for j in range(1, n):
            if v[j + 1] < v[j]:
                rep.add(Violation(f"{label}_(j+1) >= {label}_j", (j, j + 1), v[j + 1], v[j]))
    elif n >= 1:
        lhs, rhs = 2 * v[n], v[n - 1]
        if lhs < rhs:
            rep.add(Violation(f"2{label}_(r-1) >= {label}_(r-2)", (n,), lhs, rhs))
    return rep


def is_submodular_cb(f: SymmetricCB) -> SubmodularityReport:
    if INF in f.w:
        return SubmodularityReport()
    return _concavity_report(f.w, "w", "monotone")


def is_submodular_asym(f: AsymmetricCB) -> SubmodularityReport:
    # concavity of i -> y_i on 0..r with y_0 = y_r = 0
    return _concavity_report(f.y, "y", "zero")


def _table_ints(values) -> tuple[list[int], bool]:
    finite = [v for v in values if v is not INF]
    d = common_denominator(finite)
    big = sum(abs(int(v * d)) for v in finite) * 4 + 1
    ints = [big if v is INF else int(v * d) for v in values]
    return ints, INF in values


def is_submodular_table(f) -> SubmodularityReport:
    """Brute force over all subset pairs: ``w(A) + w(B) >= w(A & B) + w(A | B)``."""
    if f.r > MAX_TABLE_ARITY:
        raise ArityTooLarge(f"table submodularity check limited to r <= {MAX_TABLE_ARITY}, got {f.r}")
    vals = f.table().values
    rep = SubmodularityReport()
    n = len(vals)
    if INF in vals:
        for a in range(n):
            for b in range(a + 1, n):
                lhs = vals[a] + vals[b]
                rhs = vals[a & b] + vals[a | b]
                if lhs < rhs:
                    rep.add(Violation("submodular", (mask_members(a), mask_members(b)), lhs, rhs))
        return rep
    ints, _ = _table_ints(vals)
    if max(map(abs, ints), default=0) < 2**60:
        arr = np.asarray(ints, dtype=np.int64)
    else:
        arr = np.asarray(ints, dtype=object)
    idx = np.arange(n)
    for a in range(n):
        b = idx[a + 1:]
        bad = arr[a] + arr[b] < arr[a & b] + arr[a | b]
        if bad.any():
            for bb in b[np.nonzero(bad)[0]]:
                bb = int(bb)
                rep.add(Violation("submodular", (mask_members(a), mask_members(bb)),
                                  vals[a] + vals[bb], vals[a & bb] + vals[a | bb]))
                if rep.truncated:
                    return rep
    return rep


def is_submodular(f) -> SubmodularityReport:
    if isinstance(f, SymmetricCB):
        return is_submodular_cb(f)
    if isinstance(f, AsymmetricCB):
        return is_submodular_asym(f)
    return is_submodular_table(f)


def classify(f) -> dict:
    t = f.table()
    by_size: dict[int, set] = {}
    for m, v in enumerate(t.values):
        by_size.setdefault(bin(m).count("1"), set()).add(v)
    return {
        "cardinality_based": all(len(s) == 1 for s in by_size.values()),
        "symmetric": t.symmetric,
    }


def cardinality_vector(f) -> tuple:
    """Penalty by source-side count ``1..r-1`` for a cardinality-based table."""
    t = f.table()
    return tuple(t.values[(1 << i) - 1] for i in range(1, t.r))


def all_subsets(r: int):
    for k in range(r + 1):
        yield from itertools.combinations(range(r), k)
