"""Exact-arithmetic helpers: the infinity sentinel, rational parsing, scaling."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union


class _Infinity:
    """Reserved sentinel for infinite weights.

    Compares greater than every finite number and absorbs addition.
    ``INF * 0`` is ``0`` so that zero-scaled gadgets vanish cleanly.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INF"

    __str__ = __repr__

    def __reduce__(self):
        return (_Infinity, ())

    def __hash__(self) -> int:
        return hash("hypercut.INF")

    def __eq__(self, other) -> bool:
        return other is self

    def __lt__(self, other) -> bool:
        return False

    def __le__(self, other) -> bool:
        return other is self

    def __gt__(self, other) -> bool:
        return other is not self

    def __ge__(self, other) -> bool:
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __mul__(self, other):
        if other is self:
            return self
        if other < 0:
            raise ValueError("negative multiple of INF")
        return self if other > 0 else Fraction(0)

    __rmul__ = __mul__


INF = _Infinity()

Number = Union[Fraction, _Infinity]


def is_inf(x) -> bool:
    return x is INF


def as_rational(x) -> Number:
    """Convert ints, Fractions, decimal strings ("0.05"), ratio strings ("3/2")
    or "inf" to an exact value.  Floats are converted exactly, so prefer strings."""
    if x is INF:
        return INF
    if isinstance(x, str):
        s = x.strip()
        if s.lower() in ("inf", "infinity", "∞"):
            return INF
        return Fraction(s)
    if isinstance(x, float):
        if math.isinf(x):
            return INF
        return Fraction(x)
    return Fraction(x)


def fmt(x) -> str:
    """Render an exact value as ``p/q`` (or ``p``, or ``inf``)."""
    if x is INF:
        return "inf"
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def common_denominator(values: Iterable) -> int:
    d = 1
    for v in values:
        if v is INF:
            continue
        d = math.lcm(d, Fraction(v).denominator)
    return d


def integer_root(n: int, k: int) -> int | None:
    """Exact k-th root of a nonnegative integer, or None if it is not a perfect power."""
    if n < 0:
        raise ValueError("negative base")
    if n in (0, 1):
        return n
    r = round(n ** (1.0 / k))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**k == n:
            return cand
    return None


def exact_power(base: int | Fraction, alpha: Fraction) -> Fraction | None:
    """``base ** alpha`` as an exact rational, or None when the result is irrational."""
    base = Fraction(base)
    alpha = Fraction(alpha)
    if base == 0:
        return Fraction(0) if alpha > 0 else None
    p, q = alpha.numerator, alpha.denominator
    num = integer_root(base.numerator, q)
    den = integer_root(base.denominator, q)
    if num is None or den is None:
        return None
    return Fraction(num, den) ** p


def power(base: int | Fraction, alpha: Fraction) -> tuple[Fraction, bool]:
    """Return ``(value, exact)``.  Irrational powers fall back to a close rational."""
    v = exact_power(base, alpha)
    if v is not None:
        return v, True
    approx = Fraction(float(base) ** float(alpha)).limit_denominator(10**12)
    return approx, False
