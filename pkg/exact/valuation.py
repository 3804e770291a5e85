"""
Octodp — p-adic Valuations
Extended valuations (integers plus +infinity) and the valuation map on QQ.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Any

from sympy import isprime, multiplicity

from errors import PreconditionError
from exact.rationals import qq


@functools.total_ordering
@dataclass(frozen=True)
class ExtValuation:
    """A valuation value: a rational number or +infinity.

    ``finite`` is None exactly for the infinite variant.  Valuations of
    rationals are integers; Newton-polygon slopes may be fractional.
    """

    finite: Any = None

    @property
    def is_infinite(self) -> bool:
        return self.finite is None

    @classmethod
    def of(cls, value: Any) -> ExtValuation:
        return cls(qq(value) if not isinstance(value, int) else value)

    def __add__(self, other: ExtValuation | int) -> ExtValuation:
        if not isinstance(other, ExtValuation):
            other = ExtValuation(other)
        if self.is_infinite or other.is_infinite:
            return INFINITY
        return ExtValuation(self.finite + other.finite)

    __radd__ = __add__

    def __sub__(self, other: int) -> ExtValuation:
        if self.is_infinite:
            return INFINITY
        return ExtValuation(self.finite - other)

    def __mul__(self, k: int) -> ExtValuation:
        if k < 0:
            raise ValueError("Extended valuations scale by non-negative integers only")
        if self.is_infinite:
            return INFINITY if k > 0 else ExtValuation(0)
        return ExtValuation(self.finite * k)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ExtValuation):
            return self.finite == other.finite
        if isinstance(other, int) and not self.is_infinite:
            return self.finite == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("ExtValuation", self.finite))

    def __lt__(self, other: ExtValuation | int) -> bool:
        if not isinstance(other, ExtValuation):
            other = ExtValuation(other)
        if self.is_infinite:
            return False
        if other.is_infinite:
            return True
        return self.finite < other.finite

    def __int__(self) -> int:
        if self.is_infinite:
            raise ValueError("Infinite valuation has no integer value")
        return int(self.finite)

    def to_json(self) -> int | str:
        if self.is_infinite:
            return "inf"
        if getattr(self.finite, "denominator", 1) == 1:
            return int(self.finite)
        return f"{int(self.finite.numerator)}/{int(self.finite.denominator)}"

    def __repr__(self) -> str:
        return "+inf" if self.is_infinite else str(self.to_json())


INFINITY = ExtValuation(None)


@functools.lru_cache(maxsize=64)
def check_prime(p: int) -> int:
    """Reject composite primes and primes below 5."""
    if not isinstance(p, int) or p < 5 or not isprime(p):
        raise PreconditionError(f"p must be a prime >= 5, got {p}")
    return p


def valuation(q: Any, p: int) -> ExtValuation:
    """Exponent of p in the rational q; +infinity for q = 0."""
    check_prime(p)
    q = qq(q)
    if q == 0:
        return INFINITY
    num = abs(int(q.numerator))
    den = int(q.denominator)
    return ExtValuation(int(multiplicity(p, num)) - int(multiplicity(p, den)))


def valuations(values: Any, p: int) -> tuple[ExtValuation, ...]:
    return tuple(valuation(v, p) for v in values)


def min_valuation(vals: Any) -> ExtValuation:
    vals = list(vals)
    return min(vals) if vals else INFINITY
