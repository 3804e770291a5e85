"""
Octodp — Rational Helpers
Parsing, formatting and projective normalisation of exact rationals.

Rationals are sympy ``QQ`` elements throughout: always in lowest terms with a
positive denominator, and ``0`` is ``0/1``.
"""

import math
import re
from collections.abc import Iterable, Sequence
from typing import Any

from sympy import QQ, Rational as SympyRational

from errors import PreconditionError

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def qq(value: Any, denominator: int = 1) -> Any:
    """Coerce an int, ``n/m`` string, sympy Rational or QQ element to QQ."""
    if isinstance(value, str):
        value = parse_rational(value)
    elif isinstance(value, SympyRational):
        value = QQ.from_sympy(value)
    elif isinstance(value, int):
        value = QQ(value, 1)
    else:
        value = QQ.convert(value)
    if denominator != 1:
        value = value / QQ(denominator, 1)
    return value


def parse_rational(text: str) -> Any:
    """Parse ``"n"`` or ``"n/m"`` into an exact rational."""
    match = _RATIONAL_RE.match(text)
    if not match:
        raise PreconditionError(f"Unparseable rational: {text!r}")
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) else 1
    if den == 0:
        raise PreconditionError(f"Zero denominator in rational: {text!r}")
    return QQ(num, den)


def parse_rational_list(text: str, expected: int | None = None) -> list[Any]:
    """Parse a comma-separated list of exact rationals."""
    parts = [p for p in text.split(",") if p.strip()]
    values = [parse_rational(p) for p in parts]
    if expected is not None and len(values) != expected:
        raise PreconditionError(
            f"Expected {expected} comma-separated rationals, got {len(values)}"
        )
    return values


def format_rational(q: Any) -> str:
    """Decimal string of an exact rational: ``"n"`` or ``"n/m"``."""
    num, den = int(q.numerator), int(q.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


def to_sympy(q: Any) -> SympyRational:
    return QQ.to_sympy(q)


def clear_denominators(values: Sequence[Any]) -> list[int]:
    """Scale a rational vector to integers by the lcm of its denominators."""
    lcm = 1
    for v in values:
        lcm = math.lcm(lcm, int(v.denominator))
    return [int(v.numerator) * (lcm // int(v.denominator)) for v in values]


def primitive_integer_vector(values: Sequence[Any]) -> tuple[int, ...]:
    """Projective canonical form: integer content 1, first nonzero entry positive."""
    ints = clear_denominators([qq(v) for v in values])
    content = 0
    for v in ints:
        content = math.gcd(content, v)
    if content == 0:
        raise PreconditionError("Cannot normalise the zero vector")
    ints = [v // content for v in ints]
    first = next(v for v in ints if v != 0)
    if first < 0:
        ints = [-v for v in ints]
    return tuple(ints)


def first_nonzero_normalised(values: Sequence[Any]) -> tuple[Any, ...]:
    """Divide a vector by its first nonzero entry."""
    values = [qq(v) for v in values]
    pivot = next((v for v in values if v != 0), None)
    if pivot is None:
        raise PreconditionError("Cannot normalise the zero vector")
    return tuple(v / pivot for v in values)


def proportional(u: Sequence[Any], v: Sequence[Any]) -> bool:
    """True iff two nonzero vectors agree up to a nonzero scalar."""
    if len(u) != len(v):
        return False
    if not any(x != 0 for x in u) or not any(x != 0 for x in v):
        return False
    return first_nonzero_normalised(u) == first_nonzero_normalised(v)


def product(values: Iterable[Any]) -> Any:
    result = QQ.one
    for v in values:
        result *= v
    return result
