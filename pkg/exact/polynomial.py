"""
Octodp — Sparse Polynomials
Thin helpers over sympy's sparse polynomial rings (``PolyElement``).

A ``PolyElement`` is the sparse polynomial type used everywhere: a mapping
from exponent tuples to nonzero QQ coefficients, with the ordered variable
names carried by its ring.
"""

import functools
from collections.abc import Mapping, Sequence
from typing import Any

from sympy import QQ
from sympy.polys.rings import PolyElement, PolyRing, ring

from errors import ExactDivisionError, PreconditionError
from exact.rationals import format_rational, qq


@functools.lru_cache(maxsize=None)
def poly_ring(names: str) -> tuple[PolyRing, tuple[PolyElement, ...]]:
    """Polynomial ring over QQ in comma-separated variables, e.g. ``"X,Y,Z"``."""
    R, *gens = ring(names, QQ)
    return R, tuple(gens)


def variable_names(f: PolyElement) -> list[str]:
    return [str(s) for s in f.ring.symbols]


def from_terms(R: PolyRing, terms: Mapping[tuple[int, ...], Any]) -> PolyElement:
    """Build a polynomial from an exponent-vector -> coefficient map."""
    clean = {tuple(m): qq(c) for m, c in terms.items() if qq(c) != 0}
    return R.from_dict(clean) if clean else R.zero


def substitute(f: PolyElement, assignment: Mapping[str, PolyElement]) -> PolyElement:
    """Compose f with polynomials assigned to each of its variables.

    Args:
        f: Polynomial to compose.
        assignment: Variable name -> polynomial; all targets share one ring.

    Returns:
        The exact composed polynomial in the targets' ring.
    """
    names = variable_names(f)
    missing = [n for n in names if n not in assignment]
    if missing:
        raise PreconditionError(f"substitute: no assignment for {', '.join(missing)}")
    targets = [assignment[n] for n in names]
    target_ring = targets[0].ring
    if any(t.ring != target_ring for t in targets):
        raise PreconditionError("substitute: assigned polynomials must share one ring")

    power_cache: dict[tuple[int, int], PolyElement] = {}

    def power(i: int, e: int) -> PolyElement:
        key = (i, e)
        if key not in power_cache:
            power_cache[key] = targets[i] ** e
        return power_cache[key]

    result = target_ring.zero
    for monom, coeff in f.items():
        term = target_ring.one * coeff
        for i, e in enumerate(monom):
            if e:
                term = term * power(i, e)
        result += term
    return result


def evaluate(f: PolyElement, point: Sequence[Any]) -> Any:
    """Exact value of f at a rational point (one value per variable)."""
    point = [qq(v) for v in point]
    if len(point) != f.ring.ngens:
        raise PreconditionError(
            f"evaluate: expected {f.ring.ngens} values, got {len(point)}"
        )
    total = QQ.zero
    for monom, coeff in f.items():
        term = coeff
        for v, e in zip(point, monom):
            if e:
                term *= v**e
        total += term
    return total


def is_homogeneous(f: PolyElement, degree: int | None = None) -> bool:
    degrees = {sum(m) for m in f.keys()}
    if not degrees:
        return True
    if len(degrees) != 1:
        return False
    return degree is None or degrees == {degree}


def grlex_terms(f: PolyElement) -> list[tuple[tuple[int, ...], Any]]:
    """Terms sorted graded-lexicographically, highest first."""
    return sorted(f.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)


def exact_quotient(f: PolyElement, g: PolyElement) -> PolyElement:
    """f / g, raising ExactDivisionError when g does not divide f."""
    q, r = f.div(g)
    if r:
        raise ExactDivisionError(f"{g.as_expr()} does not divide {f.as_expr()}")
    return q


def linear_coefficients(f: PolyElement) -> list[Any]:
    """Coefficient list of a linear form, one entry per variable."""
    n = f.ring.ngens
    coeffs = [QQ.zero] * n
    for monom, coeff in f.items():
        if sum(monom) != 1:
            raise PreconditionError("linear_coefficients: form is not linear homogeneous")
        coeffs[monom.index(1)] = coeff
    return coeffs


def poly_to_json(f: PolyElement) -> dict[str, Any]:
    """Exponent-vector / coefficient pairs with exact decimal-string coefficients."""
    return {
        "variables": variable_names(f),
        "terms": [
            {"exponents": list(m), "coefficient": format_rational(c)}
            for m, c in grlex_terms(f)
        ],
    }


def poly_from_json(data: Mapping[str, Any]) -> PolyElement:
    R, _ = poly_ring(",".join(data["variables"]))
    return from_terms(R, {tuple(t["exponents"]): qq(t["coefficient"]) for t in data["terms"]})
