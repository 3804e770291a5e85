"""
Octodp — Plane Spans
The plane spanned by two meeting lines of P^3, as a canonical linear form.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

from sympy import QQ

from errors import PreconditionError
from exact.matrix import kernel_vector
from exact.rationals import primitive_integer_vector, qq
from lines.plucker import PluckerLine


@dataclass(frozen=True)
class PlaneForm:
    """A linear form on P^3 with primitive integer coefficients."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != 4:
            raise PreconditionError("A plane form has four coefficients")
        object.__setattr__(self, "coeffs", primitive_integer_vector(self.coeffs))

    def __call__(self, point: Sequence[Any]) -> Any:
        return sum((c * qq(x) for c, x in zip(self.coeffs, point)), QQ.zero)

    def contains(self, line: PluckerLine) -> bool:
        return all(self(pt) == 0 for pt in line.span)

    def to_json(self) -> list[int]:
        return list(self.coeffs)


def plane_span(l1: PluckerLine, l2: PluckerLine) -> PlaneForm:
    """The plane through two intersecting lines.

    Raises:
        PreconditionError: the lines are skew or coincide.
    """
    points = [pt.coords for pt in (*l1.span, *l2.span)]
    try:
        return PlaneForm(kernel_vector(points))
    except PreconditionError as exc:
        raise PreconditionError(f"{l1.label} and {l2.label} span no unique plane") from exc
