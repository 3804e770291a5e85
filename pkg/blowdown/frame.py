"""
Octodp — Cuspidal Frames
A cuspidal cubic f = ℓ1³ − ℓ0²·ℓ2 through six plane points gives them the
moduli d_i = ℓ1(p_i) / ℓ0(p_i).
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

from sympy.polys.rings import PolyElement

from errors import PreconditionError
from exact.matrix import RatMatrix, inverse
from exact.polynomial import evaluate, poly_ring
from exact.rationals import format_rational, qq
from lines.plucker import ProjPoint
from model.moduli import ModuliVector
from model.octanomial import PLANE_VARIABLES

LinearForm = tuple[Any, Any, Any]


def _linear(coeffs: Sequence[Any], point: Sequence[Any]) -> Any:
    return sum(qq(c) * qq(x) for c, x in zip(coeffs, point))


@dataclass(frozen=True)
class CuspidalFrame:
    """Three linear forms on P^2; the identity f = ℓ1³ − ℓ0²·ℓ2 defines f."""

    ell0: LinearForm
    ell1: LinearForm
    ell2: LinearForm

    def __post_init__(self) -> None:
        forms = [tuple(qq(c) for c in form) for form in (self.ell0, self.ell1, self.ell2)]
        if any(len(form) != 3 for form in forms):
            raise PreconditionError("Frame forms need three coefficients each")
        if RatMatrix.from_rows(forms).rank() != 3:
            raise PreconditionError("Frame forms must be linearly independent")
        object.__setattr__(self, "ell0", forms[0])
        object.__setattr__(self, "ell1", forms[1])
        object.__setattr__(self, "ell2", forms[2])

    @classmethod
    def standard(cls) -> CuspidalFrame:
        """X, Y, Z: the cubic Y³ − X²Z through every (1 : d : d³)."""
        return cls((1, 0, 0), (0, 1, 0), (0, 0, 1))

    @classmethod
    def transported(cls, transform: RatMatrix) -> CuspidalFrame:
        """The standard frame pushed forward by a projective transform T."""
        rows = inverse(transform).entries
        return cls(rows[0], rows[1], rows[2])

    def cubic(self) -> PolyElement:
        _, (X, Y, Z) = poly_ring(PLANE_VARIABLES)
        l0, l1, l2 = (
            form[0] * X + form[1] * Y + form[2] * Z for form in (self.ell0, self.ell1, self.ell2)
        )
        return l1**3 - l0**2 * l2

    def to_json(self) -> dict[str, list[str]]:
        return {
            name: [format_rational(c) for c in form]
            for name, form in (("ell0", self.ell0), ("ell1", self.ell1), ("ell2", self.ell2))
        }


def moduli_from_frame(frame: CuspidalFrame, points: Sequence[Sequence[Any]]) -> ModuliVector:
    """d_i = ℓ1(p_i) / ℓ0(p_i) for six points on the frame's cuspidal cubic.

    Raises:
        PreconditionError: a point is off the cubic or has ℓ0(p) = 0.
    """
    f = frame.cubic()
    d = []
    for point in points:
        point = tuple(point.coords) if isinstance(point, ProjPoint) else tuple(point)
        if evaluate(f, point) != 0:
            raise PreconditionError(f"{point} is not on the cuspidal cubic")
        denominator = _linear(frame.ell0, point)
        if denominator == 0:
            raise PreconditionError(f"ℓ0 vanishes at {point}")
        d.append(_linear(frame.ell1, point) / denominator)
    return ModuliVector(tuple(d))
