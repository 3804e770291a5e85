"""
Octodp — Line Construction
The 27 lines as images of plane curves under the cubic map P^2 -> P^3:
exceptional fibres E_i, connecting lines F_ij and conics G_i.

Each construction restricts the four basis cubics to a parametrised curve,
strips the factor vanishing at the base points, and reads the image line off
the residual linear forms.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence

from sympy.polys.rings import PolyElement

from errors import ExactDivisionError, InvariantViolation, PreconditionError
from exact.matrix import kernel_vector
from exact.polynomial import evaluate, exact_quotient, from_terms, is_homogeneous, poly_ring, substitute
from lines.plucker import LineLabel, PluckerLine, ProjPoint, all_labels
from model.moduli import ModuliVector
from model.octanomial import PLANE_VARIABLES, PlaneCubicBasis, plane_cubic_basis

logger = logging.getLogger(__name__)

BINARY_VARIABLES = "s,t"

_CONIC_MONOMIALS: tuple[tuple[int, int, int], ...] = (
    (2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2),
)


def base_points(d: ModuliVector) -> list[ProjPoint]:
    """The six points (1 : d_i : d_i^3) on the cuspidal cubic X^2 Z = Y^3."""
    return [ProjPoint((1, v, v**3)) for v in d]


def _residual_line(
    label: LineLabel,
    basis: PlaneCubicBasis,
    curve: dict[str, PolyElement],
    factor: PolyElement,
) -> PluckerLine:
    """Divide each restricted cubic by factor and span the residual linear forms."""
    S, _ = poly_ring(BINARY_VARIABLES)
    residuals = [exact_quotient(substitute(cubic, curve), factor) for cubic in basis]
    if not all(is_homogeneous(r, 1) for r in residuals):
        raise ExactDivisionError(f"{label}: residual forms are not linear")
    P = [r.get((1, 0), S.domain.zero) for r in residuals]
    Q = [r.get((0, 1), S.domain.zero) for r in residuals]
    return PluckerLine.through(label, P, Q)


def exceptional_line(d: ModuliVector, i: int, basis: PlaneCubicBasis | None = None) -> PluckerLine:
    """Image of the tangent directions at p_i: columns ∂/∂Y and ∂/∂Z of the Jacobian.

    The basis cubics vanish at p_i and Euler's relation kills the p_i
    direction, so the two columns span the line.
    """
    basis = basis or plane_cubic_basis(d)
    _, (_, Y, Z) = poly_ring(PLANE_VARIABLES)
    point = base_points(d)[i - 1].coords
    P = [evaluate(cubic.diff(Y), point) for cubic in basis]
    Q = [evaluate(cubic.diff(Z), point) for cubic in basis]
    label = LineLabel("E", (i,))
    try:
        return PluckerLine.through(label, P, Q)
    except PreconditionError as exc:
        raise InvariantViolation(f"Jacobian at p{i} has rank < 2") from exc


def connecting_line(
    d: ModuliVector, i: int, j: int, basis: PlaneCubicBasis | None = None
) -> PluckerLine:
    """Image of the plane line through p_i and p_j, parametrised as s·p_i + t·p_j."""
    if i == j:
        raise PreconditionError("connecting_line needs two distinct points")
    basis = basis or plane_cubic_basis(d)
    S, (s, t) = poly_ring(BINARY_VARIABLES)
    di, dj = d[i - 1], d[j - 1]
    curve = {
        "X": s + t,
        "Y": di * s + dj * t,
        "Z": di**3 * s + dj**3 * t,
    }
    return _residual_line(LineLabel("F", (i, j)), basis, curve, s * t)


def _conic_through(points: Sequence[ProjPoint]) -> PolyElement:
    R, _ = poly_ring(PLANE_VARIABLES)
    rows = [
        [pt[0] ** a * pt[1] ** b * pt[2] ** c for a, b, c in _CONIC_MONOMIALS] for pt in points
    ]
    coeffs = kernel_vector(rows)
    return from_terms(R, dict(zip(_CONIC_MONOMIALS, coeffs)))


def _conic_parametrization(
    conic: PolyElement, pivot: ProjPoint
) -> tuple[dict[str, PolyElement], PolyElement]:
    """Second intersection of the conic with the line from pivot towards (0 : s : t).

    Returns the curve as {X, Y, Z} quadrics in s, t and the tangent form at
    the pivot, whose root is the parameter of the pivot itself.
    """
    S, (s, t) = poly_ring(BINARY_VARIABLES)
    _, (X, Y, Z) = poly_ring(PLANE_VARIABLES)
    grad = [evaluate(conic.diff(v), pivot.coords) for v in (X, Y, Z)]
    tangent = grad[1] * s + grad[2] * t
    if not tangent:
        raise PreconditionError("Pivot is a singular point of the conic")
    along = substitute(conic, {"X": S.zero, "Y": s, "Z": t})
    curve = {
        "X": -along * pivot[0],
        "Y": -along * pivot[1] + tangent * s,
        "Z": -along * pivot[2] + tangent * t,
    }
    return curve, tangent


def conic_line(d: ModuliVector, i: int, basis: PlaneCubicBasis | None = None) -> PluckerLine:
    """Image of the conic through the five base points other than p_i.

    Pivots are tried in index order; the first that yields exact residuals
    wins.
    """
    basis = basis or plane_cubic_basis(d)
    _, (s, t) = poly_ring(BINARY_VARIABLES)
    points = base_points(d)
    others = [k for k in range(1, 7) if k != i]
    conic = _conic_through([points[k - 1] for k in others])
    label = LineLabel("G", (i,))
    for k in others:
        try:
            curve, tangent = _conic_parametrization(conic, points[k - 1])
            factor = tangent
            dk = d[k - 1]
            for j in others:
                if j != k:
                    dj = d[j - 1]
                    factor *= t - (dj * dj + dj * dk + dk * dk) * s
            return _residual_line(label, basis, curve, factor)
        except (ExactDivisionError, PreconditionError) as exc:
            logger.debug("%s: pivot p%d degenerate (%s), trying next", label, k, exc)
    raise InvariantViolation(f"{label}: every pivot of the conic degenerates")


def construct_lines(d: ModuliVector) -> dict[LineLabel, PluckerLine]:
    """All 27 labelled lines, in E, F, G order."""
    basis = plane_cubic_basis(d)
    lines: dict[LineLabel, PluckerLine] = {}
    for label in all_labels():
        if label.kind == "E":
            line = exceptional_line(d, label.indices[0], basis)
        elif label.kind == "F":
            line = connecting_line(d, *label.indices, basis=basis)
        else:
            line = conic_line(d, label.indices[0], basis)
        lines[label] = line
    logger.debug("Constructed %d lines for d=%s", len(lines), d)
    return lines
