"""
Octodp — Blow-down Round Trip
Composes the plane-cubic parametrisation φ with the contraction π and checks
that π∘φ is a projective transformation T of P^2 sending the base points
p_i = (1 : d_i : d_i³) to π(E_i).  The standard cuspidal frame pushed forward
by T then recovers d from the six points π(E_i).
"""

from __future__ import annotations

import itertools
import logging
import random
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

from config import settings
from errors import InvariantViolation, PreconditionError
from exact.matrix import RatMatrix, det_exact, kernel_vector
from exact.rationals import qq
from lines.census import LineCensus, full_census
from lines.construction import base_points
from lines.plucker import LineLabel, ProjPoint
from model.moduli import ModuliVector
from model.octanomial import plane_cubic_basis
from blowdown.charts import BlowdownMap, blowdown_map, contracted_image, image_point
from blowdown.frame import CuspidalFrame, moduli_from_frame

logger = logging.getLogger(__name__)

FIT_POINTS = 4
DEFAULT_CHECK_POINTS = 5
SAMPLE_RANGE = 9
MAX_DRAWS = 500

# Coordinate pairs (a, b) of the cross-product equations (Tq)_a r_b = (Tq)_b r_a
CROSS_PAIRS: tuple[tuple[int, int], ...] = ((0, 1), (0, 2), (1, 2))

Pair = tuple[ProjPoint, ProjPoint]


def _general_position(points: Sequence[ProjPoint]) -> bool:
    return all(
        det_exact(RatMatrix.from_rows([p.coords for p in triple])) != 0
        for triple in itertools.combinations(points, 3)
    )


def fit_projective(pairs: Sequence[Pair]) -> RatMatrix:
    """The 3×3 transform T with T(q) ∝ r for four pairs in general position.

    Raises:
        PreconditionError: the pairs do not determine T.
    """
    rows = []
    for q, r in pairs:
        for a, b in CROSS_PAIRS:
            row = [qq(0)] * 9
            for c in range(3):
                row[3 * a + c] += q[c] * r[b]
                row[3 * b + c] -= q[c] * r[a]
            rows.append(row)
    t = kernel_vector(rows)
    transform = RatMatrix.from_rows([t[0:3], t[3:6], t[6:9]])
    if det_exact(transform) == 0:
        raise PreconditionError("Fitted transform is singular")
    return transform


def maps_to(transform: RatMatrix, source: ProjPoint, target: ProjPoint) -> bool:
    return ProjPoint(transform.apply(source.coords)).same_as(target)


def sample_pairs(
    d: ModuliVector, bmap: BlowdownMap, count: int, rng: random.Random
) -> list[Pair]:
    """Pairs (q, π(φ(q))) for random integer plane points q.

    Points where φ is undefined or π(φ(q)) lies outside every chart are skipped.
    """
    pairs: list[Pair] = []
    if count <= 0:
        return pairs
    basis = plane_cubic_basis(d)
    for _ in range(MAX_DRAWS):
        coords = tuple(rng.randint(-SAMPLE_RANGE, SAMPLE_RANGE) for _ in range(3))
        if not any(coords):
            continue
        q = ProjPoint(coords)
        try:
            image = bmap(image_point(basis, q.coords).coords)
        except PreconditionError:
            continue
        if image is not None:
            pairs.append((q, image))
            if len(pairs) == count:
                return pairs
    raise InvariantViolation(f"Only {len(pairs)} of {count} sample points landed in a chart")


@dataclass(frozen=True)
class RoundTrip:
    moduli: ModuliVector
    blowdown: BlowdownMap
    transform: RatMatrix
    contracted: tuple[ProjPoint, ...]
    checked_points: int
    recovered: ModuliVector

    @property
    def frame(self) -> CuspidalFrame:
        return CuspidalFrame.transported(self.transform)

    def to_json(self) -> dict[str, Any]:
        return {
            "moduli": self.moduli.to_json(),
            "blowdown": self.blowdown.to_json(),
            "transform": [[str(v) for v in row] for row in self.transform.entries],
            "contracted": {f"E{i}": p.to_json() for i, p in enumerate(self.contracted, start=1)},
            "checked_points": self.checked_points,
            "frame": self.frame.to_json(),
            "recovered_moduli": self.recovered.to_json(),
        }


def roundtrip_check(
    d: ModuliVector,
    census: LineCensus | None = None,
    check_points: int = DEFAULT_CHECK_POINTS,
    seed: int | None = None,
) -> RoundTrip:
    """Verify that π∘φ is projective and that its frame recovers d.

    Raises:
        InvariantViolation: a chart disagreement, a sample point off the
            fitted transform, a base point not sent to π(E_i), or recovered
            moduli differing from d.
    """
    census = census or full_census(d)
    bmap = blowdown_map(census)
    rng = random.Random(settings.seed if seed is None else seed)

    fit: list[Pair] = []
    for _ in range(MAX_DRAWS):
        (pair,) = sample_pairs(d, bmap, 1, rng)
        candidate = fit + [pair]
        if _general_position([q for q, _ in candidate]) and _general_position(
            [r for _, r in candidate]
        ):
            fit = candidate
        if len(fit) == FIT_POINTS:
            break
    else:
        raise InvariantViolation("No four sample points in general position")
    try:
        transform = fit_projective(fit)
    except PreconditionError as exc:
        raise InvariantViolation(f"π∘φ is not projective: {exc}") from exc

    for q, r in sample_pairs(d, bmap, check_points, rng):
        if not maps_to(transform, q, r):
            raise InvariantViolation(f"π∘φ{q} = {r} is off the fitted transform")

    contracted = tuple(
        contracted_image(bmap, census, LineLabel("E", (i,))) for i in range(1, 7)
    )
    for i, (p, e) in enumerate(zip(base_points(d), contracted), start=1):
        if not maps_to(transform, p, e):
            raise InvariantViolation(f"T(p{i}) differs from π(E{i}) = {e}")

    recovered = moduli_from_frame(CuspidalFrame.transported(transform), contracted)
    if recovered != d:
        raise InvariantViolation(f"Frame recovers {recovered}, expected {d}")
    logger.info(
        "Round trip verified — %d fit + %d check points, π(E5)=%s, π(E6)=%s",
        FIT_POINTS, check_points, contracted[4], contracted[5],
    )
    return RoundTrip(d, bmap, transform, contracted, FIT_POINTS + check_points, recovered)
