"""
Octodp — Projective Points & Plücker Lines
Exact points of P^2 / P^3, the labels E_i, F_ij, G_i, and lines in P^3 given
by two spanning points together with their canonical Plücker vector.
"""

from __future__ import annotations

import itertools
import re
from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import total_ordering
from typing import Any

from errors import PreconditionError
from exact.matrix import RatMatrix, kernel_vector
from exact.rationals import (
    first_nonzero_normalised,
    format_rational,
    primitive_integer_vector,
    proportional,
    qq,
)

# Index pairs of the six Plücker coordinates, in (p01, p02, p03, p12, p13, p23) order
PLUCKER_INDICES: tuple[tuple[int, int], ...] = tuple(itertools.combinations(range(4), 2))
PLUCKER_NAMES: tuple[str, ...] = tuple(f"p{i}{j}" for i, j in PLUCKER_INDICES)


@dataclass(frozen=True)
class ProjPoint:
    """A point of projective space with exact homogeneous coordinates."""

    coords: tuple[Any, ...]

    def __post_init__(self) -> None:
        values = tuple(qq(v) for v in self.coords)
        if not any(v != 0 for v in values):
            raise PreconditionError("A projective point needs a nonzero coordinate")
        object.__setattr__(self, "coords", values)

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i: int) -> Any:
        return self.coords[i]

    def canonical(self) -> tuple[Any, ...]:
        """Coordinates divided by the first nonzero one."""
        return first_nonzero_normalised(self.coords)

    def integral(self) -> tuple[int, ...]:
        return primitive_integer_vector(self.coords)

    def same_as(self, other: ProjPoint) -> bool:
        return proportional(self.coords, other.coords)

    def to_json(self) -> list[str]:
        return [format_rational(v) for v in self.canonical()]

    def __str__(self) -> str:
        return "(" + " : ".join(format_rational(v) for v in self.canonical()) + ")"


_LABEL_RE = re.compile(r"^(E|G)([1-6])$|^F([1-6])([1-6])$")


@total_ordering
@dataclass(frozen=True)
class LineLabel:
    """E_i, F_ij (i < j) or G_i with indices in 1..6."""

    kind: str
    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.kind not in ("E", "F", "G"):
            raise PreconditionError(f"Unknown line kind {self.kind!r}")
        size = 2 if self.kind == "F" else 1
        if len(self.indices) != size or any(not 1 <= i <= 6 for i in self.indices):
            raise PreconditionError(f"Bad indices {self.indices} for {self.kind}")
        if self.kind == "F":
            i, j = self.indices
            if i == j:
                raise PreconditionError("F_ij needs two distinct indices")
            object.__setattr__(self, "indices", (min(i, j), max(i, j)))

    @classmethod
    def parse(cls, text: str) -> LineLabel:
        match = _LABEL_RE.match(text.strip())
        if not match:
            raise PreconditionError(f"Unparseable line label: {text!r}")
        if match.group(1):
            return cls(match.group(1), (int(match.group(2)),))
        return cls("F", (int(match.group(3)), int(match.group(4))))

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return ("EFG".index(self.kind), self.indices)

    def __lt__(self, other: LineLabel) -> bool:
        return self.sort_key < other.sort_key

    def __str__(self) -> str:
        return self.kind + "".join(str(i) for i in self.indices)


def all_labels() -> tuple[LineLabel, ...]:
    """The 27 labels in E, F, G order."""
    es = [LineLabel("E", (i,)) for i in range(1, 7)]
    fs = [LineLabel("F", pair) for pair in itertools.combinations(range(1, 7), 2)]
    gs = [LineLabel("G", (i,)) for i in range(1, 7)]
    return tuple(es + fs + gs)


def labels_meet(a: LineLabel, b: LineLabel) -> bool:
    """Incidence of two distinct lines read off their labels alone."""
    if a == b:
        return False
    if a.kind > b.kind:
        a, b = b, a
    sa, sb = set(a.indices), set(b.indices)
    if a.kind == b.kind:
        # E-E and G-G are skew; F_ij meets F_kl iff the pairs are disjoint
        return a.kind == "F" and not (sa & sb)
    if (a.kind, b.kind) == ("E", "G"):
        return sa != sb
    # E_i with F_jk and F_jk with G_i: incident iff i is one of j, k
    return bool(sa & sb)


def plucker_vector(P: Sequence[Any], Q: Sequence[Any]) -> tuple[Any, ...]:
    """p_ij = P_i Q_j - P_j Q_i."""
    return tuple(qq(P[i]) * qq(Q[j]) - qq(P[j]) * qq(Q[i]) for i, j in PLUCKER_INDICES)


def plucker_relation(p: Sequence[Any]) -> Any:
    p01, p02, p03, p12, p13, p23 = p
    return p01 * p23 - p02 * p13 + p03 * p12


def plucker_pairing(p: Sequence[Any], q: Sequence[Any]) -> Any:
    """Vanishes iff the two lines meet (or coincide)."""
    p01, p02, p03, p12, p13, p23 = p
    q01, q02, q03, q12, q13, q23 = q
    return p01 * q23 - p02 * q13 + p03 * q12 + p12 * q03 - p13 * q02 + p23 * q01


@dataclass(frozen=True)
class PluckerLine:
    """A labelled line of P^3.

    ``p`` is the canonical integer Plücker vector; ``span`` keeps the two
    exact points the line was built from.
    """

    label: LineLabel
    p: tuple[int, ...]
    span: tuple[ProjPoint, ProjPoint] = field(compare=False)

    @classmethod
    def through(cls, label: LineLabel, P: Sequence[Any], Q: Sequence[Any]) -> PluckerLine:
        raw = plucker_vector(P, Q)
        if not any(v != 0 for v in raw):
            raise PreconditionError(f"Spanning points of {label} coincide")
        return cls(label, primitive_integer_vector(raw), (ProjPoint(tuple(P)), ProjPoint(tuple(Q))))

    @property
    def zero_pattern(self) -> tuple[bool, ...]:
        return tuple(v == 0 for v in self.p)

    def point(self, s: Any, t: Any) -> ProjPoint:
        """The point s·P + t·Q of the line."""
        P, Q = self.span
        return ProjPoint(tuple(qq(s) * a + qq(t) * b for a, b in zip(P, Q)))

    def sample_points(self, count: int = 4) -> list[ProjPoint]:
        params = [(1, 0), (0, 1), (1, 1), (1, -1), (1, 2), (2, 1), (1, -2)]
        return [self.point(s, t) for s, t in params[:count]]

    def meets(self, other: PluckerLine) -> bool:
        return self.label != other.label and plucker_pairing(self.p, other.p) == 0

    def to_json(self) -> dict[str, Any]:
        return {
            "label": str(self.label),
            "plucker": dict(zip(PLUCKER_NAMES, self.p)),
        }


def intersection_point(l1: PluckerLine, l2: PluckerLine) -> ProjPoint:
    """The common point of two meeting lines, from α P1 + β Q1 = γ P2 + δ Q2.

    Raises:
        PreconditionError: the lines are skew.
    """
    if not l1.meets(l2):
        raise PreconditionError(f"{l1.label} and {l2.label} do not meet")
    (P1, Q1), (P2, Q2) = l1.span, l2.span
    rows = [[P1[r], Q1[r], -P2[r], -Q2[r]] for r in range(4)]
    alpha, beta, _, _ = kernel_vector(rows)
    return ProjPoint(tuple(alpha * a + beta * b for a, b in zip(P1, Q1)))


def span_rank(points: Sequence[Sequence[Any]]) -> int:
    return RatMatrix.from_rows([[qq(v) for v in pt] for pt in points]).rank()

