"""
Octodp — Toric Ideal
The eight quadratic binomials generating the toric ideal of the support, with
homogeneity checks and the initial monomial of each for a weight vector.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from typing import Any

from exact.rationals import qq
from polytope.constants import EXPONENTS, LABELS, TORIC_BINOMIALS

logger = logging.getLogger(__name__)


def monomial_exponent(monomial: str) -> tuple[int, ...]:
    """Sum of the support exponent vectors of the letters in monomial."""
    total = [0, 0, 0, 0]
    for k in monomial:
        for i, v in enumerate(EXPONENTS[k]):
            total[i] += v
    return tuple(total)


def monomial_weight(monomial: str, w: Mapping[str, Any]) -> Any:
    return sum((w[k] for k in monomial), qq(0))


@dataclass(frozen=True)
class BinomialCheck:
    left: str
    right: str
    homogeneous: bool
    initial: str | None

    @property
    def tied(self) -> bool:
        return self.initial is None

    def to_json(self) -> dict[str, Any]:
        return {
            "binomial": f"{self.left}-{self.right}",
            "homogeneous": self.homogeneous,
            "initial": self.initial,
        }


@dataclass(frozen=True)
class ToricReport:
    binomials: tuple[BinomialCheck, ...]

    @property
    def homogeneous(self) -> bool:
        return all(b.homogeneous for b in self.binomials)

    @property
    def generic(self) -> bool:
        return not any(b.tied for b in self.binomials)

    @property
    def initial_monomials(self) -> frozenset[str]:
        return frozenset(b.initial for b in self.binomials if b.initial is not None)

    @property
    def ties(self) -> tuple[str, ...]:
        return tuple(f"{b.left}-{b.right}" for b in self.binomials if b.tied)

    def to_json(self) -> dict[str, Any]:
        return {
            "homogeneous": self.homogeneous,
            "generic": self.generic,
            "initial_monomials": sorted(self.initial_monomials),
            "ties": list(self.ties),
            "binomials": [b.to_json() for b in self.binomials],
        }


def toric_ideal_check(
    w: Sequence[Any] | Mapping[str, Any],
    binomials: Sequence[tuple[str, str]] = TORIC_BINOMIALS,
) -> ToricReport:
    """Homogeneity and highest-weight monomial of each binomial generator.

    Ties leave ``initial`` unset and make the report non-generic.
    """
    if isinstance(w, Mapping):
        weights = {k: qq(w[k]) for k in LABELS}
    else:
        weights = {k: qq(v) for k, v in zip(LABELS, w, strict=True)}
    checks = []
    for left, right in binomials:
        wl, wr = monomial_weight(left, weights), monomial_weight(right, weights)
        initial = None if wl == wr else (left if wl > wr else right)
        checks.append(
            BinomialCheck(
                left=left,
                right=right,
                homogeneous=monomial_exponent(left) == monomial_exponent(right),
                initial=initial,
            )
        )
    report = ToricReport(tuple(checks))
    if not report.generic:
        logger.debug("Toric check: weight ties on %s", ", ".join(report.ties))
    return report
