"""
Octodp — Smoothness Certificate
Tropical smoothness forces a monomial initial form of the discriminant; this
module checks that certificate p-adically for a given coefficient vector.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any

from discriminants.a_discriminant import ADiscriminant, a_discriminant, full_discriminant
from exact.valuation import INFINITY, ExtValuation, valuation
from model.octanomial import OctanomialCoefficients

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SmoothnessCertificate:
    discriminant_nonzero: bool
    min_term: tuple[int, ...] | None
    min_valuation: ExtValuation
    unique_minimum: bool
    delta_valuation: ExtValuation

    @property
    def holds(self) -> bool:
        return (
            self.discriminant_nonzero
            and self.unique_minimum
            and self.min_valuation == self.delta_valuation
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "discriminant_nonzero": self.discriminant_nonzero,
            "min_term": list(self.min_term) if self.min_term else None,
            "min_valuation": self.min_valuation.to_json(),
            "unique_minimum": self.unique_minimum,
            "delta_valuation": self.delta_valuation.to_json(),
            "holds": self.holds,
        }


def smoothness_certificate(
    c: OctanomialCoefficients, p: int, delta: ADiscriminant | None = None
) -> SmoothnessCertificate:
    """Nonzero discriminant plus a unique minimal-valuation term of Δ_A whose
    valuation equals val(Δ_A(c))."""
    delta = delta if delta is not None else a_discriminant()
    report = full_discriminant(c, delta)
    scored = [(valuation(v, p), monom) for monom, v in delta.term_values(c)]
    best = min(v for v, _ in scored) if scored else INFINITY
    winners = [m for v, m in scored if v == best]
    cert = SmoothnessCertificate(
        discriminant_nonzero=report.is_smooth,
        min_term=tuple(winners[0]) if len(winners) == 1 else None,
        min_valuation=best,
        unique_minimum=len(winners) == 1 and not best.is_infinite,
        delta_valuation=valuation(report.a_disc_value, p),
    )
    logger.debug("Smoothness certificate at p=%d: %s", p, cert)
    return cert
