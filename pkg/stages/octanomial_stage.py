"""
Octodp — Octanomial Stage
Coefficients, plane-cubic basis, parametrisation identity and the factored
discriminant of one moduli vector.
"""

import logging
from typing import Any

from discriminants.a_discriminant import delta_invariant, full_discriminant
from exact.polynomial import poly_to_json
from model.octanomial import coefficients_from_moduli, plane_cubic_basis, verify_parametrization
from model.symmetry import SYMMETRY_GENERATORS, check_equivariance
from stages.base_stage import BaseStage

logger = logging.getLogger(__name__)


class OctanomialStage(BaseStage):
    """Build the octanomial of d and check its defining identities."""

    stage_name = "octanomial_stage"

    def run(self, input_data: dict[str, Any]) -> dict[str, Any]:
        """Execute the Octanomial Stage.

        Args:
            input_data:
                moduli (ModuliVector | str | sequence): The six moduli.

        Returns:
            dict with coefficients, basis, parametrization, equivariance,
            Δ_A invariance and discriminant entries.
        """
        d = self._moduli(input_data)
        logger.info("OctanomialStage: starting — d=%s", d)

        coefficients = coefficients_from_moduli(d)
        basis = plane_cubic_basis(d)
        parametrization = verify_parametrization(d, coefficients)
        discriminant = full_discriminant(coefficients)
        equivariance = {name: check_equivariance(d, name) for name in SYMMETRY_GENERATORS}
        invariant = delta_invariant(coefficients)

        logger.info(
            "OctanomialStage: done — parametrization=%s, smooth=%s",
            parametrization,
            discriminant.is_smooth,
        )
        return {
            "moduli": d.to_json(),
            "coefficients": coefficients.to_json(),
            "coefficient_sum_zero": coefficients.total() == 0,
            "basis": {name: poly_to_json(f) for name, f in basis.as_assignment().items()},
            "parametrization": parametrization,
            "equivariance": equivariance,
            "delta_invariant": invariant,
            "discriminant": discriminant.to_json(),
        }
