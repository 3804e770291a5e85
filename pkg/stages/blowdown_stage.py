"""
Octodp — Blow-down Stage
Contract E1..E6 and check the round trip back to the six plane points.
"""

import logging
from typing import Any

from blowdown.roundtrip import DEFAULT_CHECK_POINTS, roundtrip_check
from stages.base_stage import BaseStage

logger = logging.getLogger(__name__)


class BlowdownStage(BaseStage):
    """Run the blow-down round trip on one moduli vector."""

    stage_name = "blowdown_stage"

    def run(self, input_data: dict[str, Any]) -> dict[str, Any]:
        """Execute the Blow-down Stage.

        Args:
            input_data:
                moduli (ModuliVector | str | sequence): The six moduli.
                census (LineCensus, optional): Reused when already built.
                check_points (int, optional): Extra points tested against T.
                seed (int, optional): Sample-point stream.

        Returns:
            dict with the round-trip JSON and ``passed``.
        """
        d = self._moduli(input_data)
        logger.info("BlowdownStage: starting — d=%s", d)

        trip = roundtrip_check(
            d,
            census=input_data.get("census"),
            check_points=input_data.get("check_points", DEFAULT_CHECK_POINTS),
            seed=input_data.get("seed"),
        )
        result = trip.to_json()
        result["passed"] = True

        logger.info("BlowdownStage: done — %d points on T", trip.checked_points)
        return result
