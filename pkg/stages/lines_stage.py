"""
Octodp — Lines Stage
The labelled census of the 27 lines with its structural checks.
"""

import logging
from typing import Any

from lines.census import full_census, triplet_formula_check
from stages.base_stage import BaseStage

logger = logging.getLogger(__name__)


class LinesStage(BaseStage):
    """Construct the 27 lines and check the incidence structure."""

    stage_name = "lines_stage"

    def run(self, input_data: dict[str, Any]) -> dict[str, Any]:
        """Execute the Lines Stage.

        Args:
            input_data:
                moduli (ModuliVector | str | sequence): The six moduli.

        Returns:
            dict with the census JSON, check results and the in-memory census
            under ``_census``.
        """
        d = self._moduli(input_data)
        logger.info("LinesStage: starting — d=%s", d)

        # raises InvariantViolation on any structural deviation
        census = full_census(d)
        result = {
            "census": census.to_json(),
            "structure_checked": True,
            "triplet_formulas": triplet_formula_check(d, census),
            "_census": census,
        }
        logger.info(
            "LinesStage: done — %d lines, %d incidences", len(census), len(census.incidence)
        )
        return result
