"""
Octodp — Tropical Stage
Tropical smoothness, the 27 trees and the arrangement type at a prime p.
"""

import logging
from typing import Any

from stages.base_stage import BaseStage
from tropical.arrangements import classify_moduli

logger = logging.getLogger(__name__)


class TropicalStage(BaseStage):
    """Classify the tree arrangement of d at the stage prime."""

    stage_name = "tropical_stage"

    def run(self, input_data: dict[str, Any]) -> dict[str, Any]:
        """Execute the Tropical Stage.

        Args:
            input_data:
                moduli (ModuliVector | str | sequence): The six moduli.
                census (LineCensus, optional): Reused when already built.
                include_trees (bool, optional): Embed the 27 trees.

        Returns:
            The classification report JSON plus the report object under
            ``_report``.
        """
        d = self._moduli(input_data)
        logger.info("TropicalStage: starting — d=%s, p=%d", d, self.prime)

        report = classify_moduli(d, self.prime, census=input_data.get("census"))
        result = report.to_json(include_trees=input_data.get("include_trees", False))
        result["_report"] = report

        logger.info(
            "TropicalStage: done — type=%s, class=%s",
            report.arrangement_type,
            report.smoothness.class_index,
        )
        return result
