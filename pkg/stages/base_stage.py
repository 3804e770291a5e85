"""
Octodp — Base Stage
Abstract base class shared by every pipeline stage.
"""

import logging
from abc import ABC, abstractmethod
from typing import Any

from config import settings
from errors import PreconditionError
from model.moduli import ModuliVector

logger = logging.getLogger(__name__)


class BaseStage(ABC):
    """Abstract base for every Octodp pipeline stage.

    Subclasses implement ``run()``.  The base class resolves the working
    prime and pulls the moduli vector out of the stage input.
    """

    stage_name: str = "base_stage"

    def __init__(self, prime: int | None = None) -> None:
        self.prime = settings.validate_prime(prime)
        logger.debug("%s: initialised at p=%d", self.stage_name, self.prime)

    # ------------------------------------------------------------------
    # Input helpers
    # ------------------------------------------------------------------
    def _moduli(self, input_data: dict[str, Any]) -> ModuliVector:
        """The ``moduli`` entry as a ModuliVector (parsed from text if needed)."""
        value = input_data.get("moduli")
        if value is None:
            raise PreconditionError(f"{self.stage_name}: moduli are required")
        if isinstance(value, ModuliVector):
            return value
        if isinstance(value, str):
            return ModuliVector.parse(value)
        return ModuliVector(tuple(value))

    # ------------------------------------------------------------------
    # Abstract interface
    # ------------------------------------------------------------------
    @abstractmethod
    def run(self, input_data: dict[str, Any]) -> dict[str, Any]:
        """Execute the stage.

        Args:
            input_data: Stage-specific input dictionary.

        Returns:
            Stage-specific output dictionary.
        """
        ...
