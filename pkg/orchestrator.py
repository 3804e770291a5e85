"""
Octodp — Pipeline Orchestrator
Runs the moduli pipeline stage by stage and the acceptance battery.
"""

import logging
import random
import time
from collections.abc import Callable, Sequence
from typing import Any

from acceptance import CRITERIA, SuiteScale
from config import settings
from errors import InvariantViolation, PreconditionError
from model.moduli import ModuliVector
from stages.blowdown_stage import BlowdownStage
from stages.lines_stage import LinesStage
from stages.octanomial_stage import OctanomialStage
from stages.tropical_stage import TropicalStage

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_PRECONDITION = 1
EXIT_INVARIANT = 2


def error_kind(exc: BaseException) -> str:
    if isinstance(exc, PreconditionError):
        return "precondition"
    if isinstance(exc, InvariantViolation):
        return "invariant"
    return "unexpected"


def exit_status(results: dict[str, Any]) -> int:
    """0 on success, 1 when every failure is a precondition, 2 otherwise."""
    kinds = results.get("error_kinds", [])
    if not kinds:
        return EXIT_INVARIANT if results.get("status") == "failed" else EXIT_OK
    if all(k == "precondition" for k in kinds):
        return EXIT_PRECONDITION
    return EXIT_INVARIANT


class OctodpOrchestrator:
    """Orchestrate the Octodp moduli pipeline.

    Pipeline:
        1. Octanomial Stage → coefficients, parametrisation, discriminant
        2. Lines Stage → census of the 27 lines
        3. Tropical Stage → smoothness, 27 trees, arrangement type
        4. Blow-down Stage → contraction and round trip to the six points
    """

    def __init__(self, prime: int | None = None) -> None:
        self.prime = settings.validate_prime(prime)
        self.octanomial_stage = OctanomialStage(self.prime)
        self.lines_stage = LinesStage(self.prime)
        self.tropical_stage = TropicalStage(self.prime)
        self.blowdown_stage = BlowdownStage(self.prime)

    # ------------------------------------------------------------------
    # Public API
    # ------------------------------------------------------------------
    def run_pipeline(self, moduli: ModuliVector, include_trees: bool = False) -> dict[str, Any]:
        """Execute all four stages on one moduli vector.

        Args:
            moduli: Admissible moduli d1..d6.
            include_trees: Embed the 27 trees in the tropical step.

        Returns:
            Pipeline result with each stage's output.  In-memory artefacts
            (census, classification report) are kept under ``_``-prefixed keys.
        """
        pipeline_start = time.time()
        results: dict[str, Any] = {"steps": {}, "errors": [], "error_kinds": []}
        total = 4

        self._step(results, 1, total, "octanomial", self.octanomial_stage, {"moduli": moduli})

        lines_result = self._step(results, 2, total, "lines", self.lines_stage, {"moduli": moduli})
        census = lines_result.get("_census")

        tropical_result = self._step(
            results, 3, total, "tropical", self.tropical_stage,
            {"moduli": moduli, "census": census, "include_trees": include_trees},
        )

        self._step(
            results, 4, total, "blowdown", self.blowdown_stage,
            {"moduli": moduli, "census": census},
        )

        # ── Summary ────────────────────────────────────────────────
        total_duration = round(time.time() - pipeline_start, 2)
        results["status"] = "completed" if not results["errors"] else "completed_with_errors"
        results["total_duration_s"] = total_duration
        results["summary"] = {
            "moduli": moduli.to_json(),
            "prime": self.prime,
            "class": tropical_result.get("tropical_smoothness", {}).get("class"),
            "type": tropical_result.get("type", "N/A"),
            "statistic": tropical_result.get("statistic", {}).get("multiset", "N/A"),
            "blowdown": results["steps"].get("blowdown", {}).get("passed", False),
        }
        results["_census"] = census
        results["_report"] = tropical_result.get("_report")

        logger.info("=" * 60)
        logger.info("PIPELINE COMPLETE — %s in %.2fs", results["status"], total_duration)
        logger.info("=" * 60)
        return results

    def verify_suite(
        self,
        scale: SuiteScale | None = None,
        only: Sequence[str] | None = None,
        threads: int | None = None,
        seed: int | None = None,
        overrides: dict[str, Callable[..., dict[str, Any]]] | None = None,
    ) -> dict[str, Any]:
        """Run the acceptance battery with fixed seeds.

        Args:
            scale: Sample counts; full counts by default.
            only: Restrict to these criterion names.
            threads: Worker cap for the randomised batteries.
            seed: Base of the per-criterion random streams.
            overrides: Replacement callables by criterion name.

        Returns:
            Machine-readable summary with per-criterion timing.
        """
        scale = scale or SuiteScale()
        workers = settings.validate_threads(threads)
        seed = settings.seed if seed is None else seed
        overrides = overrides or {}
        selected = [(n, f) for n, f in CRITERIA if only is None or n in only]

        suite_start = time.time()
        results: dict[str, Any] = {"criteria": {}, "errors": [], "error_kinds": []}
        for index, (name, check) in enumerate(selected, start=1):
            logger.info("=" * 60)
            logger.info("STEP %d/%d — %s", index, len(selected), name)
            logger.info("=" * 60)
            check = overrides.get(name, check)
            rng = random.Random(f"{seed}:{name}")
            step_start = time.time()
            try:
                outcome = check(scale, rng, workers)
            except Exception as exc:
                logger.error("Criterion %s failed: %s", name, exc)
                results["errors"].append(f"{name}: {exc}")
                results["error_kinds"].append(error_kind(exc))
                outcome = {"passed": False, "error": str(exc)}
            outcome["duration_s"] = round(time.time() - step_start, 2)
            results["criteria"][name] = outcome
            logger.info("%s: %s", name, "pass" if outcome["passed"] else "FAIL")

        passed = all(c["passed"] for c in results["criteria"].values())
        results["status"] = "passed" if passed else "failed"
        results["passed"] = sum(1 for c in results["criteria"].values() if c["passed"])
        results["total"] = len(selected)
        results["total_duration_s"] = round(time.time() - suite_start, 2)

        logger.info("=" * 60)
        logger.info(
            "VERIFY COMPLETE — %d/%d criteria in %.2fs",
            results["passed"], results["total"], results["total_duration_s"],
        )
        logger.info("=" * 60)
        return results

    # ------------------------------------------------------------------
    # Helpers
    # ------------------------------------------------------------------
    @staticmethod
    def _step(
        results: dict[str, Any],
        index: int,
        total: int,
        name: str,
        stage: Any,
        input_data: dict[str, Any],
    ) -> dict[str, Any]:
        logger.info("=" * 60)
        logger.info("STEP %d/%d — %s", index, total, stage.__class__.__name__)
        logger.info("=" * 60)
        step_start = time.time()
        try:
            output = stage.run(input_data)
        except Exception as exc:
            logger.error("%s failed: %s", stage.__class__.__name__, exc)
            results["errors"].append(f"{stage.__class__.__name__}: {exc}")
            results["error_kinds"].append(error_kind(exc))
            results["steps"][name] = {"error": str(exc)}
            return {}
        output["duration_s"] = round(time.time() - step_start, 2)
        results["steps"][name] = output
        return output
