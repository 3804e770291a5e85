"""
Octodp — Moduli Search
Draws chain samples from a seed stream, classifies them and keeps those
matching a target.  Draws are independent; a worker pool evaluates them and
findings are merged back in draw order.
"""

from __future__ import annotations

import functools
import logging
import multiprocessing
import random
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

from config import settings
from errors import PreconditionError
from model.moduli import ModuliVector
from model.octanomial import coefficients_from_moduli
from sampler.bergman import DEFAULT_EXPONENTS, SamplerSeed, chain_sample, random_seed
from tropical.arrangements import (
    AAAA,
    AAAB,
    NARUKI_GENERAL,
    NON_STABLE,
    classify_moduli,
    tropical_smoothness,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Target:
    """What a finding must satisfy: tropical smoothness and/or arrangement types."""

    name: str
    require_smooth: bool = False
    types: tuple[str, ...] | None = None

    def accepts(self, smooth: bool, arrangement_type: str) -> bool:
        if self.require_smooth and not smooth:
            return False
        return self.types is None or arrangement_type in self.types


TARGETS: dict[str, Target] = {
    "any": Target("any"),
    "smooth": Target("smooth", require_smooth=True),
    "aaaa": Target("aaaa", require_smooth=True, types=(AAAA,)),
    "aaab": Target("aaab", require_smooth=True, types=(AAAB,)),
    "naruki-general": Target("naruki-general", require_smooth=True, types=NARUKI_GENERAL),
    "non-stable": Target("non-stable", types=(NON_STABLE,)),
}


def resolve_target(target: str | Target) -> Target:
    if isinstance(target, Target):
        return target
    try:
        return TARGETS[target]
    except KeyError:
        raise PreconditionError(
            f"Unknown target {target!r}; choose from {', '.join(TARGETS)}"
        ) from None


@dataclass(frozen=True)
class Finding:
    index: int
    seed: SamplerSeed
    moduli: ModuliVector
    report: dict[str, Any]

    def to_json(self) -> dict[str, Any]:
        return {
            "index": self.index,
            "seed": self.seed.to_json(),
            "moduli": self.moduli.to_json(),
            "report": self.report,
        }


def draw_seed(index: int, stream: int, prime: int, exponents: Sequence[int]) -> SamplerSeed:
    """The index-th seed of a stream; independent of scheduling."""
    rng = random.Random(f"{stream}:{index}")
    return random_seed(rng, prime, exponents)


def evaluate_draw(
    index: int,
    stream: int,
    prime: int,
    target: Target,
    exponents: Sequence[int] = DEFAULT_EXPONENTS,
) -> Finding | None:
    seed = draw_seed(index, stream, prime, exponents)
    try:
        d = chain_sample(seed)
        if target.require_smooth:
            # skip the census when the cheap test already fails
            if not tropical_smoothness(coefficients_from_moduli(d), prime).smooth:
                return None
        report = classify_moduli(d, prime)
    except PreconditionError as exc:
        logger.debug("Draw %d rejected: %s", index, exc)
        return None
    if not target.accepts(report.smoothness.smooth, report.arrangement_type):
        return None
    return Finding(index, seed, d, report.to_json())


def search(
    target: str | Target,
    budget: int,
    stream: int | None = None,
    prime: int | None = None,
    threads: int | None = None,
    exponents: Sequence[int] = DEFAULT_EXPONENTS,
) -> list[Finding]:
    """All draws 0..budget-1 of the seed stream that satisfy the target.

    Results depend only on (target, budget, stream, prime, exponents).
    """
    target = resolve_target(target)
    stream = settings.seed if stream is None else stream
    prime = settings.validate_prime(prime)
    workers = min(settings.validate_threads(threads), max(budget, 1))
    logger.info(
        "Search: starting — target=%s, budget=%d, stream=%d, p=%d, workers=%d",
        target.name, budget, stream, prime, workers,
    )
    job = functools.partial(
        evaluate_draw, stream=stream, prime=prime, target=target, exponents=tuple(exponents)
    )
    if workers > 1:
        with multiprocessing.Pool(processes=workers) as pool:
            results = pool.map(job, range(budget))
    else:
        results = [job(i) for i in range(budget)]
    findings = [f for f in results if f is not None]
    logger.info("Search: done — %d findings in %d draws", len(findings), budget)
    return findings
