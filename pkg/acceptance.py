"""
Octodp — Acceptance Battery
Twelve self-checks covering every package, each returning a JSON-ready
detail dict with a ``passed`` flag.  Sample counts come from a SuiteScale so
the tests can run the same code on fewer samples.
"""

from __future__ import annotations

import logging
import multiprocessing
import random
from collections import Counter
from collections.abc import Callable, Iterable
from dataclasses import dataclass
from typing import Any

from blowdown.roundtrip import roundtrip_check
from config import settings
from discriminants.a_discriminant import ADiscriminant, full_discriminant
from discriminants.principal import gkz_from_principal_determinant
from discriminants.resultant import RESULTANT_TO_DISCRIMINANT, resultant_oracle
from discriminants.smoothness import smoothness_certificate
from errors import OctodpError, PreconditionError
from exact.newton import has_distinct_roots, newton_criterion, newton_root_valuations
from exact.valuation import ExtValuation
from lines.census import full_census, triplet_formula_check
from model.moduli import ModuliVector, random_moduli
from model.octanomial import (
    OctanomialCoefficients,
    coefficients_from_moduli,
    octanomial_cubic,
    verify_parametrization,
)
from polytope.secondary import enumerate_regular_triangulations
from polytope.symmetry import table_rows, triangulation_census
from polytope.toric import toric_ideal_check
from polytope.triangulations import gkz_vector, sr_ideal, unimodular_count
from sampler.bergman import DEFAULT_EXPONENTS, chain_sample
from sampler.search import draw_seed
from tropical.arrangements import NON_STABLE, classify_moduli, tropical_smoothness
from tropical.examples import (
    WorkedExample,
    naruki_general_examples,
    non_stable_examples,
    stable_examples,
)

logger = logging.getLogger(__name__)

TORIC_WEIGHT = (4, 4, 3, 1, 1, 1, 1, 7)
TORIC_INITIAL = frozenset({"ab", "ac", "ad", "ah", "bg", "cf", "eh", "fh"})
NEWTON_EXAMPLE = ((3, 1, 0, 0), (2, 1, 0))
ORBIT_SIZES = (1, 4, 4, 4, 4, 4, 8, 8, 8, 8)


@dataclass(frozen=True)
class SuiteScale:
    """Sample counts for the randomised criteria."""

    parametrization: int = 100
    oracle: int = 20
    lines: int = 100
    formulas: int = 100
    sampler_draws: int = 200
    blowdown: int = 50
    newton: int = 1000

    @classmethod
    def reduced(cls) -> SuiteScale:
        return cls(
            parametrization=5,
            oracle=2,
            lines=3,
            formulas=3,
            sampler_draws=10,
            blowdown=2,
            newton=200,
        )


def _map(func: Callable[[Any], Any], items: Iterable[Any], workers: int) -> list[Any]:
    items = list(items)
    if workers > 1 and len(items) > 1:
        with multiprocessing.Pool(processes=min(workers, len(items))) as pool:
            return pool.map(func, items)
    return [func(x) for x in items]


def _sample_moduli(rng: random.Random, count: int) -> list[ModuliVector]:
    return [random_moduli(rng) for _ in range(count)]


def _failure(d: ModuliVector, exc: Exception) -> str:
    return f"d={d}: {type(exc).__name__}: {exc}"


# ---------------------------------------------------------------------------
# Per-sample checks (top level so worker pools can pickle them)
# ---------------------------------------------------------------------------

def _parametrization_ok(d: ModuliVector) -> str | None:
    c = coefficients_from_moduli(d)
    if c.total() != 0:
        return f"d={d}: coefficients sum to {c.total()}"
    return None if verify_parametrization(d, c) else f"d={d}: nonzero residual"


def _census_ok(d: ModuliVector) -> str | None:
    try:
        full_census(d)
    except OctodpError as exc:
        return _failure(d, exc)
    return None


def _formulas_ok(d: ModuliVector) -> str | None:
    try:
        return None if triplet_formula_check(d) else f"d={d}: product formulas disagree"
    except OctodpError as exc:
        return _failure(d, exc)


def _roundtrip_ok(d: ModuliVector) -> str | None:
    try:
        roundtrip_check(d)
    except OctodpError as exc:
        return _failure(d, exc)
    return None


def _battery(
    check: Callable[[ModuliVector], str | None], samples: list[ModuliVector], workers: int
) -> dict[str, Any]:
    failures = [f for f in _map(check, samples, workers) if f is not None]
    return {"passed": not failures, "samples": len(samples), "failures": failures[:5]}


# ---------------------------------------------------------------------------
# Criteria
# ---------------------------------------------------------------------------

def check_parametrization(scale: SuiteScale, rng: random.Random, workers: int) -> dict[str, Any]:
    return _battery(_parametrization_ok, _sample_moduli(rng, scale.parametrization), workers)


def check_discriminant_oracle(
    scale: SuiteScale, rng: random.Random, workers: int, delta: ADiscriminant | None = None
) -> dict[str, Any]:
    """Macaulay resultant of the partials against the factored discriminant."""
    failures = []
    for _ in range(scale.oracle):
        c = OctanomialCoefficients(*(rng.randint(-9, 9) for _ in range(8)))
        oracle = resultant_oracle(octanomial_cubic(c).partials())
        expected = full_discriminant(c, delta).full_discriminant
        if RESULTANT_TO_DISCRIMINANT * oracle != expected:
            failures.append(f"c={c.as_tuple()}: oracle and formula disagree")
    return {"passed": not failures, "samples": scale.oracle, "failures": failures[:5]}


def check_triangulations(scale: SuiteScale, rng: random.Random, workers: int) -> dict[str, Any]:
    census = triangulation_census()
    unimodular = [s for s in census if s.unimodular]
    counts = {
        "regular": sum(s.size for s in census),
        "orbits": len(census),
        "unimodular": sum(s.size for s in unimodular),
        "unimodular_orbits": len(unimodular),
        "unimodular_by_cells": unimodular_count(
            c.triangulation for c in enumerate_regular_triangulations()
        ),
    }
    sizes = tuple(sorted(s.size for s in unimodular))
    by_row = {s.table_row: s.size for s in unimodular}
    bad_rows = []
    for row in table_rows():
        t = row.triangulation
        if (
            sr_ideal(t) != row.sr_ideal
            or gkz_vector(t) != row.gkz
            or gkz_from_principal_determinant(row.weights) != row.gkz
            or by_row.get(row.row) != row.orbit_size
        ):
            bad_rows.append(row.row)
    passed = counts == {
        "regular": 70, "orbits": 14, "unimodular": 53, "unimodular_orbits": 10, "unimodular_by_cells": 53,
    }
    passed = passed and sizes == ORBIT_SIZES and not bad_rows
    return {"passed": passed, "counts": counts, "orbit_sizes": list(sizes), "bad_rows": bad_rows}


def check_toric(scale: SuiteScale, rng: random.Random, workers: int) -> dict[str, Any]:
    report = toric_ideal_check(TORIC_WEIGHT)
    return {
        "passed": report.homogeneous and report.initial_monomials == TORIC_INITIAL,
        "initial_monomials": sorted(report.initial_monomials),
    }


def check_lines(scale: SuiteScale, rng: random.Random, workers: int) -> dict[str, Any]:
    return _battery(_census_ok, _sample_moduli(rng, scale.lines), workers)


def check_formulas(scale: SuiteScale, rng: random.Random, workers: int) -> dict[str, Any]:
    return _battery(_formulas_ok, _sample_moduli(rng, scale.formulas), workers)


def _example_mismatches(examples: list[WorkedExample], smooth: bool) -> list[str]:
    problems = []
    for ex in examples:
        report = classify_moduli(ex.moduli, ex.prime)
        if report.statistic.counts != dict(sorted(ex.statistic.items())):
            problems.append(f"{ex.name}: statistic {report.statistic}")
        if report.arrangement_type != ex.arrangement_type:
            problems.append(f"{ex.name}: type {report.arrangement_type}")
        if smooth:
            if report.smoothness.class_index != ex.smoothness_class:
                problems.append(f"{ex.name}: class {report.smoothness.class_index}")
            if not report.distinct_lines.distinct:
                problems.append(f"{ex.name}: tropical lines collide")
    return problems


def check_naruki_general(scale: SuiteScale, rng: random.Random, workers: int) -> dict[str, Any]:
    problems = _example_mismatches(naruki_general_examples(), smooth=True)
    return {"passed": not problems, "problems": problems}


def check_stable(scale: SuiteScale, rng: random.Random, workers: int) -> dict[str, Any]:
    problems = _example_mismatches(stable_examples(), smooth=False)
    return {"passed": not problems, "problems": problems}


def check_non_stable(scale: SuiteScale, rng: random.Random, workers: int) -> dict[str, Any]:
    examples = non_stable_examples()
    problems = _example_mismatches(examples, smooth=False)
    problems += [f"{ex.name}: not flagged" for ex in examples if ex.arrangement_type != NON_STABLE]
    return {"passed": not problems, "problems": problems}


def check_certificates(scale: SuiteScale, rng: random.Random, workers: int) -> dict[str, Any]:
    """Every tropically smooth example or sampler draw carries a valid certificate."""
    examples = naruki_general_examples() + stable_examples() + non_stable_examples()
    candidates = [(ex.moduli, ex.prime) for ex in examples]
    prime = settings.validate_prime()
    for index in range(scale.sampler_draws):
        seed = draw_seed(index, settings.seed, prime, DEFAULT_EXPONENTS)
        try:
            candidates.append((chain_sample(seed), prime))
        except PreconditionError:
            continue
    checked, failures = 0, []
    for d, p in candidates:
        c = coefficients_from_moduli(d)
        if not tropical_smoothness(c, p).smooth:
            continue
        checked += 1
        if not smoothness_certificate(c, p).holds:
            failures.append(f"d={d}: certificate fails at p={p}")
    return {"passed": not failures, "smooth_samples": checked, "failures": failures[:5]}


def check_blowdown(scale: SuiteScale, rng: random.Random, workers: int) -> dict[str, Any]:
    return _battery(_roundtrip_ok, _sample_moduli(rng, scale.blowdown), workers)


def check_newton(scale: SuiteScale, rng: random.Random, workers: int) -> dict[str, Any]:
    coefficients, expected = NEWTON_EXAMPLE
    example = Counter(newton_root_valuations([ExtValuation(v) for v in coefficients]))
    example_ok = example == Counter(ExtValuation(v) for v in expected)
    disagreements = []
    for _ in range(scale.newton):
        vals = [ExtValuation(rng.randint(0, 12)) for _ in range(4)]
        if newton_criterion(vals) != has_distinct_roots(vals):
            disagreements.append([v.to_json() for v in vals])
    return {
        "passed": example_ok and not disagreements,
        "example": example_ok,
        "samples": scale.newton,
        "disagreements": disagreements[:5],
    }


Criterion = Callable[[SuiteScale, random.Random, int], dict[str, Any]]

CRITERIA: tuple[tuple[str, Criterion], ...] = (
    ("parametrization", check_parametrization),
    ("discriminant_oracle", check_discriminant_oracle),
    ("triangulation_census", check_triangulations),
    ("toric_ideal", check_toric),
    ("line_census", check_lines),
    ("triplet_formulas", check_formulas),
    ("naruki_general", check_naruki_general),
    ("stable_examples", check_stable),
    ("non_stable_examples", check_non_stable),
    ("smoothness_certificates", check_certificates),
    ("blowdown_roundtrip", check_blowdown),
    ("newton_criterion", check_newton),
)
