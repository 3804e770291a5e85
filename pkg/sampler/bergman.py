"""
Octodp — Bergman Fan Sampling
Moduli vectors whose root-form valuations follow a prescribed chain.

Six linearly independent root forms are chosen as a basis B and assigned
values e_i = u_i · p^k_i with strictly increasing exponents; solving d · B = e
gives a moduli vector whose tropicalisation lies in the matching cone of the
Bergman fan of E6.
"""

from __future__ import annotations

import functools
import logging
import random
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

from errors import PreconditionError
from exact.matrix import RatMatrix, det_exact, solve_linear
from exact.rationals import format_rational, qq
from exact.valuation import ExtValuation, check_prime, valuation
from model.moduli import ROOT_FORMS, ModuliVector, RootForm

logger = logging.getLogger(__name__)

BASIS_SIZE = 6
DEFAULT_EXPONENTS: tuple[int, ...] = (1, 3, 5, 7, 9, 11)


@dataclass(frozen=True)
class RootMatrix:
    """The 36 root forms as labelled columns in Z^6."""

    columns: tuple[RootForm, ...] = ROOT_FORMS

    def __post_init__(self) -> None:
        if self.as_matrix().rank() != BASIS_SIZE:
            raise PreconditionError("Root forms must span Q^6")

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(form.label for form in self.columns)

    def column(self, label: str) -> RootForm:
        for form in self.columns:
            if form.label == label:
                return form
        raise PreconditionError(f"Unknown root form {label!r}")

    def as_matrix(self) -> RatMatrix:
        """6 × 36 matrix with one column per root form."""
        return RatMatrix.from_rows(
            [[form.coeffs[i] for form in self.columns] for i in range(BASIS_SIZE)]
        )

    def submatrix(self, basis: Sequence[str]) -> RatMatrix:
        return RatMatrix.from_rows(
            [[self.column(label).coeffs[i] for label in basis] for i in range(BASIS_SIZE)]
        )

    def is_basis(self, basis: Sequence[str]) -> bool:
        return len(set(basis)) == BASIS_SIZE and det_exact(self.submatrix(basis)) != 0


@functools.lru_cache(maxsize=1)
def root_matrix() -> RootMatrix:
    return RootMatrix()


@dataclass(frozen=True)
class SamplerSeed:
    basis: tuple[str, ...]
    exponents: tuple[int, ...]
    units: tuple[Any, ...]
    prime: int

    def __post_init__(self) -> None:
        check_prime(self.prime)
        if len(self.basis) != BASIS_SIZE or len(set(self.basis)) != BASIS_SIZE:
            raise PreconditionError(f"Need {BASIS_SIZE} distinct basis forms, got {self.basis}")
        if len(self.exponents) != BASIS_SIZE or len(self.units) != BASIS_SIZE:
            raise PreconditionError("Need six exponents and six units")
        if any(a >= b for a, b in zip(self.exponents, self.exponents[1:])):
            raise PreconditionError(f"Exponents must be strictly increasing: {self.exponents}")
        units = tuple(qq(u) for u in self.units)
        if any(valuation(u, self.prime) != 0 for u in units):
            raise PreconditionError(f"Units must be {self.prime}-adic units: {units}")
        object.__setattr__(self, "units", units)

    def targets(self) -> tuple[Any, ...]:
        """The prescribed basis-form values e_i = u_i p^k_i."""
        return tuple(u * qq(self.prime) ** k for u, k in zip(self.units, self.exponents))

    def to_json(self) -> dict[str, Any]:
        return {
            "basis": list(self.basis),
            "exponents": list(self.exponents),
            "units": [format_rational(u) for u in self.units],
            "prime": self.prime,
        }


def chain_sample(seed: SamplerSeed, matrix: RootMatrix | None = None) -> ModuliVector:
    """Solve d · B = e for the seed's basis B and targets e.

    Raises:
        PreconditionError: the basis is singular or d lies on a root hyperplane.
    """
    matrix = matrix or root_matrix()
    if not matrix.is_basis(seed.basis):
        raise PreconditionError(f"Root forms {seed.basis} are linearly dependent")
    # row k of the system is the basis form k acting on d
    rows = [matrix.column(label).coeffs for label in seed.basis]
    d = solve_linear(rows, seed.targets())
    return ModuliVector(d)


def bergman_point(d: ModuliVector, p: int) -> dict[str, ExtValuation]:
    """Valuations of all 36 root forms at d."""
    check_prime(p)
    return {form.label: valuation(form(d.d), p) for form in ROOT_FORMS}


def random_seed(
    rng: random.Random,
    prime: int,
    exponents: Sequence[int] = DEFAULT_EXPONENTS,
    matrix: RootMatrix | None = None,
) -> SamplerSeed:
    """A random basis of root forms with small random units coprime to p."""
    matrix = matrix or root_matrix()
    labels = list(matrix.labels)
    while True:
        basis = tuple(rng.sample(labels, BASIS_SIZE))
        if matrix.is_basis(basis):
            break
    units = []
    while len(units) < BASIS_SIZE:
        u = rng.randint(-prime * prime, prime * prime)
        if u % prime:
            units.append(u)
    return SamplerSeed(basis, tuple(exponents), tuple(units), prime)
