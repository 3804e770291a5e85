"""
Octodp — Moduli Vectors
Six rational moduli d1..d6 and the 36 E6 root forms that must not vanish.
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any

from sympy import QQ

from errors import PreconditionError
from exact.rationals import format_rational, parse_rational_list, qq


@dataclass(frozen=True)
class RootForm:
    """A labelled linear form on Q^6 with coefficients in {-1, 0, 1}."""

    label: str
    coeffs: tuple[int, ...]

    def __call__(self, d: Sequence[Any]) -> Any:
        return sum((qq(v) * c for v, c in zip(d, self.coeffs) if c), QQ.zero)


def _build_root_forms() -> tuple[RootForm, ...]:
    forms: list[RootForm] = []
    for i, j in itertools.combinations(range(6), 2):
        coeffs = [0] * 6
        coeffs[i], coeffs[j] = 1, -1
        forms.append(RootForm(f"d{i + 1}-d{j + 1}", tuple(coeffs)))
    for triple in itertools.combinations(range(6), 3):
        coeffs = [1 if k in triple else 0 for k in range(6)]
        forms.append(RootForm("+".join(f"d{k + 1}" for k in triple), tuple(coeffs)))
    forms.append(RootForm("+".join(f"d{k + 1}" for k in range(6)), (1,) * 6))
    return tuple(forms)


# 15 differences, 20 triple sums, the total sum
ROOT_FORMS: tuple[RootForm, ...] = _build_root_forms()


def root_forms(d: Sequence[Any]) -> dict[str, Any]:
    """Evaluate all 36 labelled root forms at d (no admissibility check)."""
    values = d.d if isinstance(d, ModuliVector) else tuple(qq(v) for v in d)
    return {form.label: form(values) for form in ROOT_FORMS}


def violated_root_form(d: Sequence[Any]) -> str | None:
    """Label of the first vanishing root form, or None if d is admissible."""
    for label, value in root_forms(d).items():
        if value == 0:
            return label
    return None


@dataclass(frozen=True)
class ModuliVector:
    """Admissible moduli: six rationals off all 36 E6 hyperplanes."""

    d: tuple[Any, ...]

    def __post_init__(self) -> None:
        values = tuple(qq(v) for v in self.d)
        if len(values) != 6:
            raise PreconditionError(f"Moduli vector needs 6 entries, got {len(values)}")
        object.__setattr__(self, "d", values)
        bad = violated_root_form(values)
        if bad is not None:
            raise PreconditionError(f"Inadmissible moduli: root form {bad} vanishes")

    @classmethod
    def parse(cls, text: str) -> ModuliVector:
        """Parse ``"d1,...,d6"`` with entries ``n`` or ``n/m``."""
        return cls(tuple(parse_rational_list(text, expected=6)))

    def __getitem__(self, i: int) -> Any:
        return self.d[i]

    def __iter__(self):
        return iter(self.d)

    def __len__(self) -> int:
        return 6

    def scaled(self, factor: Any) -> ModuliVector:
        return ModuliVector(tuple(v * qq(factor) for v in self.d))

    def permuted(self, images: Sequence[int]) -> ModuliVector:
        """The vector d' with d'_j = d_{images[j]} (1-based images)."""
        return ModuliVector(tuple(self.d[k - 1] for k in images))

    def to_json(self) -> list[str]:
        return [format_rational(v) for v in self.d]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> ModuliVector:
        return cls(tuple(qq(v) for v in data))

    def __str__(self) -> str:
        return ",".join(self.to_json())


def random_moduli(rng: random.Random, bound: int = 50) -> ModuliVector:
    """A uniformly random admissible integer vector in [-bound, bound]^6."""
    while True:
        values = tuple(rng.randint(-bound, bound) for _ in range(6))
        if violated_root_form(values) is None:
            return ModuliVector(values)
