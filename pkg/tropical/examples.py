"""
Octodp — Worked Examples
Moduli vectors with known tree statistics, loaded from data/examples.json.
Naruki general vectors are stored as p-adic expansions and evaluated at p.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass
from typing import Any

from config import settings
from model.moduli import ModuliVector

EXAMPLES_FILE = "examples.json"

# The printed expansions and statistics are 5-adic
EXAMPLE_PRIME = 5


@dataclass(frozen=True)
class WorkedExample:
    name: str
    moduli: ModuliVector
    prime: int
    arrangement_type: str
    statistic: dict[str, int]
    smoothness_class: int | None = None

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "moduli": self.moduli.to_json(),
            "prime": self.prime,
            "type": self.arrangement_type,
            "statistic": self.statistic,
            "class": self.smoothness_class,
        }


def evaluate_expansion(terms: list[list[int]], p: int) -> int:
    """Sum of coefficient * p**exponent over [coefficient, exponent] pairs."""
    return sum(c * p**e for c, e in terms)


@functools.lru_cache(maxsize=1)
def load_examples_file() -> dict[str, Any]:
    with open(settings.data_dir / EXAMPLES_FILE, "r", encoding="utf-8") as f:
        return json.load(f)


def naruki_general_examples() -> list[WorkedExample]:
    """The five Naruki general vectors, with their triangulation classes in order."""
    data = load_examples_file()
    classes = {tag: list(rows) for tag, rows in data["naruki_classes"].items()}
    examples = []
    for entry in data["naruki_general"]:
        tag = entry["type"]
        d = ModuliVector(tuple(evaluate_expansion(t, EXAMPLE_PRIME) for t in entry["moduli_in_p"]))
        examples.append(
            WorkedExample(
                name=entry["name"],
                moduli=d,
                prime=EXAMPLE_PRIME,
                arrangement_type=tag,
                statistic=dict(data["generic_statistics"][tag]),
                smoothness_class=classes[tag].pop(0),
            )
        )
    return examples


def _plain(entries: list[dict[str, Any]], prefix: str) -> list[WorkedExample]:
    return [
        WorkedExample(
            name=f"{prefix}-{k + 1}",
            moduli=ModuliVector.from_json(e["moduli"]),
            prime=e["prime"],
            arrangement_type=e["type"],
            statistic=dict(e["statistic"]),
        )
        for k, e in enumerate(entries)
    ]


def stable_examples() -> list[WorkedExample]:
    return _plain(load_examples_file()["stable"], "stable")


def non_stable_examples() -> list[WorkedExample]:
    return _plain(load_examples_file()["non_stable"], "non-stable")


def all_examples() -> list[WorkedExample]:
    return naruki_general_examples() + stable_examples() + non_stable_examples()
