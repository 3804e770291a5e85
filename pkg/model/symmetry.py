"""
Octodp — Coordinate Symmetries
The three coordinate involutions of P^3 preserving the octanomial support,
with the matching relabelling of the six base points.
"""

from __future__ import annotations

from dataclasses import dataclass

from model.moduli import ModuliVector
from model.octanomial import OctanomialCoefficients, coefficients_from_moduli


@dataclass(frozen=True)
class CoordinateSymmetry:
    """One involution generating the support symmetry group.

    Attributes:
        name: Short tag (``xy``, ``zw``, ``pairs``).
        coordinates: Image of (x, y, z, w) as a permutation string.
        moduli_images: d'_j = d_{moduli_images[j]} (1-based).
        coefficient_images: Label read for each of a..h after the swap.
        sign: Global sign relating the two coefficient vectors.
    """

    name: str
    coordinates: str
    moduli_images: tuple[int, ...]
    coefficient_images: str
    sign: int

    def act_on_moduli(self, d: ModuliVector) -> ModuliVector:
        return d.permuted(self.moduli_images)

    def act_on_coefficients(self, c: OctanomialCoefficients) -> OctanomialCoefficients:
        values = c.as_dict()
        return OctanomialCoefficients(*(values[k] for k in self.coefficient_images))

    def point_permutation(self) -> dict[str, str]:
        """The induced permutation of support labels."""
        return dict(zip("abcdefgh", self.coefficient_images))


SYMMETRY_GENERATORS: dict[str, CoordinateSymmetry] = {
    "xy": CoordinateSymmetry("xy", "yxzw", (6, 4, 5, 2, 3, 1), "abdcfegh", -1),
    "zw": CoordinateSymmetry("zw", "xywz", (6, 5, 4, 3, 2, 1), "bacdefhg", -1),
    "pairs": CoordinateSymmetry("pairs", "zwxy", (1, 2, 3, 5, 4, 6), "cdabghef", 1),
}


def check_equivariance(d: ModuliVector, name: str) -> bool:
    """True iff relabelling the points matches swapping coordinates, up to the sign."""
    sym = SYMMETRY_GENERATORS[name]
    swapped = sym.act_on_coefficients(coefficients_from_moduli(d))
    relabelled = coefficients_from_moduli(sym.act_on_moduli(d))
    return relabelled.as_tuple() == tuple(sym.sign * v for v in swapped.as_tuple())


def coefficient_relabellings() -> dict[str, str]:
    """Every coefficient relabelling generated by the three involutions.

    Keys are words in the generator names (``id`` for the identity, ``xy·zw``
    for xy followed by zw); values read like ``coefficient_images``.
    """
    labels = "abcdefgh"
    group = {"id": labels}
    queue = ["id"]
    while queue:
        word = queue.pop(0)
        for name, sym in SYMMETRY_GENERATORS.items():
            image = "".join(group[word][labels.index(k)] for k in sym.coefficient_images)
            if image in group.values():
                continue
            key = name if word == "id" else f"{word}·{name}"
            group[key] = image
            queue.append(key)
    return group


def symmetry_action_on_coefficients(
    c: OctanomialCoefficients,
) -> dict[str, OctanomialCoefficients]:
    """Images of c under all eight support symmetries."""
    values = c.as_dict()
    return {
        word: OctanomialCoefficients(*(values[k] for k in image))
        for word, image in coefficient_relabellings().items()
    }
