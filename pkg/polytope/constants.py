"""
Octodp — Support Constants
The support configuration A of the octanomial and the sign conventions used
by subdivisions (min) and toric initial terms (max).
"""

# Labels of the eight coefficients / support points, in table order
LABELS: str = "abcdefgh"

# Exponent vectors (x, y, z, w) of the eight monomials
EXPONENTS: dict[str, tuple[int, int, int, int]] = {
    "a": (1, 1, 1, 0),
    "b": (1, 1, 0, 1),
    "c": (1, 0, 1, 1),
    "d": (0, 1, 1, 1),
    "e": (2, 1, 0, 0),
    "f": (1, 2, 0, 0),
    "g": (0, 0, 2, 1),
    "h": (0, 0, 1, 2),
}

# Dehomogenised points (drop the w exponent); they span the lattice Z^3
POINTS: dict[str, tuple[int, int, int]] = {k: v[:3] for k, v in EXPONENTS.items()}

TOTAL_VOLUME: int = 7
GKZ_TOTAL: int = 4 * TOTAL_VOLUME

# Lower hull for subdivisions, highest monomials for initial terms
SUBDIVISION_CONVENTION: str = "min"
INITIAL_TERM_CONVENTION: str = "max"

FACETS: frozenset[str] = frozenset({"aceg", "adfg", "bceh", "bdfh", "aef", "bef", "cgh", "dgh"})

# Generators of the toric ideal; the first monomial is the one marked
# initial for the representative weight of table row 8
TORIC_BINOMIALS: tuple[tuple[str, str], ...] = (
    ("ab", "cf"),
    ("ac", "eg"),
    ("ad", "fg"),
    ("ah", "cd"),
    ("bg", "cd"),
    ("cf", "de"),
    ("eh", "bc"),
    ("fh", "bd"),
)
