import random

import pytest

from acceptance import SuiteScale, check_discriminant_oracle
from discriminants.a_discriminant import (
    DISCRIMINANT_CONSTANT,
    ADiscriminant,
    a_discriminant,
    delta_invariant,
    discriminant_factors,
    full_discriminant,
)
from discriminants.principal import gkz_from_principal_determinant
from discriminants.resultant import RESULTANT_TO_DISCRIMINANT, resultant_oracle
from discriminants.smoothness import smoothness_certificate
from errors import PreconditionError
from exact.polynomial import is_homogeneous, poly_ring
from model.octanomial import OctanomialCoefficients, coefficients_from_moduli, octanomial_cubic
from polytope.symmetry import table_rows


def test_a_discriminant_shape():
    delta = a_discriminant()
    assert len(delta) == 49
    assert is_homogeneous(delta.poly, 8)
    assert DISCRIMINANT_CONSTANT == 2**16 * 3**5


def test_factors_and_exponents(d0):
    factors = discriminant_factors(coefficients_from_moduli(d0))
    labels = [label for label, _, _ in factors]
    assert labels == ["e", "f", "g", "h", "ac-eg", "ad-fg", "bc-eh", "bd-fh", "delta_A"]
    assert sum(power for _, _, power in factors) == 17


def test_admissible_moduli_give_smooth_surface(d0):
    report = full_discriminant(coefficients_from_moduli(d0))
    assert report.is_smooth
    assert report.vanishing_factor is None
    assert report.to_json()["is_smooth"] is True


def test_vanishing_coefficient_is_reported():
    c = OctanomialCoefficients(1, 2, 3, 4, 0, 6, 7, 8)
    report = full_discriminant(c)
    assert not report.is_smooth
    assert report.vanishing_factor == "e"


def test_vanishing_binomial_is_reported():
    # ac = eg = 6
    c = OctanomialCoefficients(2, 5, 3, 7, 1, 4, 6, 9)
    assert full_discriminant(c).vanishing_factor == "ac-eg"


def test_resultant_matches_factored_discriminant():
    c = OctanomialCoefficients(1, -2, 3, 5, 2, -1, 4, 3)
    oracle = resultant_oracle(octanomial_cubic(c).partials())
    assert RESULTANT_TO_DISCRIMINANT * oracle == full_discriminant(c).full_discriminant


def test_resultant_rejects_non_quadrics():
    _, (x, y, z, w) = poly_ring("x,y,z,w")
    with pytest.raises(PreconditionError):
        resultant_oracle([x**2, y**2, z**2])
    with pytest.raises(PreconditionError):
        resultant_oracle([x**2, y**2, z**2, w**3])


def test_oracle_detects_a_mutated_discriminant():
    delta = a_discriminant()
    a = delta.poly.ring.gens[0]
    mutated = ADiscriminant(delta.poly + a**8)
    scale = SuiteScale(oracle=3)
    assert check_discriminant_oracle(scale, random.Random(1), 1)["passed"]
    assert not check_discriminant_oracle(scale, random.Random(1), 1, delta=mutated)["passed"]


def test_flipped_sign_in_term_file_breaks_the_oracle(tmp_path):
    source = a_discriminant().terms
    lines = [f"{-coeff if i == 0 else coeff} " + " ".join(map(str, monom))
             for i, (monom, coeff) in enumerate(source)]
    path = tmp_path / "delta_a.txt"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    flipped = a_discriminant(path)
    assert len(flipped) == 49
    c = OctanomialCoefficients(1, -2, 3, 5, 2, -1, 4, 3)
    oracle = resultant_oracle(octanomial_cubic(c).partials())
    assert RESULTANT_TO_DISCRIMINANT * oracle != full_discriminant(c, flipped).full_discriminant


def test_gkz_vectors_from_principal_determinant():
    for row in table_rows()[:3]:
        assert gkz_from_principal_determinant(row.weights) == row.gkz


def test_non_generic_weight_is_rejected():
    with pytest.raises(PreconditionError, match="Non-generic"):
        gkz_from_principal_determinant([0] * 8)


def test_smoothness_certificate_for_naruki_general_example(aaaa_example):
    c = coefficients_from_moduli(aaaa_example.moduli)
    cert = smoothness_certificate(c, aaaa_example.prime)
    assert cert.holds
    assert cert.unique_minimum
    assert cert.to_json()["holds"] is True


def test_delta_is_constant_on_symmetry_orbits(d0):
    assert delta_invariant(OctanomialCoefficients(3, -2, 5, 7, -4, 6, 1, -9))
    assert delta_invariant(coefficients_from_moduli(d0))
