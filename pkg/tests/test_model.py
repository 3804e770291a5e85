import random

import pytest
from sympy import QQ

from errors import PreconditionError
from exact.polynomial import evaluate
from lines.construction import base_points
from model.moduli import ROOT_FORMS, ModuliVector, random_moduli, root_forms, violated_root_form
from model.octanomial import (
    OctanomialCoefficients,
    coefficients_from_moduli,
    octanomial_cubic,
    pair_line,
    plane_cubic_basis,
    verify_parametrization,
)
from model.symmetry import (
    SYMMETRY_GENERATORS,
    check_equivariance,
    coefficient_relabellings,
    symmetry_action_on_coefficients,
)

D0_COEFFICIENTS = (-936, -936, -1140, -1440, 864, 1188, 1200, 1200)


def test_root_forms_count_and_labels(d0):
    assert len(ROOT_FORMS) == 36
    values = root_forms(d0)
    assert values["d1-d2"] == -1
    assert values["d1+d2+d3"] == 3
    assert values["d1+d2+d3+d4+d5+d6"] == 15


def test_inadmissible_difference_is_named():
    with pytest.raises(PreconditionError, match="d1-d2"):
        ModuliVector((1, 1, 2, 3, 4, 5))


def test_inadmissible_triple_sum_is_named():
    assert violated_root_form((1, -1, 0, 3, 4, 5)) == "d1+d2+d3"
    with pytest.raises(PreconditionError, match=r"d1\+d2\+d3"):
        ModuliVector((1, -1, 0, 3, 4, 5))


def test_parse_and_json(d0):
    assert ModuliVector.parse("0, 1, 2, 3, 4, 5") == d0
    assert ModuliVector.parse("1/2,1,2,3,4,5")[0] == QQ(1, 2)
    assert ModuliVector.from_json(d0.to_json()) == d0
    assert str(d0) == "0,1,2,3,4,5"
    with pytest.raises(PreconditionError):
        ModuliVector.parse("0,1,2,3,4")


def test_random_moduli_is_reproducible():
    a = [random_moduli(random.Random(7)) for _ in range(3)]
    b = [random_moduli(random.Random(7)) for _ in range(3)]
    assert a == b
    assert all(violated_root_form(d) is None for d in a)


def test_coefficients_at_reference_moduli(d0):
    c = coefficients_from_moduli(d0)
    assert c.as_tuple() == D0_COEFFICIENTS
    assert c.total() == 0


def test_coefficients_are_quintic(d0):
    c = coefficients_from_moduli(d0)
    doubled = coefficients_from_moduli(d0.scaled(2))
    assert doubled.as_tuple() == tuple(32 * v for v in c.as_tuple())


def test_coefficients_sum_to_zero_on_random_moduli():
    rng = random.Random(11)
    for _ in range(10):
        assert coefficients_from_moduli(random_moduli(rng)).total() == 0


def test_pair_lines_pass_through_base_points(d0):
    points = base_points(d0)
    for i in range(1, 7):
        for j in range(i + 1, 7):
            line = pair_line(d0, i, j)
            for k in (i, j):
                assert sum(a * b for a, b in zip(line, points[k - 1].coords)) == 0


def test_basis_cubics_vanish_at_base_points(d0):
    basis = plane_cubic_basis(d0)
    for point in base_points(d0):
        assert all(evaluate(cubic, point.coords) == 0 for cubic in basis)


def test_parametrization_identity(d0):
    assert verify_parametrization(d0)
    rng = random.Random(3)
    for _ in range(3):
        assert verify_parametrization(random_moduli(rng))


def test_perturbed_coefficients_leave_a_residual(d0):
    c = coefficients_from_moduli(d0)
    assert not verify_parametrization(d0, c.replace(a=c.a + 1))


def test_octanomial_support_and_partials(d0):
    cubic = octanomial_cubic(coefficients_from_moduli(d0))
    assert len(cubic.support) == 8
    assert len(cubic.partials()) == 4
    assert cubic((1, 0, 0, 0)) == 0


def test_coefficients_reject_wrong_length():
    with pytest.raises(PreconditionError):
        OctanomialCoefficients.from_sequence([1, 2, 3])


@pytest.mark.parametrize("name", sorted(SYMMETRY_GENERATORS))
def test_coordinate_symmetries_are_equivariant(name, d0):
    assert check_equivariance(d0, name)
    rng = random.Random(name)
    for _ in range(3):
        assert check_equivariance(random_moduli(rng), name)


def test_symmetry_group_has_eight_relabellings():
    group = coefficient_relabellings()
    assert len(group) == 8
    assert group["id"] == "abcdefgh"
    assert group["xy·zw"] == "badcfehg"
    assert len(set(group.values())) == 8


def test_symmetry_action_on_coefficients():
    c = OctanomialCoefficients(1, 2, 3, 4, 5, 6, 7, 8)
    images = symmetry_action_on_coefficients(c)
    assert images["id"] == c
    assert images["pairs"].as_tuple() == (3, 4, 1, 2, 7, 8, 5, 6)
