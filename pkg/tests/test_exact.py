import pytest
from sympy import QQ

from errors import ExactDivisionError, PreconditionError
from exact.matrix import RatMatrix, det_exact, inverse, kernel_vector, matmul, solve_linear
from exact.newton import has_distinct_roots, newton_criterion, newton_root_valuations
from exact.polynomial import (
    evaluate,
    exact_quotient,
    is_homogeneous,
    poly_from_json,
    poly_ring,
    poly_to_json,
    substitute,
)
from exact.rationals import (
    format_rational,
    parse_rational,
    parse_rational_list,
    primitive_integer_vector,
    proportional,
    qq,
)
from exact.valuation import INFINITY, ExtValuation, valuation


# ── rationals ──────────────────────────────────────────────────────

def test_qq_normalises_strings_and_ints():
    assert qq("3/6") == QQ(1, 2)
    assert qq(-4) == QQ(-4, 1)
    assert qq(3, 9) == QQ(1, 3)


@pytest.mark.parametrize("text", ["1/0", "x", "1.5", "", "2/-3"])
def test_parse_rational_rejects_bad_text(text):
    with pytest.raises(PreconditionError):
        parse_rational(text)


def test_parse_rational_list_checks_length():
    assert parse_rational_list("1, -2/4, 3") == [QQ(1), QQ(-1, 2), QQ(3)]
    with pytest.raises(PreconditionError, match="Expected 6"):
        parse_rational_list("1,2,3", expected=6)


def test_format_rational():
    assert format_rational(QQ(-3, 4)) == "-3/4"
    assert format_rational(QQ(8, 4)) == "2"
    assert format_rational(QQ(0)) == "0"


def test_primitive_integer_vector():
    assert primitive_integer_vector((QQ(-1, 2), 1, 0)) == (1, -2, 0)
    assert primitive_integer_vector((0, -6, 4)) == (0, 3, -2)
    with pytest.raises(PreconditionError):
        primitive_integer_vector((0, 0))


def test_proportional():
    assert proportional((1, 2, 3), (-2, -4, -6))
    assert not proportional((1, 2, 3), (1, 2, 4))
    assert not proportional((0, 0), (0, 0))


# ── valuations ─────────────────────────────────────────────────────

def test_valuation_of_rationals():
    assert valuation(250, 5) == ExtValuation(3)
    assert valuation(QQ(3, 25), 5) == ExtValuation(-2)
    assert valuation(-7, 5) == ExtValuation(0)
    assert valuation(0, 5).is_infinite


@pytest.mark.parametrize("p", [2, 3, 4, 25])
def test_valuation_rejects_bad_primes(p):
    with pytest.raises(PreconditionError):
        valuation(1, p)


def test_extended_arithmetic_and_order():
    assert ExtValuation(2) + ExtValuation(3) == ExtValuation(5)
    assert (ExtValuation(2) + INFINITY).is_infinite
    assert 2 * ExtValuation(3) == ExtValuation(6)
    assert ExtValuation(100) < INFINITY
    assert not INFINITY < INFINITY
    assert min([INFINITY, ExtValuation(4), ExtValuation(-1)]) == ExtValuation(-1)
    assert INFINITY.to_json() == "inf"


# ── Newton polygons ────────────────────────────────────────────────

def test_newton_root_valuations_example():
    assert newton_root_valuations([ExtValuation(v) for v in (3, 1, 0, 0)]) == (
        ExtValuation(2),
        ExtValuation(1),
        ExtValuation(0),
    )


def test_newton_zero_constant_term_gives_infinite_root():
    roots = newton_root_valuations([INFINITY, ExtValuation(1), ExtValuation(0), ExtValuation(0)])
    assert roots[0].is_infinite
    assert roots[1:] == (ExtValuation(1), ExtValuation(0))


def test_newton_fractional_slope():
    roots = newton_root_valuations([ExtValuation(1), INFINITY, ExtValuation(0)])
    assert roots == (ExtValuation(QQ(1, 2)), ExtValuation(QQ(1, 2)))


def test_newton_rejects_vanishing_leading_coefficient():
    with pytest.raises(PreconditionError):
        newton_root_valuations([ExtValuation(0), INFINITY])


def test_newton_criterion():
    assert newton_criterion([3, 1, 0, 0])
    assert not newton_criterion([0, 0, 0, 0])
    with pytest.raises(PreconditionError):
        newton_criterion([0, 0, 0])


def test_newton_criterion_agrees_with_polygon_on_a_grid():
    grid = range(0, 5)
    for v0 in grid:
        for v1 in grid:
            for v2 in grid:
                vals = [ExtValuation(v) for v in (v0, v1, v2, 0)]
                assert newton_criterion(vals) == has_distinct_roots(vals)


# ── matrices ───────────────────────────────────────────────────────

def test_det_and_inverse():
    m = RatMatrix.from_rows([[2, 1], [QQ(1, 2), 3]])
    assert det_exact(m) == QQ(11, 2)
    identity = matmul(m, inverse(m))
    assert identity.entries == ((1, 0), (0, 1))


def test_inverse_of_singular_matrix():
    with pytest.raises(PreconditionError):
        inverse(RatMatrix.from_rows([[1, 2], [2, 4]]))


def test_kernel_vector_needs_corank_one():
    v = kernel_vector([[1, 1, 0], [0, 1, 1]])
    assert proportional(v, (1, -1, 1))
    with pytest.raises(PreconditionError):
        kernel_vector([[1, 1, 0]])


def test_solve_linear():
    assert solve_linear([[1, 1], [1, -1]], [3, 1]) == (QQ(2), QQ(1))
    with pytest.raises(PreconditionError):
        solve_linear([[1, 1], [2, 2]], [1, 2])


def test_from_rows_rejects_ragged_rows():
    with pytest.raises(PreconditionError):
        RatMatrix.from_rows([[1, 2], [3]])


# ── polynomials ────────────────────────────────────────────────────

def test_substitute_and_evaluate():
    _, (x, y) = poly_ring("x,y")
    _, (s, t) = poly_ring("s,t")
    f = x**2 - y
    g = substitute(f, {"x": s + t, "y": 2 * s * t})
    assert g == s**2 + t**2
    assert evaluate(g, (QQ(1, 2), 3)) == QQ(37, 4)
    with pytest.raises(PreconditionError):
        substitute(f, {"x": s})


def test_exact_quotient():
    _, (x, y) = poly_ring("x,y")
    assert exact_quotient(x**2 - y**2, x - y) == x + y
    with pytest.raises(ExactDivisionError):
        exact_quotient(x**2 + y**2, x - y)


def test_poly_json_keeps_exact_coefficients():
    _, (x, y) = poly_ring("x,y")
    f = QQ(-3, 7) * x**3 + 5 * x * y**2
    data = poly_to_json(f)
    assert data["variables"] == ["x", "y"]
    assert {"exponents": [3, 0], "coefficient": "-3/7"} in data["terms"]
    assert poly_from_json(data) == f
    assert is_homogeneous(f, 3)
    assert not is_homogeneous(f + x, 3)
