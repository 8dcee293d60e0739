from fractions import Fraction

import pytest

from convex_spheres import polynomials
from convex_spheres.errors import ZeroPolynomial
from convex_spheres.polynomials import is_real_rooted, poly, real_root_count

# ascending coefficients, expected verdict
REAL_ROOTED_SUITE = [
    ([1, 15, 15, 1], True),
    ([1, 0, 1], False),
    ([1, 2, 1], True),
    ([0, 1], True),
    ([5], True),
    ([-2, 0, 1], True),
    ([0, -1, 0, 1], True),
    ([1, 0, 0, 1], False),
    ([-1, 3, -3, 1], True),
    ([1, 0, 0, 0, 1], False),
    ([1, 0, 2, 0, 1], False),
    ([-6, 11, -6, 1], True),
    ([1, 1, 1], False),
    ([1, 3, 1], True),
    ([1, 4, 1], True),
    ([4, 0, -5, 0, 1], True),
    ([0, 0, 1, 0, 1], False),
    ([-1, -1, 6], True),
    ([0, -1, 0, 0, 0, 1], False),
    (["-1/8", 0, "1/2"], True),
]


@pytest.mark.parametrize("coefficients,expected", REAL_ROOTED_SUITE)
def test_is_real_rooted(coefficients, expected):
    assert is_real_rooted(poly(coefficients)) is expected


def test_real_root_count():
    assert real_root_count(poly([1, 15, 15, 1])) == 3
    assert real_root_count(poly([1, 0, 1])) == 0
    assert real_root_count(poly([1, 0, 0, 1])) == 1
    assert real_root_count(poly([-6, 11, -6, 1])) == 3


def test_zero_polynomial():
    with pytest.raises(ZeroPolynomial):
        is_real_rooted(poly([0]))
    with pytest.raises(ZeroPolynomial):
        real_root_count(poly([]))


def test_chain_count_basis():
    # two chains of length 2 and one of length 1 give t + 2·C(t, 2) = t^2
    assert polynomials.from_chain_counts([0, 1, 2]) == poly([0, 0, 1])
    assert polynomials.evaluate(polynomials.binomial_basis(3), 5) == 10


def test_coefficients_and_serialize():
    p = poly(["1/2", 0, 3])
    assert polynomials.coefficients(p) == [Fraction(1, 2), Fraction(0), Fraction(3)]
    assert polynomials.serialize(p) == ["1/2", "0", "3"]
    assert polynomials.coefficients(poly([0])) == []


def test_negate_variable():
    assert polynomials.negate_variable(poly([1, 2, 3])) == poly([1, -2, 3])
