from fractions import Fraction

import pytest

from artifact.amplitude import (MatrixPotentialSpec, exp_moment, gaussian_moment, matrix_coefficient,
                                multivariate_moment, tensor_coefficient, wick_engine_selftest)
from artifact.bubble import Pairing
from artifact.construction import build_map
from artifact.errors import CapExceeded, PreconditionViolated, SelfTestFailed
from artifact.laurent import LaurentPoly
from artifact.named import k33, quartic_melonic, two_vertex


def test_gaussian_moments():
    assert gaussian_moment(3, 3) == 6
    assert gaussian_moment(2, 3) == 0
    assert exp_moment(4) == {4: 1}
    assert exp_moment(1, -1) == {1: -1}


def test_multivariate_product_rule():
    P, Q = {(1, 1): Fraction(1)}, {(2, 0): Fraction(1)}
    assert multivariate_moment(P, Q, (2, 5)) == 2 * 5 * 4


def test_selftest_conventions():
    wick_engine_selftest(6)
    with pytest.raises(SelfTestFailed):
        wick_engine_selftest(6, convention="literal")


def test_tensor_coefficients_known_values():
    b = quartic_melonic(3)
    assert tensor_coefficient(b, 0, 0) == LaurentPoly.constant(1)
    assert tensor_coefficient(b, 2, 1) == LaurentPoly({3: -1, 2: -1})
    expected = LaurentPoly({6: Fraction(1, 2), 5: 1, 4: Fraction(1, 2), 3: 2, 2: 5, 1: 2, -1: 1})
    assert tensor_coefficient(b, 2, 2) == expected
    assert tensor_coefficient(k33(), 2, 1) == LaurentPoly({2: -3, 1: -3})


def test_s_shifts_every_order():
    b = two_vertex(3)
    assert tensor_coefficient(b, 2, 2) == tensor_coefficient(b, 0, 2).shift(4)


def test_spec_matches_constructed_map():
    b, om = k33(), Pairing((1, 0, 2))
    spec = MatrixPotentialSpec.from_bubble(b, om)
    assert spec.V == 3
    assert spec.matches_map(build_map(b, om))
    assert not MatrixPotentialSpec.from_bubble(b, Pairing((0, 1, 2))).matches_map(build_map(b, om))


@pytest.mark.parametrize("p", [1, 2])
def test_literal_sign_differs_by_parity(p):
    b = quartic_melonic(3)
    spec = MatrixPotentialSpec.from_bubble(b, Pairing.identity(2))
    lit = matrix_coefficient(spec, 0, p, "literal")
    assert lit == tensor_coefficient(b, 0, p) * (-1) ** (p * b.V)


def test_errors():
    spec = MatrixPotentialSpec.from_bubble(k33(), Pairing((1, 0, 2)))
    with pytest.raises(CapExceeded):
        matrix_coefficient(spec, 0, 3)
    with pytest.raises(PreconditionViolated):
        matrix_coefficient(spec, 0, 1, "other")
    with pytest.raises(CapExceeded):
        tensor_coefficient(k33(), 0, 3)


def test_two_vertex_first_order():
    assert tensor_coefficient(two_vertex(3), 2, 1) == LaurentPoly.monomial(3, -1)


@pytest.mark.parametrize("p", [1, 2])
def test_quartic_four_colors_both_sides(p):
    b = quartic_melonic(4)
    spec = MatrixPotentialSpec.from_bubble(b, Pairing.identity(2))
    assert tensor_coefficient(b, 3, p) == matrix_coefficient(spec, 3, p)
