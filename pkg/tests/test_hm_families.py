from fractions import Fraction

import pytest

from igusa_locus.arith import QuadExtVal
from igusa_locus.errors import DomainError
from igusa_locus.hm_families import (
    Degenerate,
    HMCoeffs,
    base_polynomial,
    coeffs,
    curve,
    on_base_curve,
    rational_points,
)


def test_family_10_points_of_small_height():
    points = rational_points(10, 3)
    assert [(p.t, p.s) for p in points] == [(Fraction(-1, 2), 0), (0, 0), (2, 0)]
    assert [p.degenerate for p in points] == [True, True, False]


def test_points_lie_on_base_curve():
    for family in (6, 10):
        for point in rational_points(family, 12):
            assert on_base_curve(family, point.t, point.s)


def test_family_10_coefficients():
    c = coeffs(10, 2, 0)
    assert isinstance(c, HMCoeffs)
    assert c.P == 20
    assert c.Q == Fraction(125, 18)
    assert c.R == 0


def test_family_6_over_quadratic_field():
    assert on_base_curve(6, 0, "sqrt(2)")
    c = coeffs(6, 0, "sqrt(2)")
    assert c.P == QuadExtVal(0, 2, 2)
    assert c.Q == Fraction(11, 3)
    assert c.R == QuadExtVal(0, 2, 2)
    assert str(c.P) == "2*sqrt(2)"


def test_family_6_curve_model():
    hm = curve(6, 0, "sqrt(2)")
    assert [str(x) for x in hm.f_coeffs[:4]] == ["1", "2*sqrt(2)", "11/3", "2*sqrt(2)"]
    assert hm.f_coeffs[-1] == 0


def test_family_10_curve_model():
    hm = curve(10, 2, 0)
    assert [str(x) for x in hm.f_coeffs] == ["400", "400", "1250/9", "20", "1", "0"]
    assert hm.degenerate is None


def test_family_6_sign_symmetry():
    t, s = 2, QuadExtVal(0, Fraction(1, 5), -10)
    assert on_base_curve(6, t, s) and on_base_curve(6, -t, -s)
    c, flipped = coeffs(6, t, s), coeffs(6, -t, -s)
    assert flipped.P == -c.P
    assert flipped.Q == c.Q
    assert flipped.R == -c.R
    f, g = curve(6, t, s).f_coeffs, curve(6, -t, -s).f_coeffs
    assert all(g[k] == (-1) ** k * f[k] for k in range(len(f)))


def test_rational_points_grow_with_height():
    for family in (6, 10):
        previous = set()
        for h in range(1, 9):
            current = set(rational_points(family, h))
            assert previous <= current
            previous = current


def test_point_off_base_curve():
    assert base_polynomial(6, 1, 2) == 15
    with pytest.raises(DomainError):
        coeffs(6, 1, 2)
    with pytest.raises(DomainError):
        curve(6, 1, 2)


@pytest.mark.parametrize("t, s, reason", [
    (0, 0, "t(t-1)^2(t+1)^2 vanishes"),
    ("-1/2", 0, "t(t+1)(2t+1) vanishes"),
    (1, "sqrt(-3)", "(t-1)^2 vanishes"),
])
def test_family_10_degenerate_points(t, s, reason):
    c = coeffs(10, t, s)
    assert c == Degenerate(reason)
    hm = curve(10, t, s)
    assert hm.degenerate == reason
    assert hm.f_coeffs == ()


def test_family_6_degenerate_point():
    # t = 1 forces s^2 = -1
    assert curve(6, 1, "sqrt(-1)").degenerate == "3(1-t^2)(1-4t^2) vanishes"


@pytest.mark.parametrize("family", [7, 0])
def test_unknown_family(family):
    with pytest.raises(DomainError):
        base_polynomial(family, 0, 0)
    with pytest.raises(DomainError):
        rational_points(family, 3)


def test_height_bound_must_be_positive():
    with pytest.raises(DomainError):
        rational_points(10, 0)
