"""Tests for the core three-term recurrence engine."""

import math
from fractions import Fraction

import pytest

from askeycharts import polyrec as P
from askeycharts import families as F
from askeycharts.errors import NonFiniteCoefficient, OutOfDomain, SingularHankel


def hermite_rc():
    return F.recurrence_coeffs(F.FamilyInstance("Hermite", {}))


# Monic orthogonal polynomials for the weight exp(-x^2): B_n = 0, C_n = n/2.
HERMITE_ROWS = [
    (Fraction(1),),
    (Fraction(0), Fraction(1)),
    (Fraction(-1, 2), Fraction(0), Fraction(1)),
    (Fraction(0), Fraction(-3, 2), Fraction(0), Fraction(1)),
    (Fraction(3, 4), Fraction(0), Fraction(-3), Fraction(0), Fraction(1)),
]

# Even moments of exp(-x^2) normalized to m_0 = 1: m_{2k} = (2k-1)!! / 2^k.
HERMITE_MOMENTS = [
    Fraction(1),
    Fraction(0),
    Fraction(1, 2),
    Fraction(0),
    Fraction(3, 4),
    Fraction(0),
    Fraction(15, 8),
    Fraction(0),
    Fraction(105, 16),
    Fraction(0),
]


def test_build_monic_sequence_hermite_rows():
    polys = P.build_monic_sequence(hermite_rc(), 4)
    assert len(polys) == 5
    for n, expected in enumerate(HERMITE_ROWS):
        got = polys[n].coeffs
        assert len(got) == n + 1
        for c_got, c_exp in zip(got, expected):
            assert abs(c_got - c_exp) <= 1e-14


def test_evaluate_is_horner_on_coeffs():
    poly = P.MonicPolynomial((3.0, 0.0, -6.0, 0.0, 1.0))
    for x in (-1.5, 0.0, 0.25, 2.0):
        expected = x**4 - 6 * x**2 + 3
        assert abs(P.evaluate(poly, x) - expected) <= 1e-12 * (1 + abs(expected))


def test_evaluate_accepts_exact_scalars():
    poly = P.MonicPolynomial((Fraction(3, 4), Fraction(0), Fraction(-3), Fraction(0), Fraction(1)))
    assert P.evaluate(poly, Fraction(1, 2)) == Fraction(3, 4) - Fraction(3, 4) + Fraction(1, 16)


def test_rescale_matches_affine_change_of_variable():
    # With scale (rho, sigma), the rescaled recurrence generates
    # q_n(x) = rho^n * p_n(x / rho - sigma).
    rc = F.recurrence_coeffs(F.FamilyInstance("Laguerre", {"alpha": 0.5}))
    scale = P.AffineScale(2.0, -0.3)
    rc2 = P.rescale_coeffs(rc, scale)
    ps = P.build_monic_sequence(rc, 4)
    qs = P.build_monic_sequence(rc2, 4)
    for n in range(5):
        for x in (-0.4, 0.7, 1.9):
            lhs = P.evaluate(qs[n], x)
            rhs = (2.0**n) * P.evaluate(ps[n], x / 2.0 + 0.3)
            assert abs(lhs - rhs) <= 1e-11 * (1 + abs(rhs))


def test_rescale_coefficient_form():
    rc = F.recurrence_coeffs(F.FamilyInstance("Laguerre", {"alpha": 0.5}))
    scale = P.AffineScale(3.0, 0.25)
    rc2 = P.rescale_coeffs(rc, scale)
    for n in range(6):
        assert abs(rc2.B(n) - 3.0 * (rc.B(n) + 0.25)) <= 1e-13
        if n >= 1:
            assert abs(rc2.C(n) - 9.0 * rc.C(n)) <= 1e-13


def test_unrescale_inverts_rescale():
    rc = F.recurrence_coeffs(F.FamilyInstance("Jacobi", {"alpha": 0.5, "beta": 2.0}))
    scale = P.AffineScale(0.7, 1.3)
    back = P.unrescale_coeffs(P.rescale_coeffs(rc, scale), scale)
    for n in range(8):
        assert abs(back.B(n) - rc.B(n)) <= 1e-13
        if n >= 1:
            assert abs(back.C(n) - rc.C(n)) <= 1e-13


def test_polys_from_moments_matches_recurrence_route():
    from_moments = P.polys_from_moments(HERMITE_MOMENTS, 4)
    from_rc = P.build_monic_sequence(hermite_rc(), 4)
    for n in range(5):
        for a, b in zip(from_moments[n].coeffs, from_rc[n].coeffs):
            assert abs(a - b) <= 1e-12


def test_polys_from_moments_exact_input_stays_exact():
    polys = P.polys_from_moments(HERMITE_MOMENTS, 4)
    assert polys[4].coeffs[0] == pytest.approx(0.75, abs=1e-15)


def test_hankel_determinant_small_orders():
    assert P.hankel_determinant(HERMITE_MOMENTS, 1) == 1
    assert P.hankel_determinant(HERMITE_MOMENTS, 2) == Fraction(1, 2)
    # det [[1,0,1/2],[0,1/2,0],[1/2,0,3/4]] = 1/4
    assert P.hankel_determinant(HERMITE_MOMENTS, 3) == Fraction(1, 4)


def test_singular_hankel_raises():
    # Moments of the two-point measure (delta_{-1} + delta_{+1}) / 2: the
    # order-3 Hankel determinant vanishes, so p_3 does not exist.
    moments = [1, 0, 1, 0, 1, 0, 1]
    assert P.hankel_determinant(moments, 3) == 0
    with pytest.raises(SingularHankel):
        P.polys_from_moments(moments, 3)
    # ...but p_2 = x^2 - 1 still does.
    p2 = P.polys_from_moments(moments, 2)[2]
    assert abs(p2.coeffs[0] + 1.0) <= 1e-14
    assert abs(p2.coeffs[1]) <= 1e-14


def test_n_valid_caps_sequence_length():
    rc = P.RecurrenceCoeffs(B=lambda n: 0.0, C=lambda n: 1.0, n_valid=2)
    assert len(P.build_monic_sequence(rc, 2)) == 3
    with pytest.raises(OutOfDomain):
        P.build_monic_sequence(rc, 5)


def test_non_finite_coefficient_raises():
    rc = P.RecurrenceCoeffs(B=lambda n: math.nan, C=lambda n: 1.0, n_valid=math.inf)
    with pytest.raises(NonFiniteCoefficient):
        P.build_monic_sequence(rc, 3)
