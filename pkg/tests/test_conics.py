"""Ellipse geometry and the confocal caustic family."""

import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ellipse_billiards.conics import (CausticParam, Ellipse, boundary_point,
                                      caustic_from_lambda, caustic_perimeter,
                                      caustic_point, caustic_support,
                                      circumference, support, support_deriv)
from ellipse_billiards.errors import DomainError

from oracles import central_diff, ellipse_perimeter_param

TABLE = Ellipse(2.0, 1.0)

ellipses = st.builds(
    lambda a, ratio: Ellipse(a, a * ratio),
    st.floats(0.5, 5.0), st.floats(0.1, 0.95))


def test_ellipse_invariants():
    assert TABLE.c == pytest.approx(math.sqrt(3.0), rel=1e-15)
    assert TABLE.e == pytest.approx(2.0 / math.sqrt(3.0), rel=1e-15)
    with pytest.raises(DomainError):
        Ellipse(1.0, 1.0)    # circles rejected: c = 0 poisons every formula
    with pytest.raises(DomainError):
        Ellipse(1.0, 2.0)
    with pytest.raises(DomainError):
        Ellipse(1.0, 0.0)


def test_support_anchors():
    assert support(TABLE, 0.0) == pytest.approx(2.0, abs=1e-15)
    assert support(TABLE, math.pi / 2.0) == pytest.approx(1.0, abs=1e-15)
    assert support(TABLE, math.pi / 4.0) == pytest.approx(math.sqrt(2.5), rel=1e-15)


@settings(max_examples=200, deadline=None)
@given(psi=st.floats(-10.0, 10.0))
def test_support_symmetries(psi):
    h = support(TABLE, psi)
    assert TABLE.b <= h <= TABLE.a + 1e-12
    assert support(TABLE, -psi) == pytest.approx(h, rel=1e-12)
    assert support(TABLE, math.pi - psi) == pytest.approx(h, rel=1e-12)


@settings(max_examples=100, deadline=None)
@given(psi=st.floats(-7.0, 7.0), ellipse=ellipses)
def test_support_deriv_matches_finite_differences(psi, ellipse):
    analytic = support_deriv(ellipse, psi)
    numeric = central_diff(lambda t: support(ellipse, t), psi)
    assert analytic == pytest.approx(numeric, abs=1e-7 * ellipse.a)


def test_boundary_point_anchors():
    assert boundary_point(TABLE, 0.0) == pytest.approx((2.0, 0.0), abs=1e-15)
    assert boundary_point(TABLE, math.pi / 2.0) == pytest.approx((0.0, 1.0), abs=1e-15)


@settings(max_examples=250, deadline=None)
@given(psi=st.floats(-10.0, 10.0), ellipse=ellipses)
def test_boundary_point_on_ellipse_with_normal_psi(psi, ellipse):
    x, y = boundary_point(ellipse, psi)
    residual = x * x / ellipse.a ** 2 + y * y / ellipse.b ** 2 - 1.0
    assert abs(residual) < 1e-12
    # outward normal direction at (x, y) is psi
    normal = math.atan2(y / ellipse.b ** 2, x / ellipse.a ** 2)
    mismatch = math.remainder(normal - psi, 2.0 * math.pi)
    assert abs(mismatch) < 1e-12


def test_caustic_from_lambda_anchors():
    ca = caustic_from_lambda(TABLE, 0.8)
    assert ca.J == pytest.approx(math.sqrt(0.8) / 2.0, rel=1e-14)
    assert ca.f == pytest.approx(math.sqrt(3.2 / 3.0), rel=1e-14)
    assert ca.k == pytest.approx(1.0 / math.sqrt(3.2 / 3.0), rel=1e-14)
    assert ca.d == pytest.approx(1.0 / 3.0, rel=1e-12)
    assert ca.f > 1.0 and 0.0 < ca.k < 1.0 and ca.d > 0.0


def test_caustic_consistency_relations():
    # lambda = c^2 (e^2 - f^2), d = (b^2 - lambda) e^2 / lambda, J f e relations
    rng = random.Random(42)
    for _ in range(50):
        lam = rng.uniform(0.01, 0.99) * TABLE.b ** 2
        ca = caustic_from_lambda(TABLE, lam)
        c, e = TABLE.c, TABLE.e
        assert c * c * (e * e - ca.f ** 2) == pytest.approx(lam, rel=1e-12)
        assert ca.d == pytest.approx((TABLE.b ** 2 - lam) * e * e / lam, rel=1e-10)
        assert ca.J == pytest.approx(
            math.sqrt(e * e - ca.f ** 2) / (c * e * math.sqrt(e * e - 1.0)), rel=1e-12)


def test_caustic_lambda_near_zero_limits():
    ca = caustic_from_lambda(TABLE, 1e-10)
    assert ca.f == pytest.approx(TABLE.e, rel=1e-9)
    assert ca.k == pytest.approx(1.0 / TABLE.e, rel=1e-9)
    assert ca.J == pytest.approx(0.0, abs=1e-5)


def test_caustic_round_trip_through_J():
    rng = random.Random(7)
    for _ in range(200):
        lam = rng.uniform(1e-6, 1.0 - 1e-6) * TABLE.b ** 2
        ca = caustic_from_lambda(TABLE, lam)
        assert (TABLE.a * TABLE.b * ca.J) ** 2 == pytest.approx(lam, rel=1e-13)


def test_caustic_domain_errors():
    b2 = TABLE.b ** 2
    for bad in (-0.1, 0.0, b2, 1.5 * b2):
        with pytest.raises(DomainError):
            caustic_from_lambda(TABLE, bad)


def test_caustic_perimeter_limits_and_oracle():
    # lambda -> 0: the boundary itself
    ca = caustic_from_lambda(TABLE, 1e-10)
    boundary = ellipse_perimeter_param(2.0, 1.0)
    assert boundary == pytest.approx(9.6884482, abs=1e-6)
    assert caustic_perimeter(TABLE, ca) == pytest.approx(boundary, abs=1e-7)
    # lambda -> b^2: twice the focal distance
    ca = caustic_from_lambda(TABLE, (1.0 - 1e-10) * TABLE.b ** 2)
    assert caustic_perimeter(TABLE, ca) == pytest.approx(4.0 * math.sqrt(3.0), abs=1e-6)
    # interior value against the arc-length quadrature
    ca = caustic_from_lambda(TABLE, 0.8)
    assert caustic_perimeter(TABLE, ca) == pytest.approx(
        ellipse_perimeter_param(math.sqrt(3.2), math.sqrt(0.2)), rel=1e-10)


def test_caustic_perimeter_strictly_decreasing():
    lams = [TABLE.b ** 2 * i / 101.0 for i in range(1, 101)]
    values = [caustic_perimeter(TABLE, caustic_from_lambda(TABLE, lam)) for lam in lams]
    assert all(v2 < v1 for v1, v2 in zip(values, values[1:]))


def test_caustic_point_lies_on_caustic_with_right_normal():
    ca = caustic_from_lambda(TABLE, 0.8)
    rng = random.Random(3)
    for _ in range(50):
        phi = rng.uniform(-7.0, 7.0)
        x, y = caustic_point(TABLE, ca, phi)
        assert x * x / 3.2 + y * y / 0.2 == pytest.approx(1.0, abs=1e-12)
        assert x * math.cos(phi) + y * math.sin(phi) == pytest.approx(
            caustic_support(TABLE, ca, phi), rel=1e-12)


def test_circumference_matches_quadrature():
    rng = random.Random(11)
    for _ in range(10):
        a = rng.uniform(0.5, 4.0)
        b = a * rng.uniform(0.15, 0.95)
        assert circumference(Ellipse(a, b)) == pytest.approx(
            ellipse_perimeter_param(a, b), rel=1e-11)


def test_caustic_param_is_frozen_value():
    ca = caustic_from_lambda(TABLE, 0.5)
    assert isinstance(ca, CausticParam)
    with pytest.raises(AttributeError):
        ca.lam = 0.6
