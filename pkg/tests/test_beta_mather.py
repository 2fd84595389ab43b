"""Beta-function closed forms, the Lazutkin parameter, and their identities."""

import math
import random

import pytest
from scipy.optimize import brentq

from ellipse_billiards.beta_mather import (beta_closed, beta_geometric,
                                           beta_of_lambda, beta_of_rho,
                                           lazutkin_param)
from ellipse_billiards.conics import (Ellipse, boundary_point,
                                      caustic_from_lambda, caustic_perimeter,
                                      caustic_point, caustic_semi_axes,
                                      caustic_support)
from ellipse_billiards.errors import DomainError
from ellipse_billiards.rotation_measure import rotation_number

from oracles import ellipse_arc_length

TWO_PI = 2.0 * math.pi
TABLE = Ellipse(2.0, 1.0)
SQRT5 = math.sqrt(5.0)


def test_beta_square_orbit_anchor():
    ca = caustic_from_lambda(TABLE, 0.8)
    assert beta_closed(TABLE, ca) == pytest.approx(SQRT5, rel=1e-13)
    assert beta_geometric(TABLE, ca) == pytest.approx(SQRT5, rel=1e-13)


def test_beta_limits():
    # lambda -> 0: beta -> 0
    tiny = caustic_from_lambda(TABLE, 1e-12)
    assert 0.0 < beta_closed(TABLE, tiny) < 1e-5
    # lambda -> b^2: beta -> 2a, but only at the logarithmic rate of rho ->
    # 1/2: the gap obeys beta = 2a - 2c (1 - 2 rho) + O(b^2 - lambda).
    for expo in (9, 11):
        lam = (1.0 - 10.0 ** -expo) * TABLE.b ** 2
        ca = caustic_from_lambda(TABLE, lam)
        rho = rotation_number(TABLE, ca)
        predicted = 2.0 * TABLE.a - 2.0 * TABLE.c * (1.0 - 2.0 * rho)
        assert beta_closed(TABLE, ca) == pytest.approx(predicted, abs=1e-6)
        assert beta_closed(TABLE, ca) < 2.0 * TABLE.a


def test_dual_formula_equivalence_on_grid():
    b2 = TABLE.b ** 2
    for i in range(200):
        lam = b2 * (0.01 + 0.98 * i / 199.0)
        ca = caustic_from_lambda(TABLE, lam)
        v1 = beta_closed(TABLE, ca)
        v2 = beta_geometric(TABLE, ca)
        assert abs(v1 - v2) <= 1e-11 * abs(v1)


def test_siburg_identity_on_grid():
    b2 = TABLE.b ** 2
    for i in range(200):
        lam = b2 * (0.01 + 0.98 * i / 199.0)
        ca = caustic_from_lambda(TABLE, lam)
        lhs = beta_closed(TABLE, ca)
        rhs = (lazutkin_param(TABLE, ca)
               + rotation_number(TABLE, ca) * caustic_perimeter(TABLE, ca))
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))


def test_lazutkin_square_anchor():
    ca = caustic_from_lambda(TABLE, 0.8)
    expected = SQRT5 - 0.25 * caustic_perimeter(TABLE, ca)
    assert lazutkin_param(TABLE, ca) == pytest.approx(expected, rel=1e-12)


def test_lazutkin_vanishes_with_caustic():
    assert lazutkin_param(TABLE, caustic_from_lambda(TABLE, 1e-12)) == pytest.approx(
        0.0, abs=1e-7)


def _tangent_normal_angles(table, caustic, psi0):
    """Normal angles of the outgoing and incoming tangent lines through the
    boundary point at psi0 (roots of P.n(phi) = h_caustic(phi))."""
    px, py = boundary_point(table, psi0)

    def gap(phi):
        return px * math.cos(phi) + py * math.sin(phi) - caustic_support(table, caustic, phi)

    phi_out = brentq(gap, psi0, psi0 + math.pi, xtol=1e-14)
    phi_in = brentq(gap, psi0 - math.pi, psi0, xtol=1e-14)
    return phi_in, phi_out


def geometric_lazutkin(table, caustic, psi0):
    """|PX| + |PY| - arc(YX) built from the tangent-line geometry alone."""
    px, py = boundary_point(table, psi0)
    phi_in, phi_out = _tangent_normal_angles(table, caustic, psi0)
    xx, xy = caustic_point(table, caustic, phi_out)
    yx, yy = caustic_point(table, caustic, phi_in)
    amaj, bmin = caustic_semi_axes(table, caustic)
    arc = ellipse_arc_length(amaj, bmin, phi_in, phi_out)
    return math.hypot(xx - px, xy - py) + math.hypot(yx - px, yy - py) - arc


def test_lazutkin_matches_tangent_construction():
    ca = caustic_from_lambda(TABLE, 0.8)
    closed_form = lazutkin_param(TABLE, ca)
    rng = random.Random(83)
    for _ in range(25):
        psi0 = rng.uniform(0.0, TWO_PI)
        assert geometric_lazutkin(TABLE, ca, psi0) == pytest.approx(
            closed_form, abs=1e-9)


def test_lazutkin_point_independence():
    # spread of the geometric value across boundary points
    ca = caustic_from_lambda(TABLE, 0.37)
    rng = random.Random(89)
    values = [geometric_lazutkin(TABLE, ca, rng.uniform(0.0, TWO_PI))
              for _ in range(40)]
    assert (max(values) - min(values)) / values[0] < 1e-8


def test_beta_of_rho_square():
    ev = beta_of_rho(TABLE, 0.25)
    assert ev.beta == pytest.approx(SQRT5, rel=1e-12)
    assert ev.lam == pytest.approx(0.8, abs=1e-11)
    assert ev.phi == pytest.approx(math.asin(math.sqrt(0.8)), rel=1e-10)
    assert ev.beta == pytest.approx(ev.lazutkin + ev.rho * ev.caustic_perimeter, rel=1e-12)


def test_beta_of_rho_half_is_diameter_limit():
    ev = beta_of_rho(TABLE, 0.5)
    assert ev.beta == 2.0 * TABLE.a
    assert ev.lam == TABLE.b ** 2
    assert ev.caustic_perimeter == pytest.approx(4.0 * TABLE.c, rel=1e-15)
    assert ev.lazutkin == pytest.approx(2.0 * TABLE.a - 2.0 * TABLE.c, rel=1e-15)
    assert ev.k == 1.0 and ev.phi == pytest.approx(math.pi / 2.0)
    # Siburg identity holds at the limit as well
    assert ev.beta == pytest.approx(ev.lazutkin + 0.5 * ev.caustic_perimeter, rel=1e-15)


def test_beta_of_rho_domain():
    for bad in (-0.2, 0.0, 0.51, 1.0):
        with pytest.raises(DomainError):
            beta_of_rho(TABLE, bad)


def test_beta_monotone_in_rho():
    # dense grid up to 0.42 (the lambda-representation ceiling for the
    # inversion is around 0.43), then the exact rho = 1/2 limit on top
    rhos = [0.02 + 0.40 * i / 60.0 for i in range(61)]
    betas = [beta_of_rho(TABLE, r).beta for r in rhos]
    betas.append(beta_of_rho(TABLE, 0.5).beta)
    assert all(b2 > b1 for b1, b2 in zip(betas, betas[1:]))


def test_beta_of_lambda_matches_beta_of_rho():
    ev_lam = beta_of_lambda(TABLE, 0.8)
    ev_rho = beta_of_rho(TABLE, 0.25)
    assert ev_lam.rho == pytest.approx(0.25, abs=1e-13)
    assert ev_lam.beta == pytest.approx(ev_rho.beta, rel=1e-11)
