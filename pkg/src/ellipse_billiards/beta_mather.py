"""Closed-form Mather beta-function for the elliptic billiard, the Lazutkin
parameter, and the identity beta(rho) = L + rho * |caustic|.

Sign convention: beta is the positive perimeter-per-vertex of the Poncelet
polygons tangent to the caustic (the classical Mather beta-function is its
negative).  Throughout, phi = arcsin(sqrt(lambda)/b) and k = 1/f.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .conics import CausticParam, Ellipse, caustic_from_lambda, caustic_perimeter
from .elliptic import (ellint_E_from_s2, ellint_Ecomp_from_kp2, ellint_F_from_s2,
                       ellint_K_from_kp2)
from .errors import DomainError
from .rotation_measure import lambda_from_rho, rotation_number

_HALF_PI = math.pi / 2.0


@dataclass(frozen=True, slots=True)
class BetaEvaluation:
    """Bundle of quantities attached to one rotation number."""

    rho: float
    lam: float
    beta: float
    lazutkin: float
    caustic_perimeter: float
    phi: float
    k: float


def _phi_of(ellipse: Ellipse, caustic: CausticParam) -> float:
    return math.asin(min(math.sqrt(caustic.lam) / ellipse.b, 1.0))


def _amp_s2(ellipse: Ellipse, caustic: CausticParam) -> float:
    """Squared sine of the amplitude, sin^2(phi) = lambda / b^2."""
    return min(caustic.lam / (ellipse.b * ellipse.b), 1.0)


def beta_closed(ellipse: Ellipse, caustic: CausticParam) -> float:
    """Value of the beta-function through eccentricities:
    beta = 2 c e sqrt(e^2 - f^2) / sqrt(e^2 - 1)
           - (2 c f / K(k)) [K(k) E(phi, k) - E(k) F(phi, k)].

    The leading term equals 2 a sqrt(lambda) / b.
    """
    c = ellipse.c
    e = ellipse.e
    f = caustic.f
    s2 = _amp_s2(ellipse, caustic)
    big_k = ellint_K_from_kp2(caustic.kp2)
    lead = 2.0 * c * e * math.sqrt(e * e - f * f) / math.sqrt(e * e - 1.0)
    bracket = (big_k * ellint_E_from_s2(s2, caustic.kp2)
               - ellint_Ecomp_from_kp2(caustic.kp2) * ellint_F_from_s2(s2, caustic.kp2))
    return lead - 2.0 * c * f * bracket / big_k


def beta_geometric(ellipse: Ellipse, caustic: CausticParam) -> float:
    """Equivalent geometric form
    beta = 2 a sqrt(lambda)/b - 2 sqrt(a^2 - lambda) E(phi, k) + rho |E_lambda|,
    i.e. the Lazutkin parameter plus rho times the caustic perimeter.
    """
    rho = rotation_number(ellipse, caustic)
    return lazutkin_param(ellipse, caustic) + rho * caustic_perimeter(ellipse, caustic)


def lazutkin_param(ellipse: Ellipse, caustic: CausticParam) -> float:
    """Lazutkin parameter of the caustic,
    L = 2 a sqrt(lambda)/b - 2 sqrt(a^2 - lambda) E(phi, k);
    geometrically |PX| + |PY| - arc(XY) for the two tangency points X, Y seen
    from any boundary point P."""
    lam = caustic.lam
    amp = ellint_E_from_s2(_amp_s2(ellipse, caustic), caustic.kp2)
    return (2.0 * ellipse.a * math.sqrt(lam) / ellipse.b
            - 2.0 * math.sqrt(ellipse.a * ellipse.a - lam) * amp)


def beta_of_rho(ellipse: Ellipse, rho: float) -> BetaEvaluation:
    """Full evaluation bundle for a rotation number in (0, 1/2].

    rho = 1/2 is returned as the analytic limit (the caustic degenerates to
    the focal segment): beta = 2a, lambda = b^2, L = 2a - 2c, |E_lambda| = 4c.
    """
    if rho == 0.5:
        lam = ellipse.b * ellipse.b
        four_c = 4.0 * ellipse.c
        return BetaEvaluation(rho=0.5, lam=lam, beta=2.0 * ellipse.a,
                              lazutkin=2.0 * ellipse.a - 2.0 * ellipse.c,
                              caustic_perimeter=four_c, phi=_HALF_PI, k=1.0)
    if not 0.0 < rho < 0.5:
        raise DomainError(f"rho must lie in (0, 1/2], got {rho}")
    caustic = lambda_from_rho(ellipse, rho)
    beta = beta_closed(ellipse, caustic)
    return BetaEvaluation(rho=rho, lam=caustic.lam, beta=beta,
                          lazutkin=lazutkin_param(ellipse, caustic),
                          caustic_perimeter=caustic_perimeter(ellipse, caustic),
                          phi=_phi_of(ellipse, caustic), k=caustic.k)


def beta_of_lambda(ellipse: Ellipse, lam: float) -> BetaEvaluation:
    """Evaluation bundle keyed by the caustic parameter instead of rho."""
    caustic = caustic_from_lambda(ellipse, lam)
    return BetaEvaluation(rho=rotation_number(ellipse, caustic), lam=lam,
                          beta=beta_closed(ellipse, caustic),
                          lazutkin=lazutkin_param(ellipse, caustic),
                          caustic_perimeter=caustic_perimeter(ellipse, caustic),
                          phi=_phi_of(ellipse, caustic), k=caustic.k)
