"""Invariant (Gelfand-Leray) measure on an invariant curve and the closed-form
rotation number, with the monotone inversion lambda <-> rho.

The measure of a boundary arc [0, psi] on the invariant curve of the caustic
E_lambda is (1/(c f)) F(varphi, 1/f), where
sin^2(varphi) = (d+1) sin^2(psi) / (sin^2(psi) + d); the whole curve has
measure U = (4/(c f)) K(1/f).  The rotation number is
rho = F(arcsin(sqrt(lambda)/b), 1/f) / (2 K(1/f)).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from scipy.integrate import IntegrationWarning, quad
from scipy.optimize import brentq

from .conics import LAMBDA_GUARD, CausticParam, Ellipse, caustic_from_lambda, support
from .elliptic import ellint_F_from_s2, ellint_K_from_kp2
from .errors import DomainError, NumericError

_HALF_PI = math.pi / 2.0


@dataclass(frozen=True, slots=True)
class MeasureChart:
    """A caustic together with the invariant measure of its whole curve."""

    caustic: CausticParam
    total_U: float


def _chart_s2(psi: float, d: float) -> float:
    """Squared sine of the chart amplitude varphi(psi) on [0, pi/2]:
    sin^2(varphi) = (d+1) sin^2(psi) / (sin^2(psi) + d), regular at pi/2."""
    s2 = math.sin(psi) ** 2
    return min((d + 1.0) * s2 / (s2 + d), 1.0)


def mu_arc(ellipse: Ellipse, caustic: CausticParam, psi: float) -> float:
    """Invariant measure of the arc [0, psi] for psi in [0, pi/2]."""
    if not -1e-12 <= psi <= _HALF_PI + 1e-12:
        raise DomainError(f"mu_arc chart covers [0, pi/2]; got psi={psi} "
                          "(use mu_cumulative for other arguments)")
    psi = min(max(psi, 0.0), _HALF_PI)
    s2 = _chart_s2(psi, caustic.d)
    return ellint_F_from_s2(s2, caustic.kp2) / (ellipse.c * caustic.f)


def total_measure(ellipse: Ellipse, caustic: CausticParam) -> MeasureChart:
    """Measure of the whole invariant curve, U = (4/(c f)) K(1/f).

    U diverges logarithmically as lambda -> b^2 (k -> 1); that endpoint is
    already excluded by the caustic-domain guard.
    """
    total = 4.0 * ellint_K_from_kp2(caustic.kp2) / (ellipse.c * caustic.f)
    return MeasureChart(caustic=caustic, total_U=total)


def mu_cumulative(ellipse: Ellipse, caustic: CausticParam, psi: float) -> float:
    """Cumulative measure M(psi) = mu([0, psi]) for any real psi, extended by
    the symmetries of the density (even, pi-periodic in psi):
    M(psi + pi) = M(psi) + U/2 and M(-psi) = -M(psi).
    """
    u_half = 2.0 * ellint_K_from_kp2(caustic.kp2) / (ellipse.c * caustic.f)
    n = math.floor(psi / math.pi)
    r = psi - n * math.pi
    if r <= _HALF_PI:
        val = mu_arc(ellipse, caustic, r)
    else:
        val = u_half - mu_arc(ellipse, caustic, math.pi - r)
    return n * u_half + val


def rotation_number(ellipse: Ellipse, caustic: CausticParam) -> float:
    """Closed-form rotation number rho = F(phi, k) / (2 K(k)) with
    phi = arcsin(sqrt(lambda)/b), k = 1/f; strictly increasing in lambda,
    with values in (0, 1/2)."""
    s2 = min(caustic.lam / (ellipse.b * ellipse.b), 1.0)
    return ellint_F_from_s2(s2, caustic.kp2) / (2.0 * ellint_K_from_kp2(caustic.kp2))


def rotation_number_quadrature(ellipse: Ellipse, caustic: CausticParam) -> float:
    """Rotation number by adaptive quadrature of the arcsin integral
    rho = (4/(pi U)) int_0^{pi/2} arcsin(J h) / (h sqrt(1 - J^2 h^2)) dpsi,
    an independent path that does not reduce to elliptic integrals.
    """
    j = caustic.J

    def integrand(psi: float) -> float:
        h = support(ellipse, psi)
        jh = j * h
        return math.asin(jh) / (h * math.sqrt(1.0 - jh * jh))

    with warnings.catch_warnings():
        # The tolerance is tighter than QUADPACK certifies; abserr is checked.
        warnings.simplefilter("ignore", IntegrationWarning)
        value, abserr = quad(integrand, 0.0, _HALF_PI, epsabs=1e-13, epsrel=1e-13,
                             limit=200)
    total = total_measure(ellipse, caustic).total_U
    rho = 4.0 * value / (math.pi * total)
    if abserr > 1e-9 * max(value, 1.0):
        raise NumericError(
            f"rotation-number quadrature did not converge (abserr={abserr:.3e})",
            achieved_tolerance=abserr)
    return rho


def lambda_from_rho(ellipse: Ellipse, rho: float) -> CausticParam:
    """Invert the strictly monotone map lambda -> rho(lambda) on the guarded
    interval (eps, b^2 - eps).

    The guard bounds the attainable rotation numbers: rho(b^2 - eps) is about
    0.46 for moderately eccentric tables because rho -> 1/2 only at a
    logarithmic rate; requests beyond the attainable range raise DomainError.

    The result matches rho to 1e-12 or to the one-ulp resolution of the
    lambda grid, whichever is larger (d rho/d lambda diverges at b^2, so
    sufficiently large rho cannot be hit to 1e-12 by any representable
    lambda); a genuine solver miss raises NumericError.
    """
    if not 0.0 < rho < 0.5:
        raise DomainError(f"rho must lie in (0, 1/2), got {rho}")
    b2 = ellipse.b * ellipse.b
    eps = LAMBDA_GUARD * b2

    # Solve in the logit variable w = log(lam / (b^2 - lam)): rho(w) has a
    # bounded derivative on the whole guarded interval, whereas d rho/d lam
    # diverges at the b^2 end.
    def lam_of(w: float) -> float:
        if w >= 0.0:
            lam = b2 / (1.0 + math.exp(-w))
        else:
            t = math.exp(w)
            lam = b2 * t / (1.0 + t)
        return min(max(lam, eps), b2 - eps)

    def delta_rho(w: float) -> float:
        return rotation_number(ellipse, caustic_from_lambda(ellipse, lam_of(w))) - rho

    w_max = math.log((b2 - eps) / eps)
    f_lo, f_hi = delta_rho(-w_max), delta_rho(w_max)
    if f_lo > 0.0 or f_hi < 0.0:
        raise DomainError(
            f"rho={rho} outside the attainable range "
            f"({f_lo + rho:.3e}, {f_hi + rho:.6f}) of the guarded caustic interval")
    w = brentq(delta_rho, -w_max, w_max, xtol=1e-13, rtol=8.9e-16, maxiter=200)

    def miss(lam: float) -> float:
        return abs(rotation_number(ellipse, caustic_from_lambda(ellipse, lam)) - rho)

    # Take the best of the solver's lambda and its representable neighbours,
    # and measure the local resolution of the lambda grid.
    lam = lam_of(w)
    candidates = sorted({lam, math.nextafter(lam, 0.0), math.nextafter(lam, b2)})
    candidates = [x for x in candidates if eps <= x <= b2 - eps]
    best = min(candidates, key=miss)
    one_ulp_gap = abs(
        rotation_number(ellipse, caustic_from_lambda(ellipse, candidates[-1]))
        - rotation_number(ellipse, caustic_from_lambda(ellipse, candidates[0])))
    achieved = miss(best)
    if achieved > max(1e-12, one_ulp_gap):
        raise NumericError(
            f"lambda_from_rho missed the target beyond the lambda-grid "
            f"resolution: |drho|={achieved:.3e}, grid gap {one_ulp_gap:.3e}",
            achieved_tolerance=achieved)
    return caustic_from_lambda(ellipse, best)
