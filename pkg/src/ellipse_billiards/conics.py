"""Ellipse geometry: support function, boundary parametrized by the outer
normal angle, and the confocal family of elliptic caustics.

Eccentricities follow the focal convention e = a/c > 1 for the table and
f = sqrt(a^2 - lambda)/c > 1 for a caustic; the elliptic modulus is k = 1/f.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .elliptic import ellint_Ecomp, ellint_Ecomp_from_kp2
from .errors import DomainError

# Relative guard excluding the endpoints of the caustic interval (0, b^2),
# where d and k degenerate to 0/0.
LAMBDA_GUARD = 1e-12


@dataclass(frozen=True, slots=True)
class Ellipse:
    """Billiard table x^2/a^2 + y^2/b^2 = 1 with a > b > 0.

    Circles are rejected: every eccentricity-based formula in the package
    divides by c = sqrt(a^2 - b^2).
    """

    a: float
    b: float

    def __post_init__(self):
        if not (self.a > self.b > 0.0):
            raise DomainError(f"ellipse requires a > b > 0, got a={self.a}, b={self.b}")

    @property
    def c(self) -> float:
        """Focal half-distance sqrt(a^2 - b^2)."""
        return math.sqrt(self.a * self.a - self.b * self.b)

    @property
    def e(self) -> float:
        """Focal eccentricity a/c > 1."""
        return self.a / self.c


@dataclass(frozen=True, slots=True)
class CausticParam:
    """Confocal elliptic caustic E_lambda with its derived invariants.

    lam: Jacobi-Chasles parameter in (0, b^2)
    f:   caustic eccentricity sqrt(a^2 - lam)/c > 1
    k:   elliptic modulus 1/f in (0, 1)
    J:   Joachimsthal value sqrt(lam)/(a b)
    d:   reduction parameter (f^2 - 1) e^2 / (e^2 - f^2) > 0
    kp2: complementary modulus squared 1 - k^2 = (b^2-lam)/(a^2-lam), carried
         separately because forming it from k loses everything as k -> 1
    """

    lam: float
    f: float
    k: float
    J: float
    d: float
    kp2: float


def support(ellipse: Ellipse, psi: float) -> float:
    """Support function h(psi) = sqrt(a^2 cos^2 psi + b^2 sin^2 psi)."""
    cp, sp = math.cos(psi), math.sin(psi)
    return math.sqrt(ellipse.a * ellipse.a * cp * cp + ellipse.b * ellipse.b * sp * sp)


def support_deriv(ellipse: Ellipse, psi: float) -> float:
    """Analytic derivative h'(psi) = (b^2 - a^2) sin(psi) cos(psi) / h(psi)."""
    cp, sp = math.cos(psi), math.sin(psi)
    h = math.sqrt(ellipse.a * ellipse.a * cp * cp + ellipse.b * ellipse.b * sp * sp)
    return (ellipse.b * ellipse.b - ellipse.a * ellipse.a) * sp * cp / h


def boundary_point(ellipse: Ellipse, psi: float) -> tuple[float, float]:
    """Boundary point whose outer normal has direction psi:
    gamma(psi) = h(psi) (cos psi, sin psi) + h'(psi) (-sin psi, cos psi).
    """
    cp, sp = math.cos(psi), math.sin(psi)
    h = math.sqrt(ellipse.a * ellipse.a * cp * cp + ellipse.b * ellipse.b * sp * sp)
    hp = (ellipse.b * ellipse.b - ellipse.a * ellipse.a) * sp * cp / h
    return (h * cp - hp * sp, h * sp + hp * cp)


def caustic_from_lambda(ellipse: Ellipse, lam: float) -> CausticParam:
    """Construct the confocal caustic for a Jacobi-Chasles parameter
    lam in (0, b^2); hyperbolic caustics (lam >= b^2) are unsupported.
    """
    b2 = ellipse.b * ellipse.b
    eps = LAMBDA_GUARD * b2
    if not eps <= lam <= b2 - eps:
        raise DomainError(
            f"lambda must lie in (0, b^2) = (0, {b2}) away from the endpoints "
            f"by {eps:.3e}; got {lam} (hyperbolic caustics unsupported)")
    c = ellipse.c
    a2_lam = ellipse.a * ellipse.a - lam
    b2_lam = b2 - lam            # exact for lam in [b^2/2, b^2] (Sterbenz)
    f = math.sqrt(a2_lam) / c
    k = c / math.sqrt(a2_lam)
    J = math.sqrt(lam) / (ellipse.a * ellipse.b)
    d = b2_lam * ellipse.a * ellipse.a / (c * c * lam)
    return CausticParam(lam=lam, f=f, k=k, J=J, d=d, kp2=b2_lam / a2_lam)


def caustic_semi_axes(ellipse: Ellipse, caustic: CausticParam) -> tuple[float, float]:
    """Semi-axes (sqrt(a^2 - lam), sqrt(b^2 - lam)) of the caustic ellipse."""
    return (math.sqrt(ellipse.a * ellipse.a - caustic.lam),
            math.sqrt(ellipse.b * ellipse.b - caustic.lam))


def caustic_support(ellipse: Ellipse, caustic: CausticParam, phi: float) -> float:
    """Support function of the caustic ellipse at normal direction phi."""
    amaj, bmin = caustic_semi_axes(ellipse, caustic)
    cp, sp = math.cos(phi), math.sin(phi)
    return math.sqrt(amaj * amaj * cp * cp + bmin * bmin * sp * sp)


def caustic_point(ellipse: Ellipse, caustic: CausticParam, phi: float) -> tuple[float, float]:
    """Point of the caustic whose outer normal has direction phi."""
    amaj, bmin = caustic_semi_axes(ellipse, caustic)
    cp, sp = math.cos(phi), math.sin(phi)
    h = math.sqrt(amaj * amaj * cp * cp + bmin * bmin * sp * sp)
    hp = (bmin * bmin - amaj * amaj) * sp * cp / h
    return (h * cp - hp * sp, h * sp + hp * cp)


def caustic_perimeter(ellipse: Ellipse, caustic: CausticParam) -> float:
    """Perimeter of the caustic, 4 sqrt(a^2 - lam) E(k)."""
    return (4.0 * math.sqrt(ellipse.a * ellipse.a - caustic.lam)
            * ellint_Ecomp_from_kp2(caustic.kp2))


def circumference(ellipse: Ellipse) -> float:
    """Perimeter of the table itself, 4 a E(c/a)."""
    return 4.0 * ellipse.a * ellint_Ecomp(ellipse.c / ellipse.a)
