"""Legendre elliptic integrals built on Carlson symmetric forms.

All incomplete integrals are restricted to amplitudes phi in [0, pi/2],
which covers every amplitude of the form arcsin(x) with x in [0, 1] that
the rest of the package produces.  Moduli are passed as k (not m = k^2).
"""

from __future__ import annotations

import math

from .errors import DomainError

# Relative truncation target of the duplication series; the iteration halves
# the argument spread twice per step, so a handful of extra rounds buys full
# double precision.
_R_TARGET = 1e-16
_MAX_ITER = 120

_HALF_PI = math.pi / 2.0
# Slack for amplitudes produced as math.asin(...) of a value rounded up to 1.
_PHI_SLACK = 1e-12


def carlson_rf(x: float, y: float, z: float) -> float:
    """Carlson symmetric integral R_F(x, y, z) for nonnegative arguments,
    at most one of them zero."""
    if min(x, y, z) < 0.0 or (x + y) == 0.0 or (y + z) == 0.0 or (x + z) == 0.0:
        raise DomainError("carlson_rf requires nonnegative arguments, at most one zero")
    a0 = (x + y + z) / 3.0
    q = (3.0 * _R_TARGET) ** (-1.0 / 6.0) * max(abs(a0 - x), abs(a0 - y), abs(a0 - z))
    a = a0
    xm, ym, zm = x, y, z
    pow4 = 1.0
    for _ in range(_MAX_ITER):
        if pow4 * q <= abs(a):
            break
        sx, sy, sz = math.sqrt(xm), math.sqrt(ym), math.sqrt(zm)
        lam = sx * sy + sy * sz + sz * sx
        xm = 0.25 * (xm + lam)
        ym = 0.25 * (ym + lam)
        zm = 0.25 * (zm + lam)
        a = 0.25 * (a + lam)
        pow4 *= 0.25
    t = pow4 / a
    big_x = (a0 - x) * t
    big_y = (a0 - y) * t
    big_z = -big_x - big_y
    e2 = big_x * big_y - big_z * big_z
    e3 = big_x * big_y * big_z
    series = 1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0
    return series / math.sqrt(a)


def carlson_rc(x: float, y: float) -> float:
    """Degenerate form R_C(x, y) = R_F(x, y, y), for x >= 0 and y > 0."""
    if x < 0.0 or y <= 0.0:
        raise DomainError("carlson_rc requires x >= 0 and y > 0")
    a0 = (x + 2.0 * y) / 3.0
    q = (3.0 * _R_TARGET) ** (-1.0 / 8.0) * abs(a0 - x)
    a = a0
    xm, ym = x, y
    pow4 = 1.0
    for _ in range(_MAX_ITER):
        if pow4 * q <= abs(a):
            break
        lam = 2.0 * math.sqrt(xm) * math.sqrt(ym) + ym
        xm = 0.25 * (xm + lam)
        ym = 0.25 * (ym + lam)
        a = 0.25 * (a + lam)
        pow4 *= 0.25
    s = (y - a0) * pow4 / a
    series = (1.0 + s * s * (3.0 / 10.0 + s * (1.0 / 7.0 + s * (3.0 / 8.0 + s * (
        9.0 / 22.0 + s * (159.0 / 208.0 + s * 9.0 / 8.0))))))
    return series / math.sqrt(a)


def carlson_rd(x: float, y: float, z: float) -> float:
    """Carlson integral R_D(x, y, z) = R_J(x, y, z, z); z > 0, at most one of
    x, y zero."""
    if min(x, y) < 0.0 or z <= 0.0 or (x + y) == 0.0:
        raise DomainError("carlson_rd requires x, y >= 0 (not both zero) and z > 0")
    a0 = (x + y + 3.0 * z) / 5.0
    q = (0.25 * _R_TARGET) ** (-1.0 / 6.0) * max(abs(a0 - x), abs(a0 - y), abs(a0 - z))
    a = a0
    xm, ym, zm = x, y, z
    pow4 = 1.0
    acc = 0.0
    for _ in range(_MAX_ITER):
        if pow4 * q <= abs(a):
            break
        sx, sy, sz = math.sqrt(xm), math.sqrt(ym), math.sqrt(zm)
        lam = sx * sy + sy * sz + sz * sx
        acc += pow4 / (sz * (zm + lam))
        xm = 0.25 * (xm + lam)
        ym = 0.25 * (ym + lam)
        zm = 0.25 * (zm + lam)
        a = 0.25 * (a + lam)
        pow4 *= 0.25
    t = pow4 / a
    big_x = (a0 - x) * t
    big_y = (a0 - y) * t
    big_z = -(big_x + big_y) / 3.0
    e2 = big_x * big_y - 6.0 * big_z * big_z
    e3 = (3.0 * big_x * big_y - 8.0 * big_z * big_z) * big_z
    e4 = 3.0 * (big_x * big_y - big_z * big_z) * big_z * big_z
    e5 = big_x * big_y * big_z ** 3
    series = (1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0
              - 3.0 * e4 / 22.0 - 9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0)
    return 3.0 * acc + pow4 * series / (a * math.sqrt(a))


def carlson_rj(x: float, y: float, z: float, p: float) -> float:
    """Carlson integral R_J(x, y, z, p) for nonnegative x, y, z (at most one
    zero) and p > 0."""
    if min(x, y, z) < 0.0 or p <= 0.0 or (x + y) == 0.0 or (y + z) == 0.0 or (x + z) == 0.0:
        raise DomainError("carlson_rj requires nonnegative x, y, z (one zero at most) and p > 0")
    a0 = (x + y + z + 2.0 * p) / 5.0
    q = (0.25 * _R_TARGET) ** (-1.0 / 6.0) * max(
        abs(a0 - x), abs(a0 - y), abs(a0 - z), abs(a0 - p))
    delta = (p - x) * (p - y) * (p - z)
    a = a0
    xm, ym, zm, pm = x, y, z, p
    pow4 = 1.0
    acc = 0.0
    for _ in range(_MAX_ITER):
        if pow4 * q <= abs(a):
            break
        sx, sy, sz = math.sqrt(xm), math.sqrt(ym), math.sqrt(zm)
        sp = math.sqrt(pm)
        lam = sx * sy + sy * sz + sz * sx
        dm = (sp + sx) * (sp + sy) * (sp + sz)
        em = delta * pow4 ** 3 / (dm * dm)
        acc += pow4 * carlson_rc(1.0, 1.0 + em) / dm
        xm = 0.25 * (xm + lam)
        ym = 0.25 * (ym + lam)
        zm = 0.25 * (zm + lam)
        pm = 0.25 * (pm + lam)
        a = 0.25 * (a + lam)
        pow4 *= 0.25
    t = pow4 / a
    big_x = (a0 - x) * t
    big_y = (a0 - y) * t
    big_z = (a0 - z) * t
    big_p = -(big_x + big_y + big_z) / 2.0
    e2 = big_x * big_y + big_y * big_z + big_z * big_x - 3.0 * big_p * big_p
    e3 = big_x * big_y * big_z + 2.0 * e2 * big_p + 4.0 * big_p ** 3
    e4 = (2.0 * big_x * big_y * big_z + e2 * big_p + 3.0 * big_p ** 3) * big_p
    e5 = big_x * big_y * big_z * big_p * big_p
    series = (1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0
              - 3.0 * e4 / 22.0 - 9.0 * e2 * e3 / 52.0 + 3.0 * e5 / 26.0)
    return pow4 * series / (a * math.sqrt(a)) + 6.0 * acc


def _check_amplitude(phi: float) -> float:
    if not -_PHI_SLACK <= phi <= _HALF_PI + _PHI_SLACK:
        raise DomainError(f"amplitude must lie in [0, pi/2], got {phi}")
    return min(max(phi, 0.0), _HALF_PI)


def ellint_F(phi: float, k: float) -> float:
    """Incomplete elliptic integral of the first kind,
    F(phi, k) = int_0^phi dt / sqrt(1 - k^2 sin^2 t).

    Requires 0 <= phi <= pi/2 and k*sin(phi) < 1.
    """
    phi = _check_amplitude(phi)
    if k < 0.0:
        raise DomainError("modulus k must be nonnegative")
    s = math.sin(phi)
    ks = k * s
    if ks >= 1.0:
        raise DomainError("F(phi, k) diverges as k*sin(phi) -> 1")
    c = math.cos(phi)
    return s * carlson_rf(c * c, 1.0 - ks * ks, 1.0)


def ellint_E(phi: float, k: float) -> float:
    """Incomplete elliptic integral of the second kind,
    E(phi, k) = int_0^phi sqrt(1 - k^2 sin^2 t) dt, for 0 <= k <= 1.
    """
    phi = _check_amplitude(phi)
    if not 0.0 <= k <= 1.0:
        raise DomainError("modulus k must lie in [0, 1]")
    if k == 1.0:
        return math.sin(phi)
    s = math.sin(phi)
    if s == 0.0:
        return 0.0
    c = math.cos(phi)
    y = 1.0 - (k * s) ** 2
    return s * carlson_rf(c * c, y, 1.0) - (k * k) * s ** 3 * carlson_rd(c * c, y, 1.0) / 3.0


def ellint_K(k: float) -> float:
    """Complete elliptic integral of the first kind, K(k) = F(pi/2, k)."""
    if not 0.0 <= k < 1.0:
        raise DomainError("K(k) requires 0 <= k < 1")
    return carlson_rf(0.0, 1.0 - k * k, 1.0)


def ellint_Ecomp(k: float) -> float:
    """Complete elliptic integral of the second kind, E(k) = E(pi/2, k)."""
    if not 0.0 <= k <= 1.0:
        raise DomainError("E(k) requires 0 <= k <= 1")
    if k == 1.0:
        return 1.0
    y = 1.0 - k * k
    return carlson_rf(0.0, y, 1.0) - (k * k) * carlson_rd(0.0, y, 1.0) / 3.0


def ellint_K_from_kp2(kp2: float) -> float:
    """K(k) parametrized by the complementary modulus squared kp2 = 1 - k^2,
    for callers that can form kp2 without cancellation (k near 1)."""
    if not 0.0 < kp2 <= 1.0:
        raise DomainError("K needs the complement kp2 in (0, 1]")
    return carlson_rf(0.0, kp2, 1.0)


def ellint_Ecomp_from_kp2(kp2: float) -> float:
    """E(k) parametrized by kp2 = 1 - k^2."""
    if not 0.0 <= kp2 <= 1.0:
        raise DomainError("E needs the complement kp2 in [0, 1]")
    if kp2 == 0.0:
        return 1.0
    return carlson_rf(0.0, kp2, 1.0) - (1.0 - kp2) * carlson_rd(0.0, kp2, 1.0) / 3.0


def ellint_F_from_s2(s2: float, kp2: float) -> float:
    """F(arcsin(sqrt(s2)), k) with both the squared sine of the amplitude and
    kp2 = 1 - k^2 supplied directly; 1 - k^2 sin^2 t is assembled as
    cos^2 + kp2 sin^2, which stays accurate for k near 1."""
    if not 0.0 <= s2 <= 1.0:
        raise DomainError("s2 must lie in [0, 1]")
    if not 0.0 <= kp2 <= 1.0:
        raise DomainError("kp2 must lie in [0, 1]")
    c2 = 1.0 - s2
    y = c2 + kp2 * s2
    if y <= 0.0:
        raise DomainError("F diverges as k*sin(phi) -> 1")
    return math.sqrt(s2) * carlson_rf(c2, y, 1.0)


def ellint_E_from_s2(s2: float, kp2: float) -> float:
    """E(arcsin(sqrt(s2)), k) with s2 and kp2 = 1 - k^2 supplied directly."""
    if not 0.0 <= s2 <= 1.0:
        raise DomainError("s2 must lie in [0, 1]")
    if not 0.0 <= kp2 <= 1.0:
        raise DomainError("kp2 must lie in [0, 1]")
    if s2 == 0.0:
        return 0.0
    c2 = 1.0 - s2
    y = c2 + kp2 * s2
    s = math.sqrt(s2)
    if y == 0.0:
        return s
    return s * carlson_rf(c2, y, 1.0) - (1.0 - kp2) * s2 * s * carlson_rd(c2, y, 1.0) / 3.0


def ellint_Pi(alpha2: float, k: float) -> float:
    """Complete elliptic integral of the third kind (circular case),
    Pi(alpha^2, k) = int_0^{pi/2} dt / ((1 - alpha^2 sin^2 t) sqrt(1 - k^2 sin^2 t)),
    for alpha^2 < 1 and 0 <= k < 1.
    """
    if alpha2 >= 1.0:
        raise DomainError("Pi(alpha^2, k) requires alpha^2 < 1 (circular case)")
    if not 0.0 <= k < 1.0:
        raise DomainError("Pi(alpha^2, k) requires 0 <= k < 1")
    y = 1.0 - k * k
    value = carlson_rf(0.0, y, 1.0)
    if alpha2 != 0.0:
        value += alpha2 * carlson_rj(0.0, y, 1.0, 1.0 - alpha2) / 3.0
    return value
