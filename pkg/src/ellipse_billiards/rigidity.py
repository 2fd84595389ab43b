"""Recovering an ellipse from beta-function values, plus the numerical
monotonicity certificates those recoveries rest on.

beta(1/2) = 2a fixes the semi-major axis; a second value beta(rho2) then pins
b through the strict monotonicity of beta in b at fixed a.  Alternatively,
beta(1/4) = sqrt(a^2 + b^2) together with the circumference pins (a, b)
through the strict monotonicity of the circumference in C = a^2 - b^2 at
fixed A = a^2 + b^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.integrate import quad
from scipy.optimize import brentq

from .beta_mather import beta_of_rho
from .conics import Ellipse, circumference
from .errors import DomainError, NoSolutionError, NumericError

# Relative margins keeping the searches away from degenerate (b -> 0) and
# circular (b -> a) tables.  The circumference deficit below the circular
# supremum is quadratic in C/A, so the C margin must be wide enough for the
# deficit to clear float noise.
_B_MARGIN = 1e-6
_C_MARGIN = 1e-5


@dataclass(frozen=True, slots=True)
class RecoveryResult:
    ellipse: Ellipse
    residual: float


@dataclass(frozen=True, slots=True)
class MonotonicityReport:
    """Grid certificate that the circumference at fixed A = a^2 + b^2 is
    strictly decreasing in C = a^2 - b^2."""

    A: float
    C_values: tuple[float, ...]
    f_values: tuple[float, ...]
    max_forward_difference: float
    strictly_decreasing: bool


def recover_from_diameter_pair(beta_half: float, rho2: float, beta2: float) -> RecoveryResult:
    """Recover the ellipse from beta(1/2) = 2a and one further value
    beta(rho2) = beta2 with rho2 in (0, 1/2).

    Monotonicity of b -> beta(rho2; a, b) is certified on a coarse grid on
    every call before the bracketed solve.
    """
    if beta_half <= 0.0 or beta2 <= 0.0:
        raise DomainError("beta values must be positive")
    if not 0.0 < rho2 < 0.5:
        raise DomainError(f"rho2 must lie in (0, 1/2), got {rho2}")
    a = 0.5 * beta_half

    def beta_at(b: float) -> float:
        return beta_of_rho(Ellipse(a, b), rho2).beta

    # At extreme eccentricities the guarded caustic interval cannot reach (or
    # resolve) large rho2, so the b-ladder keeps only the evaluable points.
    ratio = (1.0 - _B_MARGIN) / _B_MARGIN
    ladder = [a * _B_MARGIN * ratio ** (i / 24.0) for i in range(25)]
    points: list[tuple[float, float]] = []
    for b in ladder:
        try:
            points.append((b, beta_at(b)))
        except (DomainError, NumericError):
            continue
    if len(points) < 2:
        raise NoSolutionError(
            f"rho2={rho2} is attainable for no admissible b at beta_half={beta_half}")
    values = [v for _, v in points]
    # Certificate: no resolvable violation of increase in b.  Near b -> 0 the
    # increments shrink below the evaluation noise, so ties inside the noise
    # band are tolerated; a resolvable decrease fails the run.
    noise = 1e-9 * max(values)
    if any(v2 <= v1 - noise for v1, v2 in zip(values, values[1:])):
        raise NumericError("beta(rho2) failed the monotonicity-in-b certificate")
    if not values[0] < beta2 < values[-1]:
        raise NoSolutionError(
            f"beta2={beta2} outside the attainable range "
            f"({values[0]:.12g}, {values[-1]:.12g}) for beta_half={beta_half}",
            achieved_range=(values[0], values[-1]))
    idx = next(i for i, v in enumerate(values) if v > beta2)
    lo, hi = points[max(idx - 1, 0)][0], points[idx][0]
    b = brentq(lambda bb: beta_at(bb) - beta2, lo, hi, xtol=1e-12, maxiter=200)
    residual = abs(beta_at(b) - beta2)
    if residual > 1e-10 * max(1.0, beta2):
        raise NumericError(f"recovery residual {residual:.3e} above target",
                           achieved_tolerance=residual)
    return RecoveryResult(ellipse=Ellipse(a, b), residual=residual)


def recover_from_quarter_and_length(beta_quarter: float, target_circumference: float) -> RecoveryResult:
    """Recover the ellipse from beta(1/4) = sqrt(a^2 + b^2) and its
    circumference, by a monotone solve in C = a^2 - b^2 at fixed
    A = beta(1/4)^2."""
    if beta_quarter <= 0.0 or target_circumference <= 0.0:
        raise DomainError("inputs must be positive")
    big_a = beta_quarter * beta_quarter
    lo, hi = _C_MARGIN * big_a, (1.0 - _C_MARGIN) * big_a

    def ellipse_at(big_c: float) -> Ellipse:
        return Ellipse(math.sqrt(0.5 * (big_a + big_c)), math.sqrt(0.5 * (big_a - big_c)))

    def gap(big_c: float) -> float:
        return circumference(ellipse_at(big_c)) - target_circumference

    g_lo, g_hi = gap(lo), gap(hi)
    if g_lo <= 0.0 or g_hi >= 0.0:
        raise NoSolutionError(
            f"circumference={target_circumference} outside the attainable range "
            f"({g_hi + target_circumference:.12g}, {g_lo + target_circumference:.12g}) "
            f"for beta_quarter={beta_quarter} (the circular supremum is excluded)",
            achieved_range=(g_hi + target_circumference, g_lo + target_circumference))
    big_c = brentq(gap, lo, hi, xtol=1e-12, maxiter=200)
    result = ellipse_at(big_c)
    residual = abs(circumference(result) - target_circumference)
    if residual > 1e-10 * max(1.0, target_circumference):
        raise NumericError(f"recovery residual {residual:.3e} above target",
                           achieved_tolerance=residual)
    return RecoveryResult(ellipse=result, residual=residual)


def certify_circumference_monotonicity(big_a: float, grid: int = 50) -> MonotonicityReport:
    """Evaluate the circumference integral
    f(C) = sqrt(2) * int_0^pi sqrt(A + C cos t) dt
    on a grid of C in (0, A) and certify strict decrease.

    f(C) is the circumference of the ellipse with a^2 + b^2 = A and
    a^2 - b^2 = C; its supremum as C -> 0 is the circumference
    sqrt(2) pi sqrt(A) of the circle with the same A (circles themselves are
    out of scope).
    """
    if big_a <= 0.0:
        raise DomainError("A must be positive")
    if grid < 3:
        raise DomainError("grid must have at least 3 points")
    c_values = tuple(big_a * (i + 1) / (grid + 1) for i in range(grid))

    def f_of(big_c: float) -> float:
        value, _ = quad(lambda t: math.sqrt(big_a + big_c * math.cos(t)),
                        0.0, math.pi, epsabs=1e-12, epsrel=1e-12, limit=200)
        return math.sqrt(2.0) * value

    f_values = tuple(f_of(c) for c in c_values)
    diffs = [f2 - f1 for f1, f2 in zip(f_values, f_values[1:])]
    return MonotonicityReport(A=big_a, C_values=c_values, f_values=f_values,
                              max_forward_difference=max(diffs),
                              strictly_decreasing=all(d < 0.0 for d in diffs))
