"""Billiard map on the space of oriented lines, the 2 h(psi) sin(delta)
generating function, and the conserved quantities of the elliptic billiard.

An oriented line is written cos(phi) x + sin(phi) y = p with phi the
direction of its right normal; the travel direction is the right normal
rotated by +pi/2, i.e. (-sin phi, cos phi).  Angles are kept unreduced so
that orbit winding can be read off directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .conics import Ellipse, support, support_deriv
from .errors import DomainError

_TWO_PI = 2.0 * math.pi

# A chord whose squared half-length falls below this, in units of a^2, is
# treated as a tangency and rejected.
_TANGENT_THRESHOLD = 1e-14


@dataclass(frozen=True, slots=True)
class OrientedLine:
    """Phase-space point (p, phi): signed distance from the center and the
    direction of the right normal."""

    p: float
    phi: float


@dataclass(frozen=True, slots=True)
class BounceState:
    """Boundary-adapted coordinates of a reflection: outer-normal angle psi
    and reflection angle delta in (0, pi), measured from the tangent."""

    psi: float
    delta: float


def direction(line: OrientedLine) -> tuple[float, float]:
    """Unit travel direction of the line, its right normal rotated by +pi/2."""
    return (-math.sin(line.phi), math.cos(line.phi))


def reverse_line(line: OrientedLine) -> OrientedLine:
    """The same geometric line traversed the opposite way: (p, phi) -> (-p, phi + pi)."""
    return OrientedLine(-line.p, line.phi + math.pi)


def bounce_between(line_in: OrientedLine, line_out: OrientedLine) -> BounceState:
    """Reflection coordinates of two consecutive orbit lines:
    psi = (phi1 + phi2)/2, delta = (phi2 - phi1)/2."""
    return BounceState(psi=0.5 * (line_in.phi + line_out.phi),
                       delta=0.5 * (line_out.phi - line_in.phi))


def gen_function(ellipse: Ellipse, phi1: float, phi2: float) -> float:
    """Generating function S(phi1, phi2) = 2 h((phi1+phi2)/2) sin((phi2-phi1)/2).

    Its gradients reproduce the billiard map (see gen_function_grads), and the
    sum of S over one period of a closed orbit equals the polygon perimeter.
    """
    psi = 0.5 * (phi1 + phi2)
    delta = 0.5 * (phi2 - phi1)
    return 2.0 * support(ellipse, psi) * math.sin(delta)


def gen_function_grads(ellipse: Ellipse, phi1: float, phi2: float) -> tuple[float, float]:
    """Analytic pair (-dS/dphi1, dS/dphi2) =
    (h cos(delta) - h' sin(delta), h cos(delta) + h' sin(delta)).

    For consecutive lines of an orbit these equal (p1, p2).
    """
    psi = 0.5 * (phi1 + phi2)
    delta = 0.5 * (phi2 - phi1)
    h = support(ellipse, psi)
    hp = support_deriv(ellipse, psi)
    cd, sd = math.cos(delta), math.sin(delta)
    return (h * cd - hp * sd, h * cd + hp * sd)


def _chord_roots(ellipse: Ellipse, line: OrientedLine) -> tuple[float, float]:
    """Parameters (t_entry, t_exit) of the intersections of the line with the
    table, along the travel direction from the foot point p*(cos phi, sin phi).

    Raises DomainError for tangent or exterior lines.
    """
    a2 = ellipse.a * ellipse.a
    b2 = ellipse.b * ellipse.b
    p = line.p
    cp, sp = math.cos(line.phi), math.sin(line.phi)
    qa = sp * sp / a2 + cp * cp / b2
    qb = 2.0 * p * sp * cp * (1.0 / b2 - 1.0 / a2)
    qc = p * p * (cp * cp / a2 + sp * sp / b2) - 1.0
    disc = qb * qb - 4.0 * qa * qc
    # disc/(2 qa)^2 is the squared half-chord.
    if disc <= 4.0 * qa * qa * _TANGENT_THRESHOLD * a2:
        raise DomainError(
            "line is tangent to or misses the table (|p| must be < h(phi))")
    sq = math.sqrt(disc)
    # Stable quadratic: past the tangency guard, sq > 0 forces q != 0.
    q = -0.5 * (qb + math.copysign(sq, qb))
    t1 = q / qa
    t2 = qc / q
    return (min(t1, t2), max(t1, t2))


def _point_at(line: OrientedLine, t: float) -> tuple[float, float]:
    cp, sp = math.cos(line.phi), math.sin(line.phi)
    return (line.p * cp - t * sp, line.p * sp + t * cp)


def chord_endpoints(ellipse: Ellipse, line: OrientedLine) -> tuple[tuple[float, float], tuple[float, float]]:
    """Entry and exit points of the chord the line cuts from the table."""
    t_in, t_out = _chord_roots(ellipse, line)
    return _point_at(line, t_in), _point_at(line, t_out)


def _step(ellipse: Ellipse, p: float, phi: float) -> tuple[float, float, float, float, float]:
    """One geometric reflection from the line (p, phi).

    Returns (x, y, p2, phi2_raw, turn): the reflection point, the outgoing
    support value, the outgoing normal direction as the atan2 representative
    in (-pi, pi], and the forward turn phi2 - phi folded into (0, 2 pi).
    Long iterations should feed phi2_raw back in, keeping the phase reduced;
    absolute angles can be rebuilt as phi + cumulative turns.
    """
    _, t_out = _chord_roots(ellipse, OrientedLine(p, phi))
    cp, sp = math.cos(phi), math.sin(phi)
    x = p * cp - t_out * sp
    y = p * sp + t_out * cp
    nx = x / (ellipse.a * ellipse.a)
    ny = y / (ellipse.b * ellipse.b)
    nn = math.hypot(nx, ny)
    nx /= nn
    ny /= nn
    dot = -sp * nx + cp * ny
    rx = -sp - 2.0 * dot * nx
    ry = cp - 2.0 * dot * ny
    phi_raw = math.atan2(-rx, ry)
    turn = (phi_raw - phi) % _TWO_PI
    p2 = x * math.cos(phi_raw) + y * math.sin(phi_raw)
    return x, y, p2, phi_raw, turn


def bounce(ellipse: Ellipse, line: OrientedLine) -> tuple[tuple[float, float], OrientedLine]:
    """Reflection point (forward intersection) and the outgoing line.

    The reflection is computed geometrically: the quadratic along the line
    gives the exit point, and the direction is reflected about the boundary
    normal there.  The outgoing phi is lifted to phi + 2*delta with
    2*delta in (0, 2*pi) so winding accumulates in line.phi.
    """
    x, y, p2, _, turn = _step(ellipse, line.p, line.phi)
    return (x, y), OrientedLine(p2, line.phi + turn)


def reflect(ellipse: Ellipse, line: OrientedLine) -> OrientedLine:
    """Billiard map: the outgoing line after specular reflection at the
    forward intersection point.  Requires |p| < h(phi)."""
    return bounce(ellipse, line)[1]


def joachimsthal(ellipse: Ellipse, state: BounceState) -> float:
    """Joachimsthal integral J = sin(delta) / h(psi), conserved along orbits."""
    return math.sin(state.delta) / support(ellipse, state.psi)


def momenta_product(ellipse: Ellipse, line: OrientedLine) -> float:
    """Product of the distances from the two foci to the line,
    p^2 - c^2 cos^2(phi); equals b^2 - lambda on lines tangent to E_lambda."""
    c2 = ellipse.a * ellipse.a - ellipse.b * ellipse.b
    cp = math.cos(line.phi)
    return line.p * line.p - c2 * cp * cp


def lambda_of_line(ellipse: Ellipse, line: OrientedLine) -> float:
    """Jacobi-Chasles parameter lambda = b^2 - momenta_product(line) of the
    confocal caustic tangent to the line.  Requires an elliptic caustic,
    i.e. lambda in (0, b^2)."""
    lam = ellipse.b * ellipse.b - momenta_product(ellipse, line)
    if not 0.0 < lam < ellipse.b * ellipse.b:
        raise DomainError(
            f"line has no elliptic caustic: lambda = {lam} outside (0, b^2) "
            "(crosses the focal segment or misses the table)")
    return lam
