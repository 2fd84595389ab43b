"""Brute-force orbit oracle: tangent launches, Poncelet closure detection,
perimeters, winding, and conserved-quantity drift.

Nothing here relies on the closed forms under test: launches solve the
tangency condition geometrically, reflections are geometric, and closure is
detected from vertex returns.
"""

from __future__ import annotations

import csv
import math
import random
from dataclasses import dataclass
from typing import IO, Iterator

from scipy.optimize import brentq

from .billiard import (OrientedLine, _step, bounce_between, chord_endpoints,
                       momenta_product)
from .conics import CausticParam, Ellipse, boundary_point, caustic_support, support
from .errors import ClosureNotFoundError, NumericError

_TWO_PI = 2.0 * math.pi

# Reflections with delta below this are flagged as near-tangent: conservation
# tolerances degrade roughly like 1/delta there.
NEAR_TANGENT_DELTA = 1e-6

# Step budget beyond which the oracle reports "no closure" instead of
# extrapolating.
DEFAULT_STEP_CAP = 10_000


@dataclass(frozen=True, slots=True)
class ClosureInfo:
    """First return of an orbit: closed after n reflections with m turns."""

    n: int
    m: int
    residual: float


@dataclass(frozen=True)
class OrbitRecord:
    """A simulated orbit: n steps give n+1 lines and n+1 polygon vertices
    (the entry point of the starting line, then each reflection point).
    Chord i joins vertices i and i+1 and lies on line i."""

    table: Ellipse
    vertices: tuple[tuple[float, float], ...]
    lines: tuple[OrientedLine, ...]
    winding: int
    perimeter: float
    drift_J: float
    closed: ClosureInfo | None
    min_delta: float

    @property
    def near_tangent(self) -> bool:
        return self.min_delta < NEAR_TANGENT_DELTA


def launch_tangent(ellipse: Ellipse, caustic: CausticParam, psi0: float) -> OrientedLine:
    """Forward tangent line to the caustic from the boundary point with
    outer-normal angle psi0.

    Solves the tangency condition P.n(phi) = h_caustic(phi) for the line
    normal phi; the forward branch is the unique root in (psi0, psi0 + pi).
    """
    px, py = boundary_point(ellipse, psi0)

    def gap(phi: float) -> float:
        return (px * math.cos(phi) + py * math.sin(phi)
                - caustic_support(ellipse, caustic, phi))

    # gap(psi0) = h - h_caustic > 0 and gap(psi0 + pi) = -h - h_caustic < 0.
    phi = brentq(gap, psi0, psi0 + math.pi, xtol=1e-15, rtol=8.9e-16, maxiter=200)
    return OrientedLine(px * math.cos(phi) + py * math.sin(phi), phi)


def run_orbit(ellipse: Ellipse, start: OrientedLine, n_steps: int, *,
              closure_tol: float | None = None,
              stop_on_closure: bool = False) -> OrbitRecord:
    """Iterate the billiard map for n_steps reflections, recording vertices,
    lines, perimeter, winding, Joachimsthal drift, and the first closure.

    Closure means simultaneous vertex return and normal-angle return within
    closure_tol (default 1e-9 * a; the angle mismatch is scaled by a).
    """
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    tol = 1e-9 * ellipse.a if closure_tol is None else closure_tol

    entry, _ = chord_endpoints(ellipse, start)
    vertices = [entry]
    lines = [start]
    perimeter = 0.0
    j_min = math.inf
    j_max = -math.inf
    min_delta = math.inf
    closed: ClosureInfo | None = None

    # Iterate on the reduced angle (the atan2 representative) so that the
    # growing unreduced phi never feeds representation noise back into the
    # geometry; absolute angles are rebuilt for the record.
    x0, y0 = entry
    phi0 = start.phi
    p, phi_red = start.p, math.remainder(start.phi, _TWO_PI)
    phi_red0 = phi_red
    cum_turn = 0.0
    prev_x, prev_y = entry
    for step in range(1, n_steps + 1):
        x, y, p2, phi_raw, turn = _step(ellipse, p, phi_red)
        delta = 0.5 * turn
        h = support(ellipse, phi_red + delta)
        j = math.sin(delta) / h
        j_min = min(j_min, j)
        j_max = max(j_max, j)
        min_delta = min(min_delta, delta, math.pi - delta)
        perimeter += math.hypot(x - prev_x, y - prev_y)
        cum_turn += turn
        vertices.append((x, y))
        lines.append(OrientedLine(p2, phi0 + cum_turn))
        if closed is None:
            vert_dist = math.hypot(x - x0, y - y0)
            ang_dist = ellipse.a * abs(math.remainder(phi_raw - phi_red0, _TWO_PI))
            if vert_dist < tol and ang_dist < tol:
                m = round(cum_turn / _TWO_PI)
                closed = ClosureInfo(n=step, m=m, residual=max(vert_dist, ang_dist))
                if stop_on_closure:
                    break
        p, phi_red = p2, phi_raw
        prev_x, prev_y = x, y

    drift = (j_max - j_min) / abs(j_max) if j_max != 0.0 else 0.0
    winding = int(cum_turn // _TWO_PI)
    return OrbitRecord(table=ellipse, vertices=tuple(vertices), lines=tuple(lines),
                       winding=winding, perimeter=perimeter, drift_J=drift,
                       closed=closed, min_delta=min_delta)


def detect_closure(record: OrbitRecord, tol: float) -> tuple[int, int] | None:
    """First (n, m) with vertex-and-direction return within tol, or None.

    n is the number of reflections to the return, m the number of full turns
    of the line direction across them.
    """
    if len(record.vertices) < 2:
        return None
    x0, y0 = record.vertices[0]
    phi0 = record.lines[0].phi
    a = record.table.a
    for step in range(1, len(record.lines)):
        vx, vy = record.vertices[step]
        vert_dist = math.hypot(vx - x0, vy - y0)
        ang = (record.lines[step].phi - phi0) % _TWO_PI
        ang_dist = a * min(ang, _TWO_PI - ang)
        if vert_dist < tol and ang_dist < tol:
            return step, round((record.lines[step].phi - phi0) / _TWO_PI)
    return None


def closed_cycle_perimeter(record: OrbitRecord, n: int) -> float:
    """Perimeter of the first n chords of the record (one Poncelet period)."""
    total = 0.0
    for i in range(n):
        (x1, y1), (x2, y2) = record.vertices[i], record.vertices[i + 1]
        total += math.hypot(x2 - x1, y2 - y1)
    return total


def empirical_rotation(ellipse: Ellipse, start: OrientedLine, n_steps: int) -> float:
    """Average winding per reflection over n_steps, (phi_n - phi_0)/(2 pi n);
    converges to the rotation number at rate O(1/n)."""
    p, phi_red = start.p, math.remainder(start.phi, _TWO_PI)
    cum_turn = 0.0
    for _ in range(n_steps):
        _, _, p, phi_red, turn = _step(ellipse, p, phi_red)
        cum_turn += turn
    return cum_turn / (_TWO_PI * n_steps)


def conserved_drift(ellipse: Ellipse, start: OrientedLine, n_steps: int) -> dict[str, float]:
    """Maximum relative drift of the three conserved quantities (Joachimsthal
    J, caustic parameter lambda, focal-momenta product) over n_steps
    reflections; the pure-iteration companion of run_orbit."""
    b2 = ellipse.b * ellipse.b
    p, phi_red = start.p, math.remainder(start.phi, _TWO_PI)
    mp0 = momenta_product(ellipse, OrientedLine(p, phi_red))
    lam0 = b2 - mp0
    j0 = None
    worst = {"J": 0.0, "lambda": 0.0, "momenta_product": 0.0}
    for _ in range(n_steps):
        x, y, p, phi_red, turn = _step(ellipse, p, phi_red)
        delta = 0.5 * turn
        j = math.sin(delta) / support(ellipse, phi_red - delta)
        if j0 is None:
            j0 = j
        mp = momenta_product(ellipse, OrientedLine(p, phi_red))
        worst["J"] = max(worst["J"], abs(j - j0) / abs(j0))
        worst["lambda"] = max(worst["lambda"], abs((b2 - mp) - lam0) / abs(lam0))
        worst["momenta_product"] = max(worst["momenta_product"], abs(mp - mp0) / abs(mp0))
    return worst


def empirical_beta(ellipse: Ellipse, caustic: CausticParam, *,
                   step_cap: int = DEFAULT_STEP_CAP, n_checks: int = 16,
                   seed: int = 20260809) -> float:
    """Perimeter-per-vertex of the Poncelet polygon tangent to the caustic,
    measured from simulated orbits.

    The caustic must be rational with period <= step_cap.  Closure is required
    from n_checks random starting points, all with the same (n, m) and with
    perimeters agreeing to 1e-9 relative (the Poncelet porism at numerical
    scale); any disagreement raises.
    """
    rng = random.Random(seed)
    psi_starts = [0.0] + [rng.uniform(0.0, _TWO_PI) for _ in range(n_checks - 1)]
    betas: list[float] = []
    period: tuple[int, int] | None = None
    for psi0 in psi_starts:
        start = launch_tangent(ellipse, caustic, psi0)
        record = run_orbit(ellipse, start, step_cap, stop_on_closure=True)
        if record.closed is None:
            best, best_step = _best_return(record)
            raise ClosureNotFoundError(
                f"no closure within {step_cap} reflections from psi0={psi0:.6f} "
                f"(best return residual {best:.3e} at step {best_step})",
                best_residual=best, best_step=best_step)
        info = record.closed
        if period is None:
            period = (info.n, info.m)
        elif (info.n, info.m) != period:
            raise NumericError(
                f"closure period disagrees across starts: {(info.n, info.m)} vs {period}")
        betas.append(closed_cycle_perimeter(record, info.n) / info.n)
    spread = (max(betas) - min(betas)) / betas[0]
    if spread > 1e-9:
        raise NumericError(
            f"Poncelet perimeters disagree across starts (relative spread {spread:.3e})")
    return betas[0]


def _best_return(record: OrbitRecord) -> tuple[float, int]:
    x0, y0 = record.vertices[0]
    phi0 = record.lines[0].phi
    a = record.table.a
    best = math.inf
    best_step = 0
    for step in range(1, len(record.lines)):
        vx, vy = record.vertices[step]
        ang = (record.lines[step].phi - phi0) % _TWO_PI
        residual = max(math.hypot(vx - x0, vy - y0),
                       a * min(ang, _TWO_PI - ang))
        if residual < best:
            best = residual
            best_step = step
    return best, best_step


def orbit_rows(record: OrbitRecord) -> Iterator[dict[str, float | int]]:
    """One row per reflection: step, reflection point, outgoing line, bounce
    coordinates, and the conserved quantities evaluated there."""
    ellipse = record.table
    for step in range(1, len(record.lines)):
        line_in = record.lines[step - 1]
        line_out = record.lines[step]
        state = bounce_between(line_in, line_out)
        x, y = record.vertices[step]
        yield {
            "step": step,
            "x": x,
            "y": y,
            "p": line_out.p,
            "phi": line_out.phi,
            "psi": state.psi,
            "delta": state.delta,
            "J": math.sin(state.delta) / support(ellipse, state.psi),
            "lambda": ellipse.b * ellipse.b - momenta_product(ellipse, line_out),
        }


ORBIT_CSV_FIELDS = ("step", "x", "y", "p", "phi", "psi", "delta", "J", "lambda")


def write_orbit_csv(record: OrbitRecord, stream: IO[str]) -> None:
    """Dump the orbit in CSV for external plotting, one row per reflection."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(ORBIT_CSV_FIELDS)
    for row in orbit_rows(record):
        writer.writerow([row["step"]] + [format(row[k], ".17g") for k in ORBIT_CSV_FIELDS[1:]])
