"""Scene validation and planar angle primitives.

Everything downstream (orbit search, coefficients, trace synthesis) consumes
the validated scene and the angle operations defined here.  All angles are
reduced to (-pi, pi] by a single shared wrap so sign conventions cannot
drift between modules.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    CollinearTriple,
    ConfigError,
    DuplicateSolenoid,
    FluxOutOfRange,
    GeometricAngle,
    PointOnSegment,
    SceneShapeError,
)

Point = tuple[float, float]

TOL_COLLINEAR_DEFAULT = 1e-9  # twice-signed-area units
TOL_ANGLE_DEFAULT = 1e-9  # radians


def wrap_angle(theta: float) -> float:
    """Reduce an angle to (-pi, pi].  The only wrap site in the package."""
    w = math.remainder(theta, math.tau)
    if w <= -math.pi:
        w += math.tau
    return w


def distance(a: Point, b: Point) -> float:
    return math.hypot(b[0] - a[0], b[1] - a[1])


def signed_area2(a: Point, b: Point, c: Point) -> float:
    """Twice the signed area of triangle abc; no division, robust for verticals."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def point_segment_distance(p: Point, a: Point, b: Point) -> float:
    """Euclidean distance from p to the closed segment [a, b]."""
    ax, ay = a
    bx, by = b
    px, py = p
    dx, dy = bx - ax, by - ay
    dd = dx * dx + dy * dy
    if dd == 0.0:
        return math.hypot(px - ax, py - ay)
    t = ((px - ax) * dx + (py - ay) * dy) / dd
    t = min(1.0, max(0.0, t))
    return math.hypot(px - (ax + t * dx), py - (ay + t * dy))


@dataclass(frozen=True)
class SolenoidConfig:
    """A validated scene: solenoid positions, fluxes and tolerances.

    Construct through :func:`validate_config`; the constructor itself does
    not re-check the geometric invariants.
    """

    solenoids: tuple[Point, ...]
    fluxes: tuple[float, ...]
    tol_collinear: float = TOL_COLLINEAR_DEFAULT
    tol_angle: float = TOL_ANGLE_DEFAULT

    @property
    def n(self) -> int:
        return len(self.solenoids)

    def min_distance(self) -> float:
        pts = self.solenoids
        return min(
            distance(pts[i], pts[j])
            for i in range(len(pts))
            for j in range(i + 1, len(pts))
        )

    def max_distance(self) -> float:
        pts = self.solenoids
        return max(
            distance(pts[i], pts[j])
            for i in range(len(pts))
            for j in range(i + 1, len(pts))
        )


def validate_config(
    solenoids: Sequence[Sequence[float]],
    fluxes: Iterable[float],
    tol_collinear: float = TOL_COLLINEAR_DEFAULT,
    tol_angle: float = TOL_ANGLE_DEFAULT,
) -> SolenoidConfig:
    """Check a raw scene and return it as a :class:`SolenoidConfig`.

    Every violation found is collected; on failure a :class:`ConfigError`
    carrying the full list is raised, so one run reports all problems.
    """
    pts = tuple((float(x), float(y)) for x, y in solenoids)
    fxs = tuple(float(a) for a in fluxes)
    if len(pts) != len(fxs) or len(pts) < 1:
        raise ConfigError(
            [SceneShapeError(f"{len(pts)} solenoids but {len(fxs)} fluxes (need equal, >= 1)")]
        )

    violations: list[Exception] = []
    for i, a in enumerate(fxs):
        if not (0.0 < a < 1.0):
            violations.append(FluxOutOfRange(i, a))
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if distance(pts[i], pts[j]) <= tol_collinear:
                violations.append(DuplicateSolenoid(i, j))
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            for k in range(j + 1, len(pts)):
                if abs(signed_area2(pts[i], pts[j], pts[k])) <= tol_collinear:
                    violations.append(CollinearTriple(i, j, k))
    if violations:
        raise ConfigError(violations)
    return SolenoidConfig(pts, fxs, tol_collinear, tol_angle)


def diffraction_angle(
    prev: Point, vertex: Point, nxt: Point, tol_angle: float = TOL_ANGLE_DEFAULT
) -> float:
    """Angle through which a trajectory turns at a vertex.

    Defined as (polar angle of nxt - vertex) minus (polar angle of
    prev - vertex), wrapped to (-pi, pi).  Values at +-pi mean the passage
    is straight through the vertex and are rejected as geometric.
    """
    vin = (prev[0] - vertex[0], prev[1] - vertex[1])
    vout = (nxt[0] - vertex[0], nxt[1] - vertex[1])
    if vin == (0.0, 0.0) or vout == (0.0, 0.0):
        raise ValueError("prev and nxt must differ from vertex")
    theta_in = math.atan2(vin[1], vin[0])
    theta_out = math.atan2(vout[1], vout[0])
    beta = wrap_angle(theta_out - theta_in)
    if abs(beta) >= math.pi - tol_angle:
        raise GeometricAngle(
            f"angle {beta!r} within {tol_angle} of +-pi: straight passage, not a diffraction"
        )
    return beta


def subtended_angle(
    a: Point, b: Point, p: Point, tol: float = TOL_COLLINEAR_DEFAULT
) -> float:
    """Continuous change of the polar angle of (z - p) as z moves from a to b.

    For p off the closed segment [a, b] the change lies strictly inside
    (-pi, pi), so the wrapped difference of endpoint angles is exact.
    """
    if point_segment_distance(p, a, b) <= tol:
        raise PointOnSegment(f"point {p} lies on segment [{a}, {b}]")
    ta = math.atan2(a[1] - p[1], a[0] - p[0])
    tb = math.atan2(b[1] - p[1], b[0] - p[0])
    return wrap_angle(tb - ta)


def free_reference_params(config: SolenoidConfig) -> tuple[float, Point]:
    """Total flux and the flux-weighted center of the scene.

    These two scalars parametrize the reference propagator subtracted in
    the regularized trace; all fluxes are positive, so the center is
    always defined.
    """
    total = math.fsum(config.fluxes)
    cx = math.fsum(a * p[0] for a, p in zip(config.fluxes, config.solenoids)) / total
    cy = math.fsum(a * p[1] for a, p in zip(config.fluxes, config.solenoids)) / total
    return total, (cx, cy)
