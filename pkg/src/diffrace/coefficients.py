"""Per-orbit complex coefficients: diffraction factors, winding numbers, holonomy.

The coefficient of an orbit factors into one complex diffraction factor per
vertex and a unit-modulus holonomy collected over *all* solenoids, on or off
the orbit.  Winding numbers are computed combinatorially (sums of subtended
angles over the segments not touching the solenoid); the slow contour
quadrature lives in :mod:`diffrace.oracles` and is used only to cross-check
this shortcut.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import FluxOutOfRange, GeometricAngle
from .geometry import (
    TOL_ANGLE_DEFAULT,
    Point,
    SolenoidConfig,
    subtended_angle,
    wrap_angle,
)
from .orbits import ClosedOrbit


@dataclass(frozen=True)
class WindingNumber:
    """Signed number of turns an orbit makes around one solenoid.

    Off-orbit solenoids give integers; a solenoid sitting at a vertex
    contributes the fractional turn of the corner there.
    """

    value: float
    orbit: ClosedOrbit
    solenoid: int


@dataclass(frozen=True)
class OrbitCoefficient:
    """Full complex weight of an orbit with its factor breakdown retained."""

    value: complex
    factors: tuple[complex, ...]  # one diffraction factor per vertex
    holonomy: complex  # unit-modulus phase over all solenoids
    windings: tuple[float, ...]  # per solenoid, aligned with the scene


def diffraction_coefficient(
    alpha: float, beta: float, tol_angle: float = TOL_ANGLE_DEFAULT
) -> complex:
    """Per-vertex factor sin(pi*alpha) * exp(-i*beta/2) / cos(beta/2)."""
    if not (0.0 < alpha < 1.0):
        raise FluxOutOfRange(-1, alpha)
    if abs(beta) >= math.pi - tol_angle:
        raise GeometricAngle(f"angle {beta!r} too close to +-pi")
    return math.sin(math.pi * alpha) * cmath.exp(-0.5j * beta) / math.cos(0.5 * beta)


def diffraction_coefficient_angles(
    alpha: float, theta_in: float, theta_out: float, tol_angle: float = TOL_ANGLE_DEFAULT
) -> complex:
    """Two-angle form sin(pi*alpha) * (e^{-i out} + e^{i in}) / (cos out + cos in).

    The quotient collapses to the single-angle form with beta =
    theta_out - theta_in; kept as an independent route for tests.
    Numerically less stable than the single-angle form when
    cos((in+out)/2) is small, since numerator and denominator share that
    vanishing factor.
    """
    if not (0.0 < alpha < 1.0):
        raise FluxOutOfRange(-1, alpha)
    beta = wrap_angle(theta_out - theta_in)
    if abs(beta) >= math.pi - tol_angle:
        raise GeometricAngle(f"angle {beta!r} too close to +-pi")
    num = cmath.exp(-1j * theta_out) + cmath.exp(1j * theta_in)
    den = math.cos(theta_out) + math.cos(theta_in)
    return math.sin(math.pi * alpha) * num / den


def gauge_phase_increment(a: Point, b: Point, solenoid_j: Point) -> float:
    """Continuous angular-function increment seen from one solenoid along a->b."""
    return subtended_angle(a, b, solenoid_j)


def fractional_winding(
    config: SolenoidConfig, orbit: ClosedOrbit, k: int
) -> WindingNumber:
    """Winding of the orbit around solenoid k.

    Segments incident to the solenoid contribute exactly zero (the angular
    function is constant along a ray through its own origin), so the value
    is the sum of subtended angles over the non-incident segments.
    """
    pts = config.solenoids
    sk = pts[k]
    m = orbit.m
    terms = []
    for i in range(m):
        vi, vj = orbit.vertices[i], orbit.vertices[(i + 1) % m]
        if vi == k or vj == k:
            continue
        terms.append(subtended_angle(pts[vi], pts[vj], sk, config.tol_collinear))
    return WindingNumber(math.fsum(terms) / math.tau, orbit, k)


def holonomy_factor(config: SolenoidConfig, orbit: ClosedOrbit) -> complex:
    """Unit-modulus product of flux phases over every solenoid in the scene."""
    phase = math.fsum(
        config.fluxes[k] * fractional_winding(config, orbit, k).value
        for k in range(config.n)
    )
    return cmath.exp(-1j * math.tau * phase)


def orbit_coefficient(config: SolenoidConfig, orbit: ClosedOrbit) -> OrbitCoefficient:
    """Full coefficient: product of vertex factors times the holonomy.

    The value is assembled from compensated sums of half-angles and flux
    phases rather than a running complex product, so long orbits do not
    leak phase accuracy.
    """
    factors = tuple(
        diffraction_coefficient(config.fluxes[v], beta, config.tol_angle)
        for v, beta in zip(orbit.vertices, orbit.angles)
    )
    windings = tuple(
        fractional_winding(config, orbit, k).value for k in range(config.n)
    )
    magnitude = math.prod(
        math.sin(math.pi * config.fluxes[v]) / math.cos(0.5 * beta)
        for v, beta in zip(orbit.vertices, orbit.angles)
    )
    phase = -0.5 * math.fsum(orbit.angles) - math.tau * math.fsum(
        a * w for a, w in zip(config.fluxes, windings)
    )
    holonomy = cmath.exp(
        -1j * math.tau * math.fsum(a * w for a, w in zip(config.fluxes, windings))
    )
    return OrbitCoefficient(
        value=magnitude * cmath.exp(1j * phase),
        factors=factors,
        holonomy=holonomy,
        windings=windings,
    )
