"""Logarithmic resonance-strip thresholds and counting lower bounds.

Each closed orbit of length L with m corners certifies a strip coefficient
nu = (n1 + m/2) / (L - epsilon): below nu * log|mu| along the positive real
axis the resonance count grows at least like r^(1-delta).  The constant n1
is a black-box input; it is required explicitly and echoed in every report
so no silent default fabricates precision.  Repeating the bounce between
the two farthest solenoids drives nu down toward 1/(2*d_max).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BadDelta, EpsilonTooLarge, SingleSolenoid
from .geometry import SolenoidConfig, distance
from .orbits import ClosedOrbit, enumerate_orbits


@dataclass(frozen=True)
class ResonanceStrip:
    """A certified strip coefficient with its provenance."""

    nu: float
    n1: float
    epsilon: float
    orbit: ClosedOrbit | None  # None for the pure bouncing-repetition formula
    source: str
    repetition: int | None = None


@dataclass(frozen=True)
class BestStripReport:
    """Minimal strip over enumerated orbits and bouncing repetitions."""

    best: ResonanceStrip
    limit_coefficient: float  # 1/(2*d_max) + epsilon
    gap_to_limit: float  # best.nu - limit_coefficient (sign discussed in docs)
    d_max: float
    bouncing_pair: tuple[int, int]
    rep_max: int
    n1: float
    epsilon: float
    orbit_strips: tuple[ResonanceStrip, ...]


@dataclass(frozen=True)
class CountingBound:
    """floor(r^(1-delta)) resonances, valid above an uncomputed radius."""

    count: int
    r: float
    delta: float
    validity_note: str = "valid for r > r(delta); r(delta) exists but is not quantified"


def strip_threshold(orbit: ClosedOrbit, n1: float, epsilon: float) -> ResonanceStrip:
    """Strip coefficient certified by a single orbit."""
    if n1 <= 0.0:
        raise ValueError("n1 must be positive")
    if epsilon < 0.0:
        raise ValueError("epsilon must be nonnegative")
    if epsilon >= orbit.total_length:
        raise EpsilonTooLarge(
            f"epsilon {epsilon!r} >= orbit length {orbit.total_length!r}"
        )
    nu = (n1 + 0.5 * orbit.m) / (orbit.total_length - epsilon)
    return ResonanceStrip(
        nu=nu,
        n1=n1,
        epsilon=epsilon,
        orbit=orbit,
        source=f"orbit {'-'.join(map(str, orbit.vertices))}",
    )


def bouncing_strip(
    d_max: float, k: int, n1: float, epsilon: float
) -> ResonanceStrip:
    """Strip from k round trips of the farthest bounce: length 2*k*d_max, 2*k corners."""
    if k < 1:
        raise ValueError("repetition count must be >= 1")
    length = 2.0 * k * d_max
    if epsilon >= length:
        raise EpsilonTooLarge(f"epsilon {epsilon!r} >= repeated length {length!r}")
    nu = (n1 + float(k)) / (length - epsilon)
    return ResonanceStrip(
        nu=nu,
        n1=n1,
        epsilon=epsilon,
        orbit=None,
        source=f"bouncing repetition k={k}",
        repetition=k,
    )


def best_strip(
    config: SolenoidConfig,
    n1: float,
    epsilon: float,
    rep_max: int,
    *,
    l_max: float | None = None,
) -> BestStripReport:
    """Minimal strip coefficient over enumerated orbits and bounce repetitions.

    nu is strictly decreasing in the repetition count, so the bounce
    sequence attains its minimum at rep_max; enumerated orbits (up to
    ``l_max``, default four times the maximal distance) provide the
    finite-length comparisons.  The analytic limit 1/(2*d_max) + epsilon
    and the gap to it are reported alongside.
    """
    if config.n < 2:
        raise SingleSolenoid("no closed orbit exists with a single solenoid")
    if rep_max < 1:
        raise ValueError("rep_max must be >= 1")
    pts = config.solenoids
    pair = (0, 1)
    d_max = 0.0
    for i in range(config.n):
        for j in range(i + 1, config.n):
            d = distance(pts[i], pts[j])
            if d > d_max:
                d_max = d
                pair = (i, j)
    if epsilon >= 2.0 * d_max:
        raise EpsilonTooLarge(f"epsilon {epsilon!r} >= shortest bounce 2*d_max")

    if l_max is None:
        l_max = 4.0 * d_max
    orbit_strips = tuple(
        strip_threshold(o, n1, epsilon)
        for o in enumerate_orbits(config, l_max)
        if o.total_length > epsilon
    )

    best = bouncing_strip(d_max, rep_max, n1, epsilon)
    for s in orbit_strips:
        if s.nu < best.nu:
            best = s
    limit = 1.0 / (2.0 * d_max) + epsilon
    return BestStripReport(
        best=best,
        limit_coefficient=limit,
        gap_to_limit=best.nu - limit,
        d_max=d_max,
        bouncing_pair=pair,
        rep_max=rep_max,
        n1=n1,
        epsilon=epsilon,
        orbit_strips=orbit_strips,
    )


def counting_lower_bound(r: float, delta: float) -> CountingBound:
    """Lower bound floor(r^(1-delta)) on the strip resonance count up to r."""
    if not (0.0 < delta < 1.0):
        raise BadDelta(f"delta {delta!r} must lie strictly inside (0, 1)")
    if r <= 0.0:
        raise ValueError("r must be positive")
    return CountingBound(count=math.floor(r ** (1.0 - delta)), r=r, delta=delta)
