"""Seeded random scenes and orbits for verification sweeps.

Rejection sampling keeps instances comfortably generic: minimum pairwise
distance, minimum triple area, fluxes away from the endpoints, and orbit
words whose every passage is strictly diffractive.
"""

from __future__ import annotations

import numpy as np

from .errors import GeometricAngle
from .geometry import SolenoidConfig, validate_config
from .orbits import ClosedOrbit, orbit_geometry


def random_config(rng: np.random.Generator, n: int | None = None) -> SolenoidConfig:
    """A generic random scene with 2..4 solenoids in the unit-ish box."""
    if n is None:
        n = int(rng.integers(2, 5))
    while True:
        pts = rng.uniform(-1.0, 1.0, size=(n, 2))
        dists = [
            float(np.hypot(*(pts[i] - pts[j])))
            for i in range(n)
            for j in range(i + 1, n)
        ]
        if min(dists) < 0.3:
            continue
        areas = [
            abs(
                float(
                    (pts[j, 0] - pts[i, 0]) * (pts[k, 1] - pts[i, 1])
                    - (pts[j, 1] - pts[i, 1]) * (pts[k, 0] - pts[i, 0])
                )
            )
            for i in range(n)
            for j in range(i + 1, n)
            for k in range(j + 1, n)
        ]
        if areas and min(areas) < 0.05:
            continue
        fluxes = rng.uniform(0.05, 0.95, size=n)
        return validate_config([tuple(p) for p in pts], list(fluxes))


def random_orbit(
    rng: np.random.Generator, config: SolenoidConfig, max_len: int = 6
) -> ClosedOrbit:
    """A random admissible closed orbit on the given scene."""
    n = config.n
    while True:
        m = int(rng.integers(2, max_len + 1))
        word = [int(rng.integers(0, n))]
        ok = True
        for _ in range(m - 1):
            choices = [c for c in range(n) if c != word[-1]]
            word.append(int(rng.choice(choices)))
        if word[0] == word[-1]:
            ok = False
        if not ok:
            continue
        try:
            return orbit_geometry(config, word)
        except GeometricAngle:
            continue
