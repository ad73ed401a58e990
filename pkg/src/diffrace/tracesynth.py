"""Leading singularity amplitudes and band-limited trace synthesis.

Each closed orbit contributes a conormal singularity at t = L whose leading
coefficient is assembled from the orbit coefficient, the primitive length
and the segment lengths.  The synthesized signal samples, on a uniform
t-grid, the real combination

    u(t) = sum over orbits of 2 * Re[ A * I_m(t - L) ],

where I_m is the band-limited profile integral evaluated by the kernel
backend.  Only the leading order is synthesized; the smooth remainder of
the regularized trace is out of scope and outputs are labeled accordingly.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .coefficients import orbit_coefficient
from .errors import GridTooCoarse, WindowTooWeak
from .geometry import SolenoidConfig
from .orbits import ClosedOrbit, enumerate_orbits


def smoothstep_coefficients(order: int) -> tuple[float, ...]:
    """Coefficients c_j of the degree-(2*order+1) smoothstep polynomial.

    rho(x) = sum_j c_j * x^(order+1+j) rises from 0 to 1 on [0, 1] with
    order+1 vanishing derivatives at 0.  order=1 is the classic 3x^2-2x^3.
    """
    if order < 1:
        raise ValueError("smoothstep order must be >= 1")
    return tuple(
        float((-1) ** k * math.comb(order + k, k) * math.comb(2 * order + 1, order - k))
        for k in range(order + 1)
    )


@dataclass(frozen=True)
class SmoothingWindow:
    """Band-limiting window: low-frequency ramp plus high-end cosine roll-off.

    The ramp rises on [0, rho_width] (rho_width <= 1, so the cutoff is
    identically 1 above frequency 1) and the roll-off occupies
    [lambda_max - taper_width, lambda_max].  ``rho_order`` sets how fast the
    ramp vanishes at 0; orbits with more than ``max_corners`` corners have a
    non-integrable profile under this ramp and are rejected.
    """

    lambda_max: float = 200.0
    taper_width: float = 40.0
    rho_width: float = 1.0
    rho_order: int = 3

    def __post_init__(self):
        if not (0.0 < self.rho_width <= 1.0):
            raise ValueError("rho_width must lie in (0, 1]")
        if self.taper_width <= 0.0:
            raise ValueError("taper_width must be positive")
        if self.lambda_max - self.taper_width <= self.rho_width:
            raise ValueError("window needs room between ramp and roll-off")

    @property
    def max_corners(self) -> int:
        return 2 * self.rho_order + 3

    @property
    def rho_coefficients(self) -> tuple[float, ...]:
        return smoothstep_coefficients(self.rho_order)

    @classmethod
    def scaled(cls, lambda_max: float, reference: float = 200.0, rho_order: int = 3):
        """Shape-preserving family: ramp and roll-off widths proportional
        to the band limit (capped so the ramp stays inside [0, 1]).

        Within the family the profile integral of an orbit with m corners
        is an exact homothety: peak magnitude scales like
        lambda_max^(1 - m/2) and every width like 1/lambda_max.
        """
        return cls(
            lambda_max=lambda_max,
            taper_width=0.2 * lambda_max,
            rho_width=min(1.0, lambda_max / reference),
            rho_order=rho_order,
        )

    def rho(self, lam):
        """Low-frequency cutoff evaluated on scalars or arrays."""
        x = np.clip(np.asarray(lam, dtype=float) / self.rho_width, 0.0, 1.0)
        coeffs = self.rho_coefficients
        acc = np.zeros_like(x)
        for c in coeffs[::-1]:
            acc = acc * x + c
        return acc * x ** (self.rho_order + 1)

    def taper(self, lam):
        """High-end roll-off evaluated on scalars or arrays."""
        lam = np.asarray(lam, dtype=float)
        start = self.lambda_max - self.taper_width
        out = np.ones_like(lam)
        rolling = (lam > start) & (lam < self.lambda_max)
        out[rolling] = 0.5 * (
            1.0 + np.cos(math.pi * (lam[rolling] - start) / self.taper_width)
        )
        out[lam >= self.lambda_max] = 0.0
        return out


@dataclass(frozen=True)
class SingularityEntry:
    """One orbit's leading contribution: location, symbol order, coefficient."""

    location: float
    order: float
    coefficient: complex
    orbit: ClosedOrbit


_HALF_SQRT2 = math.sqrt(0.5)
# e^(-i*k*pi/4) for k = 0..7; exact on the axes, avoids 1e-16 phase noise
_EIGHTH_ROOTS = (
    1 + 0j,
    _HALF_SQRT2 * (1 - 1j),
    -1j,
    _HALF_SQRT2 * (-1 - 1j),
    -1 + 0j,
    _HALF_SQRT2 * (-1 + 1j),
    1j,
    _HALF_SQRT2 * (1 + 1j),
)


def leading_amplitude(config: SolenoidConfig, orbit: ClosedOrbit) -> SingularityEntry:
    """Leading coefficient of the singularity produced by one orbit.

    A = (2*pi)^((m-2)/2) * e^(-i*m*pi/4) * L0 * d / sqrt(prod of segment
    lengths), where d is the orbit coefficient and m counts corners with
    multiplicity.
    """
    m = orbit.m
    d = orbit_coefficient(config, orbit).value
    root_prod = math.sqrt(math.prod(orbit.segment_lengths))
    coeff = (
        (math.tau) ** (0.5 * (m - 2))
        * _EIGHTH_ROOTS[m % 8]
        * orbit.primitive_length
        * d
        / root_prod
    )
    return SingularityEntry(
        location=orbit.total_length, order=-0.5 * m, coefficient=coeff, orbit=orbit
    )


def singularity_table(
    config: SolenoidConfig,
    l_max: float,
    *,
    merge_reversals: bool = False,
    threads: int = 1,
) -> list[SingularityEntry]:
    """All leading singularities up to length l_max, ascending in location.

    Orbits of equal length all appear; their contributions add in the
    synthesized trace.
    """
    orbits = enumerate_orbits(
        config, l_max, merge_reversals=merge_reversals, threads=threads
    )
    return [leading_amplitude(config, o) for o in orbits]


@dataclass(frozen=True)
class TraceSamples:
    """Synthesized leading-order trace on a uniform grid.

    ``values`` is the real combination; ``contributions[i]`` is the complex
    profile A * I_m(t - L) of ``entries[i]`` (None when not retained).
    """

    t_grid: np.ndarray
    values: np.ndarray
    entries: tuple[SingularityEntry, ...]
    contributions: tuple[np.ndarray, ...] | None
    window: SmoothingWindow = field(default_factory=SmoothingWindow)


def profile_integral(
    s_values, m: int, window: SmoothingWindow
) -> np.ndarray:
    """Band-limited profile I_m(s) for an array of offsets from the front."""
    if m > window.max_corners:
        raise WindowTooWeak(
            f"orbit with {m} corners needs rho_order >= {math.ceil((m - 3) / 2)}, "
            f"window has {window.rho_order}"
        )
    return np.asarray(
        kernels.profile_batch(
            np.asarray(s_values, dtype=float),
            m,
            window.lambda_max,
            window.taper_width,
            window.rho_width,
            np.asarray(window.rho_coefficients),
        )
    )


def _validate_grid(t_grid: np.ndarray, window: SmoothingWindow) -> float:
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or t.size < 2:
        raise ValueError("t_grid must be a 1-d array with at least two samples")
    steps = np.diff(t)
    if np.any(steps <= 0):
        raise ValueError("t_grid must be strictly increasing")
    step = float(steps[0])
    if not np.allclose(steps, step, rtol=1e-9, atol=0.0):
        raise ValueError("t_grid must be uniform")
    if step > 1.0 / window.lambda_max:
        raise GridTooCoarse(
            f"step {step!r} exceeds 1/lambda_max = {1.0 / window.lambda_max!r}"
        )
    return step


def synthesize_trace(
    config: SolenoidConfig,
    l_max: float,
    window: SmoothingWindow,
    t_grid,
    *,
    entries: list[SingularityEntry] | None = None,
    merge_reversals: bool = False,
    threads: int = 1,
    keep_contributions: bool = True,
) -> TraceSamples:
    """Sample the leading-order trace on a uniform grid.

    Per-entry work is pure and split across threads; accumulation follows
    the sorted entry order, so output is identical for any thread count.
    Pass ``entries`` to synthesize a custom subset (linearity tests).
    """
    t = np.asarray(t_grid, dtype=float)
    _validate_grid(t, window)
    if entries is None:
        entries = singularity_table(
            config, l_max, merge_reversals=merge_reversals, threads=threads
        )
    for e in entries:
        if e.orbit.m > window.max_corners:
            raise WindowTooWeak(
                f"orbit {e.orbit.vertices} has {e.orbit.m} corners; window "
                f"supports at most {window.max_corners}"
            )

    def one(entry: SingularityEntry) -> np.ndarray:
        prof = profile_integral(t - entry.location, entry.orbit.m, window)
        return entry.coefficient * prof

    if threads > 1 and len(entries) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            contribs = list(pool.map(one, entries))
    else:
        contribs = [one(e) for e in entries]

    values = np.zeros(t.shape, dtype=float)
    for c in contribs:
        values += 2.0 * np.real(c)
    return TraceSamples(
        t_grid=t,
        values=values,
        entries=tuple(entries),
        contributions=tuple(contribs) if keep_contributions else None,
        window=window,
    )
